#pragma once

#include <optional>
#include <string>

#include "cflgap/costs.hpp"
#include "cflgap/corevec.hpp"
#include "cflgap/polytope.hpp"
#include "cflgap/rounding.hpp"

namespace cflgap {

/// Shape of a core: n_f facilities, |k| = |l| = t. The census depends on
/// nothing else.
struct CoreShape {
  std::uint64_t facility_count = 0;
  std::uint64_t t = 0;
};

CoreShape core_shape(const Instance& inst);

BigInt binomial(std::uint64_t n, std::uint64_t k);

/// |C_I| = C(n_f, t) * C(n_f - t, t): ordered pairs of disjoint t-subsets.
BigInt core_size(const CoreShape& shape);

/// Members (k', l') that do not collide with a fixed reference (k, l), the
/// reference itself included, split by event:
///   e1:   l' is contained in k u l
///   e2:   l is contained in k' u l'
///   both: e1 and e2 together
struct NoncollidingCount {
  BigInt e1;
  BigInt e2;
  BigInt both;
  BigInt total() const { return e1 + e2 - both; }
};

/// Inclusion-exclusion over the two events; independent of the reference.
NoncollidingCount noncolliding_count_exact(const CoreShape& shape);

/// Brute force over every (k', l') against `reference` (default k = {0..t-1},
/// l = {t..2t-1}). Refuses cores larger than max_pairs.
struct EnumeratedCensus {
  std::uint64_t members = 0;
  std::uint64_t noncolliding = 0;
};
EnumeratedCensus noncolliding_count_enumerated(const CoreShape& shape,
                                               std::optional<CoreIndex> reference = std::nullopt,
                                               std::uint64_t max_pairs = 100'000);

struct McEstimate {
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  std::uint64_t seed = 0;
  double estimate = 0;
  /// 1.96 * sqrt(p (1 - p) / N).
  double half_width = 0;
  /// Wilson score upper limit at 95%; informative when hits = 0.
  double upper_bound = 0;
};

/// Fraction of uniform core members (no repetition inside k' or l') that do
/// not collide with the default reference. Deterministic for a seed and
/// independent of `jobs`: samples are drawn in fixed chunks, each with its
/// own derived stream.
McEstimate noncolliding_prob_mc(const CoreShape& shape, std::uint64_t samples, std::uint64_t seed,
                                unsigned jobs = 1);

/// 2 * (2t / n_f)^t, the union bound on the non-collision fraction.
Rational union_bound_fraction(const CoreShape& shape);

struct LowerBound {
  BigInt core_size;
  /// Members one violated inequality can cut off: the non-colliding members
  /// of the violated vector, itself included.
  BigInt lambda;
  /// ceil(core_size / lambda).
  BigInt bound;
};

LowerBound lower_bound_constraints(const CoreShape& shape);
LowerBound lower_bound_constraints(const Instance& inst);

struct CensusReport {
  CoreShape shape;
  BigInt core_size;
  NoncollidingCount noncolliding;
  BigInt lambda;
  Rational noncolliding_fraction;
  Rational union_bound;        // 2 (2t/n_f)^t
  Rational union_bound_count;  // union_bound * core_size
  std::optional<EnumeratedCensus> enumerated;
  std::optional<McEstimate> mc;
};

CensusReport census(const CoreShape& shape, bool enumerate, std::uint64_t max_pairs = 100'000);

enum class OptProvenance { analytic, brute_force };

struct GapCertificate {
  CoreIndex index;
  Rational frac_cost;
  Rational opt_value;
  OptProvenance provenance = OptProvenance::analytic;
  Rational ratio;
  IntSolution witness;
  Rational witness_cost;
  std::string conclusion;
};

/// w^T v, evaluated per cell of the common cost/vector partition.
Rational fractional_cost(const CostVector& cost, const FracVector& v);

/// Integer solution of cost 1 under the gap costs: k, l[0] and every outside
/// facility open; U core clients per k-facility, the one left over to l[0];
/// non-core clients packed onto the outside facilities.
IntSolution analytic_opt_witness(const Instance& inst, const CoreIndex& index);

/// Gap certificate for one core vector. Analytic mode pairs the witness above
/// with the lower bound "U*t + 1 core clients exceed the capacity of k, so
/// either an l-facility opens or a core client crosses", giving opt = 1.
/// Brute-force mode takes opt from exhaustive enumeration.
GapCertificate certify_gap(const Instance& inst, const CoreIndex& index, OptProvenance mode,
                           const EnumerationBounds& bounds = {});

std::string to_string(OptProvenance p);

}  // namespace cflgap
