#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cflgap/costs.hpp"
#include "cflgap/corevec.hpp"
#include "cflgap/rounding.hpp"

namespace cflgap {

struct EnumerationBounds {
  std::uint64_t max_facilities = 4;
  std::uint64_t max_clients = 8;
};

/// Every feasible (open set, assignment) pair, open sets in bitmask order and
/// assignments in lexicographic client order. Open facilities serving nobody
/// are included.
std::vector<IntSolution> enumerate_integer_solutions(const Instance& inst,
                                                     const EnumerationBounds& bounds = {});

/// Coordinates in (y, x) order: y_0..y_{n_f-1}, then x_ij at n_f + i*m + j.
std::vector<Rational> solution_point(const IntSolution& sol);
std::vector<Rational> vector_point(const FracVector& v);

struct SeparatingInequality {
  std::vector<Rational> coefficients;
  Rational offset;  // coefficients . z <= offset
};

struct MembershipResult {
  bool member = false;
  /// (solution index, weight) for the solutions with positive weight.
  std::vector<std::pair<std::size_t, Rational>> weights;
  std::optional<SeparatingInequality> separating;
};

/// Exact decision of v in conv(solutions) by rational phase-I simplex on the
/// convex-combination system. A non-member gets the separating inequality
/// read off the Farkas multipliers.
MembershipResult membership_lp(const FracVector& v, const std::vector<IntSolution>& solutions);

/// Re-checks a MembershipResult by direct arithmetic, without the simplex:
/// weights are nonnegative, sum to one and recombine to v; or the inequality
/// holds at every solution and fails at v.
bool verify_membership(const MembershipResult& result, const FracVector& v,
                       const std::vector<IntSolution>& solutions);

Rational solution_cost(const CostVector& cost, const IntSolution& sol);

struct OptResult {
  Rational value;
  IntSolution witness;
};

/// Minimum cost over all enumerated solutions, first optimum in enumeration
/// order as witness. Throws when no feasible solution exists.
OptResult brute_force_opt(const Instance& inst, const CostVector& cost,
                          const EnumerationBounds& bounds = {});

}  // namespace cflgap
