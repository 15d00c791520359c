#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cflgap/corevec.hpp"
#include "cflgap/random.hpp"

namespace cflgap {

/// Integer CFL solution: an open set and a total client -> facility map.
struct IntSolution {
  std::vector<bool> open;
  std::vector<FacilityId> assign;

  bool operator==(const IntSolution&) const = default;
};

/// Every violated solution invariant (empty = feasible): sizes, assignment to
/// an open facility, capacity.
std::vector<std::string> check_solution(const Instance& inst, const IntSolution& sol);

/// Pivots of a colliding pair: f = min of l1 \ (k2 u l2), g = min of
/// l2 \ (k1 u l1). The same f and g serve both experiments.
struct Pivots {
  FacilityId f = 0;
  FacilityId g = 0;
};

/// Throws Error ("no pivot exists ...") for a non-colliding pair.
Pivots pivot_facilities(const CoreIndex& a, const CoreIndex& b);

/// floor(w) with probability 1 - frac(w), otherwise ceil(w).
std::uint64_t round_slots(const Rational& w, Rng& rng);

/// Splits `total` clients over `bin_count` bins with average `avg`: exactly
/// bin_count * frac(avg) bins, chosen uniformly, receive ceil(avg) and the
/// rest floor(avg). Requires total = bin_count * avg.
std::vector<std::uint64_t> split_slots(std::uint64_t total, std::uint64_t bin_count,
                                       const Rational& avg, Rng& rng);

enum class Experiment : std::uint8_t { A, B };

/// What identifies an outcome class: the experiment, the facility opened from
/// its l-set with the slot count it received, and whether the pivot of the
/// second step opened (with its slot count). Which bins of a split got the
/// rounded-up count is not part of the key; bins are exchangeable.
struct OutcomeKey {
  Experiment experiment = Experiment::A;
  FacilityId chosen = 0;
  std::uint64_t chosen_slots = 0;
  bool extra_open = false;
  std::uint64_t extra_slots = 0;

  auto operator<=>(const OutcomeKey&) const = default;
};

std::string describe(const OutcomeKey& key);

/// One outcome class with its exact probability. `slot_profile` is the
/// representative profile in which the rounded-up bins of each split are the
/// lowest facility ids; every other profile of the class is a permutation of
/// it within one group of interchangeable bins.
struct OutcomeClass {
  OutcomeKey key;
  std::vector<bool> open;
  std::vector<std::uint64_t> slot_profile;
  Rational probability;
};

struct Sample {
  IntSolution solution;
  OutcomeKey key;
};

struct MidpointCertificate {
  CoreIndex first;
  CoreIndex second;
  bool expectation_matches = false;
  std::optional<Coordinate> first_mismatch;
  bool all_classes_feasible = false;
  std::uint64_t class_count = 0;
  Rational probability_sum;
  std::uint64_t probe_count = 0;
  std::uint64_t probe_mismatches = 0;

  bool valid() const {
    return expectation_matches && all_classes_feasible && probability_sum == 1 &&
           probe_mismatches == 0;
  }
};

/// The rounding distribution D over integer solutions for a colliding pair
/// (s1, s2), whose expectation is the midpoint (s1 + s2) / 2.
///
/// With probability 1/2 experiment A runs on (k1, l1) and otherwise experiment
/// B runs the mirror image on (k2, l2). Each experiment has two steps:
///   1. Open all of k and exactly one facility of l: i != pivot with
///      probability eps, the pivot with 1 - (t-1) eps. The chosen facility
///      takes round_slots(w) core clients, w = core * x_l / P(chosen); the
///      remaining core clients are split over k.
///   2. Open every facility outside k u l except the other pair's pivot, which
///      opens with probability t eps and then takes round_slots(w') non-core
///      clients, w' = (m - core) / (n_f - 2t) / (t eps). The remaining
///      non-core clients are split over the other outside facilities.
/// Clients are drawn uniformly without replacement within each pool.
class MidpointDistribution {
 public:
  MidpointDistribution(const Instance& inst, const CoreIndex& first, const CoreIndex& second);

  const Pivots& pivots() const { return pivots_; }

  Sample sample(Rng& rng) const;

  /// Closed-form expectation of D by linearity (no sampling, no enumeration).
  FracVector expected_vector() const;

  /// All outcome classes of positive probability.
  std::vector<OutcomeClass> outcome_classes() const;

  /// Slot-level feasibility of one class (empty = feasible).
  std::vector<std::string> check_class(const OutcomeClass& cls) const;

 private:
  struct Plan {
    Experiment experiment;
    std::vector<FacilityId> k;
    std::vector<FacilityId> l;
    std::vector<Rational> l_probability;  // parallel to l
    std::vector<Rational> l_weight;       // w for each l facility
    FacilityId extra = 0;                 // pivot of the other pair
    std::vector<FacilityId> bins;         // outside k u l, minus extra
    Rational extra_probability;
    Rational extra_weight;
  };

  Plan make_plan(Experiment e, const CoreIndex& own, FacilityId own_pivot,
                 FacilityId other_pivot) const;
  void run(const Plan& plan, Rng& rng, Sample& out) const;

  Instance inst_;
  CoreIndex first_;
  CoreIndex second_;
  Pivots pivots_;
  Plan plan_a_;
  Plan plan_b_;
};

IntSolution sample_D(const Instance& inst, const CoreIndex& a, const CoreIndex& b, Rng& rng);
FracVector expected_vector(const Instance& inst, const CoreIndex& a, const CoreIndex& b);
std::vector<OutcomeClass> enumerate_outcome_classes(const Instance& inst, const CoreIndex& a,
                                                    const CoreIndex& b);

struct MidpointOptions {
  /// Random single-coordinate probes of expectation against midpoint.
  std::uint64_t probes = 0;
  std::uint64_t seed = 0;
};

/// Exact constructive check that the midpoint of a colliding pair lies in
/// conv(P): the closed-form expectation equals the midpoint cell by cell and
/// every outcome class is a feasible slot profile.
MidpointCertificate verify_midpoint(const Instance& inst, const CoreIndex& a,
                                    const CoreIndex& b, const MidpointOptions& options = {});

}  // namespace cflgap
