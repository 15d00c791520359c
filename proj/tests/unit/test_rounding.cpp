#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "helpers.hpp"

using namespace testing;

namespace {

// Exact law of D rebuilt from the two-experiment description, enumerating
// every split subset explicitly instead of collapsing bins into classes.
struct Law {
  std::map<OutcomeKey, Rational> classes;
  std::vector<Rational> ey;        // E[y_i]
  std::vector<Rational> core_load; // E[# core clients on i]
  std::vector<Rational> rest_load; // E[# non-core clients on i]
};

std::vector<std::pair<std::vector<std::uint64_t>, Rational>> splits(std::uint64_t total,
                                                                    std::size_t bins) {
  std::vector<std::pair<std::vector<std::uint64_t>, Rational>> out;
  if (bins == 0) {
    REQUIRE(total == 0);
    out.push_back({{}, q(1)});
    return out;
  }
  const std::uint64_t lo = total / bins, up = total % bins;
  std::uint64_t subsets = 0;
  for (std::uint32_t mask = 0; mask < (1u << bins); ++mask)
    subsets += static_cast<std::uint64_t>(__builtin_popcount(mask)) == up;
  for (std::uint32_t mask = 0; mask < (1u << bins); ++mask) {
    if (static_cast<std::uint64_t>(__builtin_popcount(mask)) != up) continue;
    std::vector<std::uint64_t> s(bins, lo);
    for (std::size_t b = 0; b < bins; ++b) s[b] += mask >> b & 1;
    out.push_back({s, q(1) / q(static_cast<long>(subsets))});
  }
  return out;
}

std::vector<std::pair<std::uint64_t, Rational>> round_law(const Rational& w) {
  const auto lo = to_u64(floor(w));
  if (frac(w) == 0) return {{lo, q(1)}};
  return {{lo, 1 - frac(w)}, {lo + 1, frac(w)}};
}

Law law_of_D(const Instance& inst, const CoreIndex& a, const CoreIndex& b) {
  const auto n = inst.facility_count, m = inst.client_count, t = inst.params().t;
  const auto core = inst.params().core_client_count;
  const Rational eps = inst.params().eps, xl = inst.params().x_l;
  Law law{{}, std::vector<Rational>(n), std::vector<Rational>(n), std::vector<Rational>(n)};

  auto escape = [](const CoreIndex& x, const CoreIndex& y) {
    for (auto i : x.l)
      if (std::find(y.k.begin(), y.k.end(), i) == y.k.end() && std::find(y.l.begin(), y.l.end(), i) == y.l.end())
        return i;
    FAIL("pair does not collide");
    return FacilityId{0};
  };
  const FacilityId f = escape(a, b), g = escape(b, a);

  for (int e = 0; e < 2; ++e) {
    const CoreIndex& own = e == 0 ? a : b;
    const FacilityId pivot = e == 0 ? f : g, extra = e == 0 ? g : f;
    std::set<FacilityId> inside(own.k.begin(), own.k.end());
    inside.insert(own.l.begin(), own.l.end());
    std::vector<FacilityId> bins;
    for (FacilityId i = 0; i < n; ++i)
      if (!inside.count(i) && i != extra) bins.push_back(i);

    for (FacilityId c : own.l) {
      const Rational pc = c == pivot ? 1 - q(t - 1) * eps : eps;
      if (pc == 0) continue;
      for (const auto& [cs, pr1] : round_law(q(core) * xl / pc)) {
        for (const auto& [ksplit, pr2] : splits(core - cs, own.k.size())) {
          const Rational p_extra = q(t) * eps;
          for (int open = 0; open < 2; ++open) {
            const Rational po = open ? p_extra : 1 - p_extra;
            if (po == 0) continue;
            const Rational w2 = q(m - core) / q(n - 2 * t) / p_extra;
            for (const auto& [es, pr3] : open ? round_law(w2) : std::vector<std::pair<std::uint64_t, Rational>>{{0, q(1)}}) {
              for (const auto& [bsplit, pr4] : splits(m - core - es, bins.size())) {
                const Rational p = q(1, 2) * pc * pr1 * pr2 * po * pr3 * pr4;
                law.classes[OutcomeKey{e == 0 ? Experiment::A : Experiment::B, c, cs, open == 1, es}] += p;
                std::vector<bool> opened(n, false);
                for (auto i : own.k) opened[i] = true;
                opened[c] = true;
                for (auto i : bins) opened[i] = true;
                if (open) opened[extra] = true;
                for (FacilityId i = 0; i < n; ++i)
                  if (opened[i]) law.ey[i] += p;
                law.core_load[c] += p * q(cs);
                for (std::size_t x = 0; x < own.k.size(); ++x) law.core_load[own.k[x]] += p * q(ksplit[x]);
                law.rest_load[extra] += p * q(es);
                for (std::size_t x = 0; x < bins.size(); ++x) law.rest_load[bins[x]] += p * q(bsplit[x]);
              }
            }
          }
        }
      }
    }
  }
  return law;
}

void check_against_law(const Instance& inst, const CoreIndex& a, const CoreIndex& b) {
  const Law law = law_of_D(inst, a, b);
  const auto core = inst.params().core_client_count, m = inst.client_count;

  const FracVector ev = expected_vector(inst, a, b);
  const FracVector mid = midpoint(make_core_vector(inst, a), make_core_vector(inst, b));
  for (FacilityId i = 0; i < inst.facility_count; ++i) {
    CHECK(ev.y(i) == law.ey[i]);
    CHECK(mid.y(i) == law.ey[i]);
    for (ClientId j = 0; j < m; ++j) {
      const Rational x = j < core ? law.core_load[i] / q(core) : law.rest_load[i] / q(m - core);
      CHECK(ev.x(i, j) == x);
      CHECK(mid.x(i, j) == x);
    }
  }

  const auto classes = enumerate_outcome_classes(inst, a, b);
  CHECK(classes.size() == law.classes.size());
  Rational total;
  for (const auto& c : classes) {
    total += c.probability;
    REQUIRE(law.classes.count(c.key));
    CHECK(law.classes.at(c.key) == c.probability);
  }
  CHECK(total == 1);
}

}  // namespace

TEST_SUITE("rounding") {

TEST_CASE("round_slots on 9/4 and on an integer") {
  Rng rng(5);
  int threes = 0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) {
    const auto v = round_slots(q(9, 4), rng);
    REQUIRE((v == 2 || v == 3));
    threes += v == 3;
  }
  CHECK(std::abs(threes - n / 4) < 4 * std::sqrt(n * 3.0 / 16));
  for (int i = 0; i < 100; ++i) CHECK(round_slots(q(5), rng) == 5);
  const auto law = round_law(q(9, 4));
  CHECK(law[0].first * law[0].second + law[1].first * law[1].second == q(9, 4));
}

TEST_CASE("split_slots") {
  Rng rng(6);
  for (int i = 0; i < 50; ++i) CHECK(split_slots(9, 3, q(3), rng) == std::vector<std::uint64_t>{3, 3, 3});
  int first_up = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const auto s = split_slots(7, 2, q(7, 2), rng);
    REQUIRE(s.size() == 2);
    REQUIRE(s[0] + s[1] == 7);
    REQUIRE(((s[0] == 4 && s[1] == 3) || (s[0] == 3 && s[1] == 4)));
    first_up += s[0] == 4;
  }
  CHECK(std::abs(first_up - n / 2) < 4 * std::sqrt(n / 4.0));
  CHECK_THROWS_AS(split_slots(8, 2, q(7, 2), rng), Error);
}

TEST_CASE("pivots of a non-colliding pair do not exist") {
  const Instance inst = mini();
  const CoreIndex a = make_core_index(inst, {0, 1}, {2, 3});
  const CoreIndex b = make_core_index(inst, {4, 5}, {0, 1});
  CHECK_FALSE(collides(a, b));
  CHECK_THROWS_WITH_AS(pivot_facilities(a, b), doctest::Contains("no pivot"), Error);
  CHECK_THROWS_AS(verify_midpoint(inst, a, b), Error);
}

TEST_CASE("mini weights") {
  // Non-pivot l facility: 9 * (1/8) / (2/5) = 45/16.
  CHECK(q(9) * q(1, 8) / q(2, 5) == q(45, 16));
  const Instance inst = mini();
  const CoreIndex a = make_core_index(inst, {0, 1}, {2, 3});
  const CoreIndex b = make_core_index(inst, {0, 1}, {4, 5});
  bool seen = false;
  for (const auto& c : enumerate_outcome_classes(inst, a, b)) {
    if (c.key.experiment == Experiment::A && c.key.chosen == 3) {
      CHECK((c.key.chosen_slots == 2 || c.key.chosen_slots == 3));
      seen = true;
    }
  }
  CHECK(seen);
}

TEST_CASE("expectation and classes match the explicit law on every colliding mini pair") {
  const Instance inst = mini();
  const auto cores = all_cores(6, 2);
  int pairs = 0;
  for (const auto& [k1, l1] : cores)
    for (const auto& [k2, l2] : cores) {
      const CoreIndex a = make_core_index(inst, k1, l1), b = make_core_index(inst, k2, l2);
      if (!collides(a, b)) continue;
      ++pairs;
      check_against_law(inst, a, b);
      const MidpointCertificate cert = verify_midpoint(inst, a, b, {50, 1});
      CHECK(cert.valid());
    }
  CHECK(pairs > 0);
}

TEST_CASE("expectation identity on a tiny instance and a second mini variant") {
  const Instance t1 = tiny();
  check_against_law(t1, make_core_index(t1, {0}, {1}), make_core_index(t1, {0}, {2}));
  check_against_law(t1, make_core_index(t1, {3}, {1}), make_core_index(t1, {2}, {0}));
  const Instance v = build_general_instance(7, 2, 4, 15, q(2, 5), q(1, 8));
  REQUIRE(validate_params(v).empty());
  check_against_law(v, make_core_index(v, {0, 6}, {2, 3}), make_core_index(v, {1, 3}, {4, 5}));
}

TEST_CASE("distribution at t=10") {
  const Instance inst = build_family_instance(10, 2);
  const CoreIndex a = make_core_index(inst, range_ids(0, 10), range_ids(10, 20));
  const CoreIndex b = make_core_index(inst, range_ids(0, 10), range_ids(20, 30));
  const FracVector ev = expected_vector(inst, a, b);
  CHECK(ev.y(10) == q(11, 20));
  CHECK(ev.y(50) == 1);
  CHECK(ev.y(20) == q(11, 20));
  const auto classes = enumerate_outcome_classes(inst, a, b);
  Rational total;
  for (const auto& c : classes) {
    total += c.probability;
    CHECK(c.key.extra_open);  // t * eps = 1
  }
  CHECK(total == 1);
  const MidpointCertificate cert = verify_midpoint(inst, a, b, {2000, 3});
  CHECK(cert.valid());
}

TEST_CASE("every class is a feasible slot profile") {
  const Instance inst = mini();
  const CoreIndex a = make_core_index(inst, {1, 4}, {0, 5});
  const CoreIndex b = make_core_index(inst, {0, 2}, {3, 4});
  REQUIRE(collides(a, b));
  const MidpointDistribution d(inst, a, b);
  for (const auto& c : d.outcome_classes()) {
    CHECK(d.check_class(c).empty());
    std::uint64_t covered = 0;
    for (FacilityId i = 0; i < 6; ++i) {
      CHECK(c.slot_profile[i] <= inst.capacity);
      if (c.slot_profile[i] > 0) CHECK(c.open[i]);
      covered += c.slot_profile[i];
    }
    CHECK(covered == inst.client_count);
  }
}

TEST_CASE("samples are feasible and follow the class law") {
  const Instance inst = mini();
  const CoreIndex a = make_core_index(inst, {1, 4}, {0, 5});
  const CoreIndex b = make_core_index(inst, {0, 2}, {3, 4});
  const MidpointDistribution d(inst, a, b);
  const auto classes = d.outcome_classes();
  std::map<OutcomeKey, std::uint64_t> freq;
  Rng rng(2024);
  const std::uint64_t n = 20000;
  for (std::uint64_t s = 0; s < n; ++s) {
    const Sample smp = d.sample(rng);
    REQUIRE(check_solution(inst, smp.solution).empty());
    ++freq[smp.key];
  }
  for (const auto& c : classes) {
    const double p = c.probability.get_d();
    const double se = std::sqrt(n * p * (1 - p));
    CHECK(std::abs(static_cast<double>(freq[c.key]) - n * p) <= 4 * se + 1e-9);
    freq.erase(c.key);
  }
  CHECK(freq.empty());
}

TEST_CASE("sampling is reproducible") {
  const Instance inst = mini();
  const CoreIndex a = make_core_index(inst, {1, 4}, {0, 5});
  const CoreIndex b = make_core_index(inst, {0, 2}, {3, 4});
  Rng r1(9), r2(9);
  for (int i = 0; i < 200; ++i) CHECK(sample_D(inst, a, b, r1) == sample_D(inst, a, b, r2));
}

TEST_CASE("check_solution catches each invariant") {
  const Instance inst = tiny();
  IntSolution s{std::vector<bool>(4, true), std::vector<FacilityId>{0, 0, 1, 1, 2}};
  CHECK(check_solution(inst, s).empty());
  s.assign[4] = 0;
  CHECK(check_solution(inst, s).size() == 1);
  s.assign[4] = 3;
  s.open[3] = false;
  CHECK(check_solution(inst, s).size() == 1);
  s.assign.pop_back();
  CHECK_FALSE(check_solution(inst, s).empty());
}

}
