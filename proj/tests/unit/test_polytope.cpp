#include <doctest.h>

#include "cflgap/exact_lp.hpp"
#include "helpers.hpp"

using namespace testing;

namespace {

// Direct count: for every open set, the number of maps clients -> open
// facilities with no facility over capacity.
std::uint64_t count_solutions(std::uint64_t n, std::uint64_t m, std::uint64_t U) {
  std::uint64_t total = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<FacilityId> open;
    for (FacilityId i = 0; i < n; ++i)
      if (mask >> i & 1) open.push_back(i);
    if (m == 0) {
      ++total;
      continue;
    }
    if (open.empty()) continue;
    std::uint64_t maps = 1;
    for (std::uint64_t j = 0; j < m; ++j) maps *= open.size();
    for (std::uint64_t code = 0; code < maps; ++code) {
      std::vector<std::uint64_t> load(n, 0);
      std::uint64_t c = code;
      bool ok = true;
      for (std::uint64_t j = 0; j < m; ++j) {
        ok &= ++load[open[c % open.size()]] <= U;
        c /= open.size();
      }
      total += ok;
    }
  }
  return total;
}

FracVector as_vector(const Instance& inst, const IntSolution& s) {
  const auto pt = solution_point(s);
  const auto n = inst.facility_count;
  return FracVector::dense(n, inst.client_count, {pt.begin(), pt.begin() + n}, {pt.begin() + n, pt.end()});
}

}  // namespace

TEST_SUITE("polytope") {

TEST_CASE("enumeration counts") {
  const Instance one = build_general_instance(1, 1, 1, 1, q(1, 2), q(1, 2));
  Instance empty = one;
  empty.client_count = 0;
  CHECK(enumerate_integer_solutions(empty).size() == 2);

  Instance two = build_general_instance(2, 1, 1, 1, q(1, 2), q(1, 2));
  CHECK(enumerate_integer_solutions(two).size() == count_solutions(2, 1, 1));
  CHECK(count_solutions(2, 1, 1) == 4);

  two.client_count = 3;
  CHECK(enumerate_integer_solutions(two).empty());

  const Instance t1 = tiny();
  const auto sols = enumerate_integer_solutions(t1);
  CHECK(sols.size() == count_solutions(4, 5, 2));
  for (const auto& s : sols) CHECK(check_solution(t1, s).empty());
}

TEST_CASE("enumeration refuses instances beyond the bounds") {
  CHECK_THROWS_AS(enumerate_integer_solutions(mini()), Error);
}

TEST_CASE("a vertex is a member with weight one") {
  const Instance t1 = tiny();
  const auto sols = enumerate_integer_solutions(t1);
  const std::size_t pick = sols.size() / 3;
  const auto r = membership_lp(as_vector(t1, sols[pick]), sols);
  CHECK(r.member);
  REQUIRE(r.weights.size() == 1);
  CHECK(r.weights[0].first == pick);
  CHECK(r.weights[0].second == 1);
  CHECK(verify_membership(r, as_vector(t1, sols[pick]), sols));
}

TEST_CASE("midpoint of a colliding tiny pair is a member, an x>y perturbation is not") {
  const Instance t1 = tiny();
  const auto sols = enumerate_integer_solutions(t1);
  const CoreIndex a = make_core_index(t1, {0}, {1});
  const CoreIndex b = make_core_index(t1, {0}, {2});
  REQUIRE(collides(a, b));
  CHECK(verify_midpoint(t1, a, b).valid());
  const FracVector mid = midpoint(make_core_vector(t1, a), make_core_vector(t1, b)).to_dense();
  const auto r = membership_lp(mid, sols);
  CHECK(r.member);
  CHECK(verify_membership(r, mid, sols));

  // Raise x_{3,0} above y_3 while keeping client 0's mass at one.
  const auto pt = vector_point(mid);
  std::vector<Rational> y(pt.begin(), pt.begin() + 4), x(pt.begin() + 4, pt.end());
  y[3] = q(1, 4);
  const FracVector bad = FracVector::dense(4, 5, y, x);
  const auto s = membership_lp(bad, sols);
  CHECK_FALSE(s.member);
  REQUIRE(s.separating.has_value());
  CHECK(verify_membership(s, bad, sols));
}

TEST_CASE("the verifier rejects tampered certificates") {
  const Instance t1 = tiny();
  const auto sols = enumerate_integer_solutions(t1);
  const FracVector v = as_vector(t1, sols[0]);
  auto r = membership_lp(v, sols);
  REQUIRE(r.member);
  r.weights[0].first = 1;
  CHECK_FALSE(verify_membership(r, v, sols));

  MembershipResult fake;
  fake.member = false;
  fake.separating = SeparatingInequality{std::vector<Rational>(4 + 20), q(-1)};
  CHECK_FALSE(verify_membership(fake, v, sols));  // 0 <= -1 fails at solutions too
}

TEST_CASE("exact simplex on small systems") {
  // z0 + z1 = 1, z0 - z1 = 0 -> (1/2, 1/2)
  auto r = solve_nonnegative_system({{q(1), q(1)}, {q(1), q(-1)}}, {q(1), q(0)});
  REQUIRE(r.feasible);
  CHECK(r.point[0] == q(1, 2));
  CHECK(r.point[1] == q(1, 2));
  // z0 + z1 = -1 has no nonnegative solution.
  r = solve_nonnegative_system({{q(1)}, {q(1)}}, {q(-1)});
  REQUIRE_FALSE(r.feasible);
  CHECK(r.farkas[0] * q(1) <= 0);
  CHECK(r.farkas[0] * q(-1) > 0);
  // Degenerate and redundant rows.
  r = solve_nonnegative_system({{q(1), q(2)}, {q(1), q(2)}, {q(0), q(0)}}, {q(1), q(2)});
  CHECK(r.feasible);
}

TEST_CASE("brute-force optimum") {
  const Instance t1 = tiny();
  const CostVector zero = CostVector::dense(4, 5, std::vector<Rational>(4), std::vector<Rational>(20));
  CHECK(brute_force_opt(t1, zero).value == 0);

  Rng rng(12);
  std::vector<Rational> open(4), conn(20);
  for (auto& e : open) e = q(static_cast<long>(rng.below(5)), 2);
  for (auto& e : conn) e = q(static_cast<long>(rng.below(7)), 3);
  const CostVector c = CostVector::dense(4, 5, open, conn);
  const OptResult base = brute_force_opt(t1, c);
  const OptResult scaled = brute_force_opt(t1, c.scaled(q(7, 3)));
  CHECK(scaled.value == base.value * q(7, 3));
  CHECK(solution_cost(c, scaled.witness) == base.value);

  Rational best = -1;
  for (const auto& s : enumerate_integer_solutions(t1)) {
    Rational v;
    for (FacilityId i = 0; i < 4; ++i) v += s.open[i] ? open[i] : q(0);
    for (ClientId j = 0; j < 5; ++j) v += conn[s.assign[j] * 5 + j];
    if (best < 0 || v < best) best = v;
  }
  CHECK(base.value == best);
}

}
