#include <doctest.h>

#include "helpers.hpp"

using namespace testing;

namespace {

// Quadrangle inequality over every quadruple, straight from the definition.
bool metric_by_definition(const CostVector& c) {
  const auto n = c.facility_count(), m = c.client_count();
  for (FacilityId i = 0; i < n; ++i)
    for (FacilityId i2 = 0; i2 < n; ++i2)
      for (ClientId j = 0; j < m; ++j)
        for (ClientId j2 = 0; j2 < m; ++j2)
          if (c.connection(i, j) > c.connection(i, j2) + c.connection(i2, j2) + c.connection(i2, j))
            return false;
  return true;
}

CostVector zero_costs(std::uint64_t n, std::uint64_t m) {
  return CostVector::dense(n, m, std::vector<Rational>(n), std::vector<Rational>(n * m));
}

}  // namespace

TEST_SUITE("costs") {

TEST_CASE("gap costs at t=10") {
  const Instance inst = build_family_instance(10, 2);
  const CoreIndex idx = make_core_index(inst, range_ids(0, 10), range_ids(10, 20));
  const CostVector c = build_gap_costs(inst, idx);
  int ones = 0;
  for (FacilityId i = 0; i < 100; ++i) ones += c.opening(i) == 1;
  CHECK(ones == 10);
  for (FacilityId i = 10; i < 20; ++i) CHECK(c.opening(i) == 1);
  CHECK(c.connection(3, 0) == 0);
  CHECK(c.connection(3, 10000) == 0);
  CHECK(c.connection(3, 10001) == 1);
  CHECK(c.connection(50, 0) == 1);
  CHECK(c.connection(50, 19999) == 0);
  CHECK(c.flagged_metric());
}

TEST_CASE("all-zero costs are admissible") {
  CHECK(check_metric_admissible(zero_costs(6, 13), mini()).status ==
        MetricCheck::Status::admissible);
}

TEST_CASE("a single positive entry violates the quadrangle inequality") {
  const Instance inst = build_general_instance(2, 1, 2, 2, q(1, 2), q(1, 4));
  std::vector<Rational> conn(4);
  conn[0] = 1;
  const CostVector c = CostVector::dense(2, 2, std::vector<Rational>(2), conn);
  const MetricCheck r = check_metric_admissible(c, inst);
  CHECK(r.status == MetricCheck::Status::violated);
  REQUIRE(r.witness);
  const auto [i, j, i2, j2] = *r.witness;
  CHECK(c.connection(i, j) > c.connection(i, j2) + c.connection(i2, j2) + c.connection(i2, j));
}

TEST_CASE("gap costs pass the exhaustive check on every mini core") {
  const Instance inst = mini();
  for (const auto& [k, l] : all_cores(6, 2)) {
    const CostVector c = build_gap_costs(inst, make_core_index(inst, k, l));
    const CostVector d = c.to_dense();
    CHECK(check_metric_admissible(d, inst).status == MetricCheck::Status::admissible);
    CHECK(metric_by_definition(d));
  }
}

TEST_CASE("exhaustive check agrees with the definition on random small matrices") {
  Rng rng(7);
  const Instance inst = build_general_instance(3, 1, 3, 3, q(1, 2), q(1, 4));
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Rational> conn(9);
    for (auto& e : conn) e = q(static_cast<long>(rng.below(4)));
    const CostVector c = CostVector::dense(3, 3, std::vector<Rational>(3), conn);
    const bool admissible = check_metric_admissible(c, inst).status == MetricCheck::Status::admissible;
    CHECK(admissible == metric_by_definition(c));
  }
}

TEST_CASE("large instances fall back to sampling") {
  const Instance inst = build_family_instance(10, 2);
  const CoreIndex idx = make_core_index(inst, range_ids(0, 10), range_ids(10, 20));
  MetricCheckOptions opt;
  opt.samples = 2000;
  const MetricCheck r = check_metric_admissible(build_gap_costs(inst, idx), inst, opt);
  CHECK(r.sampled);
  CHECK(r.status == MetricCheck::Status::not_falsified);
}

TEST_CASE("two-point costs expand to the same dense matrix") {
  const Instance inst = mini();
  const CoreIndex idx = make_core_index(inst, {1, 4}, {0, 5});
  const CostVector c = build_gap_costs(inst, idx);
  const CostVector d = c.to_dense();
  for (FacilityId i = 0; i < 6; ++i)
    for (ClientId j = 0; j < 13; ++j) CHECK(c.connection(i, j) == d.connection(i, j));
  const CostVector s = c.scaled(q(3, 2));
  CHECK(s.opening(0) == q(3, 2));
  CHECK(s.connection(2, 0) == q(3, 2));
}

}
