#include "cflgap/costs.hpp"

#include <algorithm>

#include "cflgap/random.hpp"

namespace cflgap {

CostVector CostVector::dense(std::uint64_t facility_count, std::uint64_t client_count,
                             std::vector<Rational> opening, std::vector<Rational> connection) {
  if (opening.size() != facility_count || connection.size() != facility_count * client_count) {
    throw Error(Error::Kind::invalid_argument, "cost vector dimensions do not match");
  }
  for (const auto* v : {&opening, &connection}) {
    for (const auto& c : *v) {
      if (sgn(c) < 0) throw Error(Error::Kind::invalid_argument, "costs must be nonnegative");
    }
  }
  CostVector cost;
  cost.opening_ = std::move(opening);
  cost.client_count_ = client_count;
  cost.storage_ = Dense{std::move(connection)};
  return cost;
}

CostVector CostVector::two_point(std::uint64_t client_count, std::vector<Rational> opening,
                                 std::vector<bool> facility_near, ClientRange near_clients) {
  if (facility_near.size() != opening.size() || near_clients.end > client_count) {
    throw Error(Error::Kind::invalid_argument, "cost vector dimensions do not match");
  }
  for (const auto& c : opening) {
    if (sgn(c) < 0) throw Error(Error::Kind::invalid_argument, "costs must be nonnegative");
  }
  CostVector cost;
  cost.opening_ = std::move(opening);
  cost.client_count_ = client_count;
  cost.storage_ = TwoPoint{std::move(facility_near), near_clients};
  cost.flagged_metric_ = true;
  return cost;
}

Rational CostVector::connection(FacilityId i, ClientId j) const {
  if (i >= facility_count() || j >= client_count_) {
    throw Error(Error::Kind::invalid_argument, "cost coordinate out of range");
  }
  if (const auto* d = std::get_if<Dense>(&storage_)) return d->connection[i * client_count_ + j];
  const auto& tp = std::get<TwoPoint>(storage_);
  return tp.facility_near[i] == tp.near_clients.contains(j) ? Rational(0) : Rational(1);
}

std::vector<ClientId> CostVector::client_cuts() const {
  std::vector<ClientId> cuts;
  if (is_dense()) {
    for (ClientId j = 1; j < client_count_; ++j) cuts.push_back(j);
    return cuts;
  }
  const auto& r = std::get<TwoPoint>(storage_).near_clients;
  for (ClientId c : {r.begin, r.end}) {
    if (c > 0 && c < client_count_) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

CostVector CostVector::to_dense(std::uint64_t max_entries) const {
  const std::uint64_t nf = facility_count();
  if (nf * client_count_ > max_entries) {
    throw Error(Error::Kind::precondition, "cost vector too large to materialize");
  }
  std::vector<Rational> conn(nf * client_count_);
  for (FacilityId i = 0; i < nf; ++i) {
    for (ClientId j = 0; j < client_count_; ++j) conn[i * client_count_ + j] = connection(i, j);
  }
  CostVector out = dense(nf, client_count_, opening_, std::move(conn));
  out.flagged_metric_ = flagged_metric_;
  return out;
}

CostVector CostVector::scaled(const Rational& factor) const {
  if (sgn(factor) <= 0) throw Error(Error::Kind::invalid_argument, "scale factor must be positive");
  CostVector out = to_dense();
  for (auto& c : out.opening_) c *= factor;
  for (auto& c : std::get<Dense>(out.storage_).connection) c *= factor;
  return out;
}

CostVector build_gap_costs(const Instance& inst, const CoreIndex& index) {
  validate_core_index(inst, index);
  std::vector<Rational> opening(inst.facility_count, Rational(0));
  std::vector<bool> near(inst.facility_count, false);
  for (FacilityId i : index.k) near[i] = true;
  for (FacilityId i : index.l) {
    near[i] = true;
    opening[i] = 1;
  }
  return CostVector::two_point(inst.client_count, std::move(opening), std::move(near),
                               index.core_clients);
}

MetricCheck check_metric_admissible(const CostVector& cost, const Instance& inst,
                                    const MetricCheckOptions& options) {
  if (cost.facility_count() != inst.facility_count || cost.client_count() != inst.client_count) {
    throw Error(Error::Kind::invalid_argument, "cost vector does not match instance dimensions");
  }
  const std::uint64_t nf = inst.facility_count;
  const std::uint64_t m = inst.client_count;
  MetricCheck result;
  if (nf == 0 || m == 0) return result;

  if (nf * m <= options.max_exhaustive_pairs) {
    std::vector<Rational> table(nf * m);
    for (FacilityId i = 0; i < nf; ++i) {
      for (ClientId j = 0; j < m; ++j) table[i * m + j] = cost.connection(i, j);
    }
    for (FacilityId i = 0; i < nf; ++i) {
      for (FacilityId i2 = 0; i2 < nf; ++i2) {
        ClientId jmax = 0, jmin = 0;
        Rational best_diff = table[i * m] - table[i2 * m];
        Rational best_sum = table[i * m] + table[i2 * m];
        for (ClientId j = 1; j < m; ++j) {
          Rational diff = table[i * m + j] - table[i2 * m + j];
          if (diff > best_diff) {
            best_diff = diff;
            jmax = j;
          }
          Rational sum = table[i * m + j] + table[i2 * m + j];
          if (sum < best_sum) {
            best_sum = sum;
            jmin = j;
          }
        }
        if (best_diff > best_sum) {
          result.status = MetricCheck::Status::violated;
          result.witness = std::array<std::uint64_t, 4>{i, jmax, i2, jmin};
          return result;
        }
      }
    }
    return result;
  }

  result.sampled = true;
  result.samples = options.samples;
  Rng rng(options.seed);
  for (std::uint64_t s = 0; s < options.samples; ++s) {
    const FacilityId i = static_cast<FacilityId>(rng.below(nf));
    const FacilityId i2 = static_cast<FacilityId>(rng.below(nf));
    const ClientId j = rng.below(m);
    const ClientId j2 = rng.below(m);
    if (cost.connection(i, j) > cost.connection(i, j2) + cost.connection(i2, j2) + cost.connection(i2, j)) {
      result.status = MetricCheck::Status::violated;
      result.witness = std::array<std::uint64_t, 4>{i, j, i2, j2};
      return result;
    }
  }
  result.status = MetricCheck::Status::not_falsified;
  return result;
}

}  // namespace cflgap
