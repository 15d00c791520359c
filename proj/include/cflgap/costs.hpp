#pragma once

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "cflgap/core_index.hpp"

namespace cflgap {

/// Opening costs f_i and connection costs c_ij.
///
/// Mini instances store connections densely. The gap construction stores them
/// by site instead: every facility and client sits at one of two points at
/// distance 1, and c_ij is 0 for co-located pairs and 1 otherwise. Clients in
/// `near_clients` sit at the first point, all others at the second.
class CostVector {
 public:
  struct Dense {
    std::vector<Rational> connection;  // row-major, facility * client_count + client
  };
  struct TwoPoint {
    std::vector<bool> facility_near;
    ClientRange near_clients;
  };

  static CostVector dense(std::uint64_t facility_count, std::uint64_t client_count,
                          std::vector<Rational> opening, std::vector<Rational> connection);
  static CostVector two_point(std::uint64_t client_count, std::vector<Rational> opening,
                              std::vector<bool> facility_near, ClientRange near_clients);

  std::uint64_t facility_count() const { return opening_.size(); }
  std::uint64_t client_count() const { return client_count_; }

  const Rational& opening(FacilityId i) const { return opening_.at(i); }
  Rational connection(FacilityId i, ClientId j) const;

  bool is_dense() const { return std::holds_alternative<Dense>(storage_); }
  const TwoPoint* two_point_sites() const { return std::get_if<TwoPoint>(&storage_); }

  /// Set by constructions that are metric by design (the two-point costs).
  bool flagged_metric() const { return flagged_metric_; }

  /// Client ids where c(i, .) may change value, for every i. Two-point costs
  /// change only at the near/far boundary; dense costs at every client.
  std::vector<ClientId> client_cuts() const;

  /// Dense copy; refuses sizes above max_entries.
  CostVector to_dense(std::uint64_t max_entries = 1'000'000) const;

  /// Every entry multiplied by factor (> 0).
  CostVector scaled(const Rational& factor) const;

 private:
  std::vector<Rational> opening_;
  std::uint64_t client_count_ = 0;
  std::variant<Dense, TwoPoint> storage_;
  bool flagged_metric_ = false;
};

/// Costs of the gap argument for one core index: opening 1 on l, 0 elsewhere;
/// k, l and the core clients at the near point, everything else at the far
/// point. Flagged metric-admissible.
CostVector build_gap_costs(const Instance& inst, const CoreIndex& index);

struct MetricCheck {
  enum class Status { admissible, violated, not_falsified };
  Status status = Status::admissible;
  /// (i, j, i', j') with c_ij > c_ij' + c_i'j' + c_i'j, when violated.
  std::optional<std::array<std::uint64_t, 4>> witness;
  bool sampled = false;
  std::uint64_t samples = 0;
};

struct MetricCheckOptions {
  /// Exhaustive mode is used while n_f * m stays at or below this bound.
  std::uint64_t max_exhaustive_pairs = 100'000;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 0;
};

/// Quadrangle inequality c_ij <= c_ij' + c_i'j' + c_i'j over all quadruples.
///
/// Exhaustive mode runs in O(n_f^2 m): for a fixed facility pair the condition
/// reads max_j (c_ij - c_i'j) <= min_j' (c_ij' + c_i'j'). Above the size bound
/// random quadruples are drawn and a clean run reports not_falsified.
MetricCheck check_metric_admissible(const CostVector& cost, const Instance& inst,
                                    const MetricCheckOptions& options = {});

}  // namespace cflgap
