#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cflgap/rational.hpp"

namespace cflgap {

using FacilityId = std::uint32_t;
using ClientId = std::uint64_t;

/// Parameters of the lower-bound construction. The original family fixes
/// eps = 10/t^2, x_l = 1/t^3 and core_client_count = U*t + 1; the generalized
/// mini-family lets them vary subject to validate_params.
struct FamilyParams {
  std::uint64_t t = 0;
  /// Client multiplier of the original family (client_count = a*t^4); absent
  /// for generalized instances.
  std::optional<std::uint64_t> a;
  /// Opening value on the l-facilities of a core vector.
  Rational eps;
  /// Assignment from each l-facility to each core client.
  Rational x_l;
  std::uint64_t core_client_count = 0;

  /// Assignment from each k-facility to each core client, (1 - t*x_l)/t.
  Rational x_k() const;

  bool operator==(const FamilyParams&) const = default;
};

/// Uniform-capacity, unit-demand CFL feasible set. Facilities are 0..n_f-1,
/// clients 0..m-1.
struct Instance {
  std::uint64_t facility_count = 0;
  std::uint64_t client_count = 0;
  std::uint64_t capacity = 0;
  std::optional<FamilyParams> family;

  std::uint64_t demand(ClientId) const { return 1; }

  /// Family parameters, or Error if the instance has none.
  const FamilyParams& params() const;

  bool operator==(const Instance&) const = default;
};

/// The original family I(t^2, a*t^4, t^3). Pure construction: validity is
/// left to validate_params.
Instance build_family_instance(std::uint64_t t, std::uint64_t a);

/// Generalized instance with explicit eps and x_l; core_client_count is
/// capacity*t + 1. Rejects nonpositive counts.
Instance build_general_instance(std::uint64_t facility_count, std::uint64_t t,
                                std::uint64_t capacity, std::uint64_t client_count,
                                const Rational& eps, const Rational& x_l);

struct ParamViolation {
  std::string condition;  // short identifier, e.g. "eps<=1"
  std::string detail;     // the offending exact values
};

/// Every violated validity condition of inst.family (empty = valid).
///
/// Beyond the fractional-feasibility conditions, this also checks that every
/// floor/ceil branch of the rounding experiments fits the capacity, so a valid
/// instance never trips the sampler's capacity assertion.
std::vector<ParamViolation> validate_params(const Instance& inst);

/// Throws Error listing the violations when validate_params is non-empty.
void require_valid(const Instance& inst);

}  // namespace cflgap
