#pragma once

#include <vector>

#include "cflgap/instance.hpp"

namespace cflgap {

/// Half-open client id range [begin, end).
struct ClientRange {
  ClientId begin = 0;
  ClientId end = 0;

  std::uint64_t size() const { return end - begin; }
  bool contains(ClientId j) const { return begin <= j && j < end; }
  bool operator==(const ClientRange&) const = default;
};

/// Indexes one core vector: disjoint t-subsets k and l (sorted ascending)
/// and the core client set C_{k,l}.
struct CoreIndex {
  std::vector<FacilityId> k;
  std::vector<FacilityId> l;
  ClientRange core_clients;

  bool operator==(const CoreIndex&) const = default;
};

/// The canonical core client set {0, ..., U*t}, shared by every (k, l).
ClientRange canonical_client_set(const Instance& inst);

/// Sorts k and l, attaches the canonical client set and validates.
CoreIndex make_core_index(const Instance& inst, std::vector<FacilityId> k,
                          std::vector<FacilityId> l);

/// Throws Error when sizes, disjointness, ranges or the client set do not
/// match inst.
void validate_core_index(const Instance& inst, const CoreIndex& index);

/// Facility role of i with respect to one core index.
enum class Role : std::uint8_t { k, l, outside };

std::vector<Role> facility_roles(const Instance& inst, const CoreIndex& index);

}  // namespace cflgap
