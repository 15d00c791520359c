#include "cflgap/core_index.hpp"

#include <algorithm>

namespace cflgap {

ClientRange canonical_client_set(const Instance& inst) {
  const auto& p = inst.params();
  return ClientRange{0, p.core_client_count};
}

CoreIndex make_core_index(const Instance& inst, std::vector<FacilityId> k,
                          std::vector<FacilityId> l) {
  std::sort(k.begin(), k.end());
  std::sort(l.begin(), l.end());
  CoreIndex index{std::move(k), std::move(l), canonical_client_set(inst)};
  validate_core_index(inst, index);
  return index;
}

void validate_core_index(const Instance& inst, const CoreIndex& index) {
  const auto& p = inst.params();
  auto fail = [](const std::string& msg) {
    throw Error(Error::Kind::invalid_argument, "invalid core index: " + msg);
  };
  if (index.k.size() != p.t || index.l.size() != p.t) {
    fail("|k| = " + std::to_string(index.k.size()) + ", |l| = " + std::to_string(index.l.size()) +
         ", expected t = " + std::to_string(p.t));
  }
  for (const auto* set : {&index.k, &index.l}) {
    if (!std::is_sorted(set->begin(), set->end())) fail("facility sets must be sorted");
    if (std::adjacent_find(set->begin(), set->end()) != set->end()) fail("repeated facility id");
    if (!set->empty() && set->back() >= inst.facility_count) {
      fail("facility id " + std::to_string(set->back()) + " out of range");
    }
  }
  std::vector<FacilityId> common;
  std::set_intersection(index.k.begin(), index.k.end(), index.l.begin(), index.l.end(),
                        std::back_inserter(common));
  if (!common.empty()) fail("k and l overlap at facility " + std::to_string(common.front()));
  if (index.core_clients.size() != p.core_client_count ||
      index.core_clients.end > inst.client_count) {
    fail("core client set must hold U*t+1 = " + std::to_string(p.core_client_count) + " clients");
  }
}

std::vector<Role> facility_roles(const Instance& inst, const CoreIndex& index) {
  std::vector<Role> roles(inst.facility_count, Role::outside);
  for (FacilityId i : index.k) roles[i] = Role::k;
  for (FacilityId i : index.l) roles[i] = Role::l;
  return roles;
}

}  // namespace cflgap
