#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "cflgap/certify.hpp"

namespace testing {

using namespace cflgap;

inline Rational q(long n, long d = 1) { return make_rational(n, d); }

// The mini instance used throughout: n_f=6, t=2, U=4, m=13, eps=2/5, x_l=1/8.
inline Instance mini() { return build_general_instance(6, 2, 4, 13, q(2, 5), q(1, 8)); }

// Smallest instance the polytope enumerator handles with room to spare.
inline Instance tiny() { return build_general_instance(4, 1, 2, 5, q(1, 2), q(1, 3)); }

inline std::vector<FacilityId> range_ids(FacilityId from, FacilityId to) {
  std::vector<FacilityId> v(to - from);
  std::iota(v.begin(), v.end(), from);
  return v;
}

// Every ordered pair of disjoint t-subsets of {0..n-1}.
inline std::vector<std::pair<std::vector<FacilityId>, std::vector<FacilityId>>> all_cores(
    std::uint32_t n, std::uint32_t t) {
  std::vector<std::pair<std::vector<FacilityId>, std::vector<FacilityId>>> out;
  for (std::uint32_t km = 0; km < (1u << n); ++km) {
    if (static_cast<std::uint32_t>(__builtin_popcount(km)) != t) continue;
    for (std::uint32_t lm = 0; lm < (1u << n); ++lm) {
      if ((lm & km) || static_cast<std::uint32_t>(__builtin_popcount(lm)) != t) continue;
      std::vector<FacilityId> k, l;
      for (std::uint32_t i = 0; i < n; ++i) {
        if (km >> i & 1) k.push_back(i);
        if (lm >> i & 1) l.push_back(i);
      }
      out.emplace_back(k, l);
    }
  }
  return out;
}

// Uniform disjoint (k, l) drawn without reference to the library's samplers.
inline std::pair<std::vector<FacilityId>, std::vector<FacilityId>> random_core(std::uint32_t n,
                                                                               std::uint32_t t,
                                                                               Rng& rng) {
  std::vector<FacilityId> ids = range_ids(0, n);
  rng.shuffle_prefix(std::span<FacilityId>(ids), 2 * t);
  std::vector<FacilityId> k(ids.begin(), ids.begin() + t);
  std::vector<FacilityId> l(ids.begin() + t, ids.begin() + 2 * t);
  std::sort(k.begin(), k.end());
  std::sort(l.begin(), l.end());
  return {k, l};
}

}  // namespace testing
