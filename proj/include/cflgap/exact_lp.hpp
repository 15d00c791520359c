#pragma once

#include <vector>

#include "cflgap/rational.hpp"

namespace cflgap {

/// Outcome of deciding { z >= 0 : A z = b } exactly.
struct FeasibilityResult {
  bool feasible = false;
  /// A point z (one entry per column) when feasible.
  std::vector<Rational> point;
  /// When infeasible: u with u^T A_j <= 0 for every column and u^T b > 0.
  std::vector<Rational> farkas;
  std::uint64_t pivots = 0;
};

/// Phase-I primal simplex on a dense rational tableau with Bland's rule, so it
/// terminates on degenerate systems. `columns[j]` is column j of A.
FeasibilityResult solve_nonnegative_system(const std::vector<std::vector<Rational>>& columns,
                                           const std::vector<Rational>& rhs);

}  // namespace cflgap
