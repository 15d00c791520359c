#include "cflgap/exact_lp.hpp"

namespace cflgap {

FeasibilityResult solve_nonnegative_system(const std::vector<std::vector<Rational>>& columns,
                                           const std::vector<Rational>& rhs) {
  const std::size_t rows = rhs.size();
  const std::size_t n = columns.size();
  for (const auto& col : columns) {
    if (col.size() != rows) throw Error(Error::Kind::invalid_argument, "column length mismatch");
  }
  // Tableau columns: n structural, `rows` artificial, then the right-hand side.
  const std::size_t width = n + rows + 1;
  const std::size_t rhs_col = n + rows;
  std::vector<std::vector<Rational>> tab(rows, std::vector<Rational>(width));
  std::vector<int> sign(rows, 1);
  for (std::size_t r = 0; r < rows; ++r) {
    sign[r] = sgn(rhs[r]) < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) {
      tab[r][j] = sign[r] < 0 ? Rational(-columns[j][r]) : columns[j][r];
    }
    tab[r][n + r] = 1;
    tab[r][rhs_col] = sign[r] < 0 ? Rational(-rhs[r]) : rhs[r];
  }
  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) basis[r] = n + r;

  // Reduced costs of min sum(artificials); obj[rhs_col] holds -objective.
  std::vector<Rational> obj(width);
  for (std::size_t j = 0; j < width; ++j) {
    if (j >= n && j < rhs_col) continue;
    Rational s = 0;
    for (std::size_t r = 0; r < rows; ++r) s += tab[r][j];
    obj[j] = -s;
  }

  FeasibilityResult result;
  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < rhs_col; ++j) {
      if (sgn(obj[j]) < 0) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;

    std::size_t leave = rows;
    Rational best;
    for (std::size_t r = 0; r < rows; ++r) {
      if (sgn(tab[r][enter]) <= 0) continue;
      Rational ratio = tab[r][rhs_col] / tab[r][enter];
      if (leave == rows || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = std::move(ratio);
      }
    }
    if (leave == rows) {
      // Unbounded below is impossible: the objective is bounded by zero.
      throw Error(Error::Kind::internal, "phase-I simplex reported an unbounded ray");
    }

    const Rational piv = tab[leave][enter];
    for (auto& v : tab[leave]) {
      if (sgn(v) != 0) v /= piv;
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (sgn(row[enter]) == 0) return;
      const Rational factor = row[enter];
      for (std::size_t j = 0; j < width; ++j) {
        if (sgn(tab[leave][j]) != 0) row[j] -= factor * tab[leave][j];
      }
    };
    for (std::size_t r = 0; r < rows; ++r) {
      if (r != leave) eliminate(tab[r]);
    }
    eliminate(obj);
    basis[leave] = enter;
    ++result.pivots;
  }

  if (sgn(obj[rhs_col]) == 0) {
    result.feasible = true;
    result.point.assign(n, Rational(0));
    for (std::size_t r = 0; r < rows; ++r) {
      if (basis[r] < n) result.point[basis[r]] = tab[r][rhs_col];
    }
    return result;
  }
  // Artificial column r has cost 1 and reduced cost 1 - u_r.
  result.farkas.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    Rational u = 1 - obj[n + r];
    result.farkas[r] = sign[r] < 0 ? Rational(-u) : u;
  }
  return result;
}

}  // namespace cflgap
