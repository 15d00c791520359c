#include "cflgap/polytope.hpp"

#include "cflgap/exact_lp.hpp"

namespace cflgap {

namespace {

void assign_clients(const Instance& inst, const std::vector<FacilityId>& open_ids, ClientId j,
                    std::vector<std::uint64_t>& load, IntSolution& current,
                    std::vector<IntSolution>& out) {
  if (j == inst.client_count) {
    out.push_back(current);
    return;
  }
  for (FacilityId i : open_ids) {
    if (load[i] + inst.demand(j) > inst.capacity) continue;
    load[i] += inst.demand(j);
    current.assign[j] = i;
    assign_clients(inst, open_ids, j + 1, load, current, out);
    load[i] -= inst.demand(j);
  }
}

}  // namespace

std::vector<IntSolution> enumerate_integer_solutions(const Instance& inst,
                                                     const EnumerationBounds& bounds) {
  if (inst.facility_count == 0 || inst.facility_count > bounds.max_facilities ||
      inst.client_count > bounds.max_clients) {
    throw Error(Error::Kind::precondition,
                "instance exceeds the enumeration bound (n_f <= " + std::to_string(bounds.max_facilities) +
                    ", m <= " + std::to_string(bounds.max_clients) + ")");
  }
  std::vector<IntSolution> out;
  const std::uint64_t nf = inst.facility_count;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nf); ++mask) {
    IntSolution current;
    current.open.assign(nf, false);
    current.assign.assign(inst.client_count, 0);
    std::vector<FacilityId> open_ids;
    for (FacilityId i = 0; i < nf; ++i) {
      if (mask >> i & 1) {
        current.open[i] = true;
        open_ids.push_back(i);
      }
    }
    std::vector<std::uint64_t> load(nf, 0);
    assign_clients(inst, open_ids, 0, load, current, out);
  }
  return out;
}

std::vector<Rational> solution_point(const IntSolution& sol) {
  const std::size_t nf = sol.open.size();
  const std::size_t m = sol.assign.size();
  std::vector<Rational> z(nf + nf * m, Rational(0));
  for (std::size_t i = 0; i < nf; ++i) {
    if (sol.open[i]) z[i] = 1;
  }
  for (std::size_t j = 0; j < m; ++j) z[nf + sol.assign[j] * m + j] = 1;
  return z;
}

std::vector<Rational> vector_point(const FracVector& v) {
  const std::uint64_t nf = v.facility_count();
  const std::uint64_t m = v.client_count();
  std::vector<Rational> z;
  z.reserve(v.dimension());
  for (FacilityId i = 0; i < nf; ++i) z.push_back(v.y(i));
  for (FacilityId i = 0; i < nf; ++i) {
    for (ClientId j = 0; j < m; ++j) z.push_back(v.x(i, j));
  }
  return z;
}

MembershipResult membership_lp(const FracVector& v, const std::vector<IntSolution>& solutions) {
  if (solutions.empty()) throw Error(Error::Kind::invalid_argument, "membership_lp needs at least one solution");
  std::vector<Rational> rhs = vector_point(v);
  const std::size_t dim = rhs.size();
  rhs.push_back(1);

  std::vector<std::vector<Rational>> columns;
  columns.reserve(solutions.size());
  for (const auto& s : solutions) {
    if (s.open.size() != v.facility_count() || s.assign.size() != v.client_count()) {
      throw Error(Error::Kind::invalid_argument, "solution dimensions do not match the vector");
    }
    auto col = solution_point(s);
    col.push_back(1);
    columns.push_back(std::move(col));
  }

  const FeasibilityResult lp = solve_nonnegative_system(columns, rhs);
  MembershipResult out;
  out.member = lp.feasible;
  if (lp.feasible) {
    for (std::size_t s = 0; s < lp.point.size(); ++s) {
      if (sgn(lp.point[s]) > 0) out.weights.emplace_back(s, lp.point[s]);
    }
    return out;
  }
  // u^T (z_s, 1) <= 0 for every solution and u^T (v, 1) > 0.
  SeparatingInequality ineq;
  ineq.coefficients.assign(lp.farkas.begin(), lp.farkas.begin() + static_cast<std::ptrdiff_t>(dim));
  ineq.offset = -lp.farkas[dim];
  out.separating = std::move(ineq);
  return out;
}

bool verify_membership(const MembershipResult& result, const FracVector& v,
                       const std::vector<IntSolution>& solutions) {
  const std::vector<Rational> target = vector_point(v);
  if (result.member) {
    if (result.separating) return false;
    std::vector<Rational> combo(target.size(), Rational(0));
    Rational total = 0;
    for (const auto& [idx, w] : result.weights) {
      if (idx >= solutions.size() || sgn(w) < 0) return false;
      total += w;
      const auto z = solution_point(solutions[idx]);
      if (z.size() != combo.size()) return false;
      for (std::size_t c = 0; c < z.size(); ++c) {
        if (sgn(z[c]) != 0) combo[c] += w * z[c];
      }
    }
    return total == 1 && combo == target;
  }
  if (!result.separating) return false;
  const auto& ineq = *result.separating;
  if (ineq.coefficients.size() != target.size()) return false;
  auto lhs = [&ineq](const std::vector<Rational>& z) {
    Rational s = 0;
    for (std::size_t c = 0; c < z.size(); ++c) {
      if (sgn(z[c]) != 0) s += ineq.coefficients[c] * z[c];
    }
    return s;
  };
  for (const auto& s : solutions) {
    if (lhs(solution_point(s)) > ineq.offset) return false;
  }
  return lhs(target) > ineq.offset;
}

Rational solution_cost(const CostVector& cost, const IntSolution& sol) {
  if (sol.open.size() != cost.facility_count() || sol.assign.size() != cost.client_count()) {
    throw Error(Error::Kind::invalid_argument, "solution does not match cost dimensions");
  }
  Rational total = 0;
  for (FacilityId i = 0; i < sol.open.size(); ++i) {
    if (sol.open[i]) total += cost.opening(i);
  }
  if (const auto* tp = cost.two_point_sites()) {
    // Cross-site pairs cost 1; counting them avoids a rational per client.
    std::uint64_t cross = 0;
    for (ClientId j = 0; j < sol.assign.size(); ++j) {
      if (tp->facility_near[sol.assign[j]] != tp->near_clients.contains(j)) ++cross;
    }
    return total + make_rational(cross);
  }
  for (ClientId j = 0; j < sol.assign.size(); ++j) total += cost.connection(sol.assign[j], j);
  return total;
}

OptResult brute_force_opt(const Instance& inst, const CostVector& cost,
                          const EnumerationBounds& bounds) {
  const auto solutions = enumerate_integer_solutions(inst, bounds);
  if (solutions.empty()) throw Error(Error::Kind::precondition, "instance has no feasible integer solution");
  std::size_t best = 0;
  Rational best_value = solution_cost(cost, solutions[0]);
  for (std::size_t s = 1; s < solutions.size(); ++s) {
    Rational c = solution_cost(cost, solutions[s]);
    if (c < best_value) {
      best_value = std::move(c);
      best = s;
    }
  }
  return OptResult{best_value, solutions[best]};
}

}  // namespace cflgap
