#include "cflgap/corevec.hpp"

#include <algorithm>
#include <map>

namespace cflgap {

std::string describe(const Coordinate& c) {
  if (!c.is_x) return "y[" + std::to_string(c.facility) + "]";
  return "x[" + std::to_string(c.facility) + "][" + std::to_string(c.client) + "]";
}

namespace {

void check_unit(const Rational& v, const char* what) {
  if (sgn(v) < 0 || v > 1) {
    throw Error(Error::Kind::invalid_argument,
                std::string(what) + " entry " + to_string(v) + " outside [0,1]");
  }
}

}  // namespace

FracVector FracVector::classed(std::uint64_t facility_count, std::uint64_t client_count,
                               std::vector<std::uint32_t> facility_class,
                               std::vector<ClientId> client_cuts, std::vector<Rational> y_values,
                               std::vector<Rational> x_values) {
  if (facility_count == 0 || client_count == 0) {
    throw Error(Error::Kind::invalid_argument, "vector needs at least one facility and client");
  }
  if (facility_class.size() != facility_count) {
    throw Error(Error::Kind::invalid_argument, "facility class map has wrong length");
  }
  for (std::size_t c = 0; c < client_cuts.size(); ++c) {
    if (client_cuts[c] == 0 || client_cuts[c] >= client_count ||
        (c > 0 && client_cuts[c] <= client_cuts[c - 1])) {
      throw Error(Error::Kind::invalid_argument, "client cuts must increase strictly inside (0, m)");
    }
  }
  if (x_values.size() != y_values.size() * (client_cuts.size() + 1)) {
    throw Error(Error::Kind::invalid_argument, "x table does not match classes x intervals");
  }
  for (const auto& v : y_values) check_unit(v, "y");
  for (const auto& v : x_values) check_unit(v, "x");

  FracVector out;
  out.client_count_ = client_count;
  out.facility_class_ = std::move(facility_class);
  out.client_cuts_ = std::move(client_cuts);
  out.y_values_ = std::move(y_values);
  out.x_values_ = std::move(x_values);
  out.finish();
  return out;
}

FracVector FracVector::dense(std::uint64_t facility_count, std::uint64_t client_count,
                             std::vector<Rational> y, std::vector<Rational> x) {
  if (y.size() != facility_count || x.size() != facility_count * client_count) {
    throw Error(Error::Kind::invalid_argument, "dense vector dimensions do not match");
  }
  std::vector<std::uint32_t> classes(facility_count);
  for (std::uint64_t i = 0; i < facility_count; ++i) classes[i] = static_cast<std::uint32_t>(i);
  std::vector<ClientId> cuts;
  for (ClientId j = 1; j < client_count; ++j) cuts.push_back(j);
  FracVector out = classed(facility_count, client_count, std::move(classes), std::move(cuts),
                           std::move(y), std::move(x));
  out.repr_ = Repr::dense;
  return out;
}

void FracVector::finish() {
  const std::size_t classes = y_values_.size();
  class_size_.assign(classes, 0);
  class_rep_.assign(classes, 0);
  for (std::size_t i = facility_class_.size(); i-- > 0;) {
    const std::uint32_t c = facility_class_[i];
    if (c >= classes) throw Error(Error::Kind::invalid_argument, "facility class label out of range");
    ++class_size_[c];
    class_rep_[c] = static_cast<FacilityId>(i);
  }
  for (std::size_t c = 0; c < classes; ++c) {
    if (class_size_[c] == 0) throw Error(Error::Kind::invalid_argument, "empty facility class");
  }
}

std::uint64_t FracVector::interval_of(ClientId j) const {
  return static_cast<std::uint64_t>(
      std::upper_bound(client_cuts_.begin(), client_cuts_.end(), j) - client_cuts_.begin());
}

const Rational& FracVector::y(FacilityId i) const { return y_values_[facility_class_.at(i)]; }

const Rational& FracVector::x(FacilityId i, ClientId j) const {
  if (j >= client_count_) throw Error(Error::Kind::invalid_argument, "client id out of range");
  return x_cell(facility_class_.at(i), interval_of(j));
}

const Rational& FracVector::at(const Coordinate& c) const {
  return c.is_x ? x(c.facility, c.client) : y(c.facility);
}

FracVector FracVector::to_dense(std::uint64_t max_coordinates) const {
  if (dimension() > max_coordinates) {
    throw Error(Error::Kind::precondition, "vector too large to materialize densely");
  }
  const std::uint64_t nf = facility_count();
  std::vector<Rational> yd(nf);
  std::vector<Rational> xd(nf * client_count_);
  for (FacilityId i = 0; i < nf; ++i) {
    yd[i] = y(i);
    const std::uint32_t c = facility_class_[i];
    for (std::uint64_t iv = 0; iv < interval_count(); ++iv) {
      for (ClientId j = interval_begin(iv); j < interval_end(iv); ++j) {
        xd[i * client_count_ + j] = x_cell(c, iv);
      }
    }
  }
  return dense(nf, client_count_, std::move(yd), std::move(xd));
}

Refinement refine(const FracVector& a, const FracVector& b) {
  if (a.facility_count() != b.facility_count() || a.client_count() != b.client_count()) {
    throw Error(Error::Kind::invalid_argument, "vector dimensions differ");
  }
  Refinement r;
  r.facility_class.resize(a.facility_count());
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> ids;
  for (FacilityId i = 0; i < a.facility_count(); ++i) {
    const auto key = std::make_pair(a.facility_class(i), b.facility_class(i));
    auto [it, inserted] = ids.emplace(key, static_cast<std::uint32_t>(r.representative.size()));
    if (inserted) r.representative.push_back(i);
    r.facility_class[i] = it->second;
  }
  std::set_union(a.client_cuts().begin(), a.client_cuts().end(), b.client_cuts().begin(),
                 b.client_cuts().end(), std::back_inserter(r.client_cuts));
  return r;
}

std::optional<Coordinate> first_difference(const FracVector& a, const FracVector& b) {
  const Refinement r = refine(a, b);
  const std::uint64_t intervals = r.client_cuts.size() + 1;
  for (FacilityId i : r.representative) {
    if (a.y(i) != b.y(i)) return Coordinate{false, i, 0};
    for (std::uint64_t iv = 0; iv < intervals; ++iv) {
      const ClientId j = iv == 0 ? 0 : r.client_cuts[iv - 1];
      if (a.x(i, j) != b.x(i, j)) return Coordinate{true, i, j};
    }
  }
  return std::nullopt;
}

FracVector midpoint(const FracVector& a, const FracVector& b) {
  Refinement r = refine(a, b);
  const std::uint64_t intervals = r.client_cuts.size() + 1;
  std::vector<Rational> yv;
  std::vector<Rational> xv;
  yv.reserve(r.representative.size());
  xv.reserve(r.representative.size() * intervals);
  for (FacilityId i : r.representative) {
    yv.push_back((a.y(i) + b.y(i)) / 2);
    for (std::uint64_t iv = 0; iv < intervals; ++iv) {
      const ClientId j = iv == 0 ? 0 : r.client_cuts[iv - 1];
      xv.push_back((a.x(i, j) + b.x(i, j)) / 2);
    }
  }
  FracVector out = FracVector::classed(a.facility_count(), a.client_count(),
                                       std::move(r.facility_class), std::move(r.client_cuts),
                                       std::move(yv), std::move(xv));
  if (a.repr() == FracVector::Repr::dense && b.repr() == FracVector::Repr::dense) {
    return out.to_dense();
  }
  return out;
}

FracVector make_core_vector(const Instance& inst, const CoreIndex& index) {
  require_valid(inst);
  validate_core_index(inst, index);
  const FamilyParams& p = inst.params();
  const std::vector<Role> roles = facility_roles(inst, index);

  // Compact labels for the roles present, in the order k, l, outside.
  std::uint32_t label[3] = {0, 0, 0};
  bool present[3] = {false, false, false};
  for (Role r : roles) present[static_cast<int>(r)] = true;
  std::vector<Role> class_role;
  for (int r = 0; r < 3; ++r) {
    if (present[r]) {
      label[r] = static_cast<std::uint32_t>(class_role.size());
      class_role.push_back(static_cast<Role>(r));
    }
  }
  std::vector<std::uint32_t> classes(roles.size());
  for (std::size_t i = 0; i < roles.size(); ++i) classes[i] = label[static_cast<int>(roles[i])];

  std::vector<ClientId> cuts;
  for (ClientId c : {index.core_clients.begin, index.core_clients.end}) {
    if (c > 0 && c < inst.client_count) cuts.push_back(c);
  }
  // Client intervals: [0, begin) non-core, [begin, end) core, [end, m) non-core,
  // with empty ones dropped by the cut filter above.
  std::vector<bool> interval_is_core;
  {
    ClientId start = 0;
    for (std::size_t iv = 0; iv <= cuts.size(); ++iv) {
      interval_is_core.push_back(index.core_clients.contains(start));
      if (iv < cuts.size()) start = cuts[iv];
    }
  }

  const Rational outside_share = Rational(1) / make_rational(inst.facility_count - 2 * p.t);
  std::vector<Rational> yv;
  std::vector<Rational> xv;
  for (Role r : class_role) {
    yv.push_back(r == Role::l ? p.eps : Rational(1));
    for (bool core : interval_is_core) {
      switch (r) {
        case Role::k: xv.push_back(core ? p.x_k() : Rational(0)); break;
        case Role::l: xv.push_back(core ? p.x_l : Rational(0)); break;
        case Role::outside: xv.push_back(core ? Rational(0) : outside_share); break;
      }
    }
  }
  return FracVector::classed(inst.facility_count, inst.client_count, std::move(classes),
                             std::move(cuts), std::move(yv), std::move(xv));
}

FracVector make_core_vector(const Instance& inst, std::vector<FacilityId> k,
                            std::vector<FacilityId> l) {
  return make_core_vector(inst, make_core_index(inst, std::move(k), std::move(l)));
}

namespace {

bool escapes(const std::vector<FacilityId>& l, const std::vector<FacilityId>& k2,
             const std::vector<FacilityId>& l2) {
  for (FacilityId f : l) {
    if (!std::binary_search(k2.begin(), k2.end(), f) && !std::binary_search(l2.begin(), l2.end(), f)) {
      return true;
    }
  }
  return false;
}

}  // namespace

bool collides(const CoreIndex& a, const CoreIndex& b) {
  return escapes(a.l, b.k, b.l) && escapes(b.l, a.k, a.l);
}

LpReport check_natural_lp(const Instance& inst, const FracVector& v) {
  if (v.facility_count() != inst.facility_count || v.client_count() != inst.client_count) {
    throw Error(Error::Kind::invalid_argument, "vector does not match instance dimensions");
  }
  LpReport report;
  auto add = [&report](std::string what, Coordinate at, Rational lhs, Rational rhs) {
    Rational slack = rhs - lhs;
    report.violations.push_back({std::move(what), at, std::move(lhs), std::move(rhs), std::move(slack)});
  };
  const std::uint64_t intervals = v.interval_count();
  const Rational U = make_rational(inst.capacity);

  for (std::uint32_t c = 0; c < v.class_count(); ++c) {
    const FacilityId rep = v.class_representative(c);
    const Rational& y = v.y_class(c);
    if (sgn(y) < 0) add("y>=0", {false, rep, 0}, Rational(0), y);
    if (y > 1) add("y<=1", {false, rep, 0}, y, Rational(1));
    Rational load = 0;
    for (std::uint64_t iv = 0; iv < intervals; ++iv) {
      const Rational& x = v.x_cell(c, iv);
      const Coordinate at{true, rep, v.interval_begin(iv)};
      if (sgn(x) < 0) add("x>=0", at, Rational(0), x);
      if (x > y) add("x<=y", at, x, y);
      load += make_rational(v.interval_end(iv) - v.interval_begin(iv)) * x;
    }
    if (load > U * y) add("capacity", {false, rep, 0}, load, U * y);
  }
  for (std::uint64_t iv = 0; iv < intervals; ++iv) {
    Rational mass = 0;
    for (std::uint32_t c = 0; c < v.class_count(); ++c) {
      mass += make_rational(v.class_size(c)) * v.x_cell(c, iv);
    }
    if (mass != 1) add("assignment", {true, 0, v.interval_begin(iv)}, mass, Rational(1));
  }
  return report;
}

}  // namespace cflgap
