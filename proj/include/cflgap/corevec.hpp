#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cflgap/core_index.hpp"

namespace cflgap {

/// One coordinate of a (y, x) point: y_i when `is_x` is false, else x_ij.
struct Coordinate {
  bool is_x = false;
  FacilityId facility = 0;
  ClientId client = 0;

  bool operator==(const Coordinate&) const = default;
};

std::string describe(const Coordinate& c);

/// Exact point (y, x) in [0,1]^{n_f + n_f*m}.
///
/// Storage is a partition into cells. Facilities carry a class label, clients
/// fall into intervals delimited by sorted cut points, and every coordinate of
/// a cell shares one value. A dense vector is the finest partition: each
/// facility its own class and each client its own interval. Core vectors of
/// the family at t = 10 have two million coordinates but six cells.
class FracVector {
 public:
  enum class Repr { dense, classed };

  /// `x_values` is row-major over (facility class, client interval).
  static FracVector classed(std::uint64_t facility_count, std::uint64_t client_count,
                            std::vector<std::uint32_t> facility_class,
                            std::vector<ClientId> client_cuts, std::vector<Rational> y_values,
                            std::vector<Rational> x_values);

  static FracVector dense(std::uint64_t facility_count, std::uint64_t client_count,
                          std::vector<Rational> y, std::vector<Rational> x);

  std::uint64_t facility_count() const { return facility_class_.size(); }
  std::uint64_t client_count() const { return client_count_; }
  std::uint64_t dimension() const { return facility_count() * (1 + client_count_); }
  Repr repr() const { return repr_; }

  const Rational& y(FacilityId i) const;
  const Rational& x(FacilityId i, ClientId j) const;
  const Rational& at(const Coordinate& c) const;

  std::uint32_t class_count() const { return static_cast<std::uint32_t>(y_values_.size()); }
  std::uint32_t facility_class(FacilityId i) const { return facility_class_.at(i); }
  const std::vector<std::uint32_t>& facility_classes() const { return facility_class_; }
  std::uint64_t class_size(std::uint32_t c) const { return class_size_.at(c); }
  FacilityId class_representative(std::uint32_t c) const { return class_rep_.at(c); }

  const std::vector<ClientId>& client_cuts() const { return client_cuts_; }
  std::uint64_t interval_count() const { return client_cuts_.size() + 1; }
  std::uint64_t interval_of(ClientId j) const;
  ClientId interval_begin(std::uint64_t iv) const { return iv == 0 ? 0 : client_cuts_[iv - 1]; }
  ClientId interval_end(std::uint64_t iv) const {
    return iv == client_cuts_.size() ? client_count_ : client_cuts_[iv];
  }

  const Rational& y_class(std::uint32_t c) const { return y_values_.at(c); }
  const Rational& x_cell(std::uint32_t c, std::uint64_t iv) const {
    return x_values_.at(c * interval_count() + iv);
  }

  /// Finest-partition copy. Refuses more than max_coordinates coordinates.
  FracVector to_dense(std::uint64_t max_coordinates = 1'000'000) const;

 private:
  FracVector() = default;
  void finish();

  std::uint64_t client_count_ = 0;
  Repr repr_ = Repr::classed;
  std::vector<std::uint32_t> facility_class_;
  std::vector<std::uint64_t> class_size_;
  std::vector<FacilityId> class_rep_;
  std::vector<ClientId> client_cuts_;
  std::vector<Rational> y_values_;
  std::vector<Rational> x_values_;
};

/// Common refinement of two cell partitions over the same dimensions.
struct Refinement {
  std::vector<std::uint32_t> facility_class;
  std::vector<FacilityId> representative;  // per refined class
  std::vector<ClientId> client_cuts;
};

Refinement refine(const FracVector& a, const FracVector& b);

/// First coordinate where a and b differ, checking one representative per
/// cell of the common refinement (hence every coordinate). nullopt = equal.
std::optional<Coordinate> first_difference(const FracVector& a, const FracVector& b);

/// Core vector s_{k,l}: y = 1 on k, eps on l, 1 elsewhere; core clients take
/// x_k from k and x_l from l; other clients take 1/(n_f - 2t) from each
/// facility outside k and l. Classed representation.
FracVector make_core_vector(const Instance& inst, const CoreIndex& index);
FracVector make_core_vector(const Instance& inst, std::vector<FacilityId> k,
                            std::vector<FacilityId> l);

/// l1 \ (k2 u l2) and l2 \ (k1 u l1) both nonempty.
bool collides(const CoreIndex& a, const CoreIndex& b);

struct LpViolation {
  /// "assignment" (sum_i x_ij = 1), "x>=0", "x<=y", "y<=1", "y>=0",
  /// or "capacity" (sum_j d_j x_ij <= U y_i).
  std::string constraint;
  Coordinate at;
  Rational lhs;
  Rational rhs;
  /// rhs - lhs; negative (or nonzero for "assignment") means violated.
  Rational slack;
};

struct LpReport {
  std::vector<LpViolation> violations;
  bool pass() const { return violations.empty(); }
};

/// Natural relaxation: sum_i x_ij = 1 for all j; 0 <= x_ij <= y_i <= 1;
/// sum_j x_ij <= U y_i. Evaluated once per cell.
LpReport check_natural_lp(const Instance& inst, const FracVector& v);

/// Coordinatewise exact average.
FracVector midpoint(const FracVector& a, const FracVector& b);

}  // namespace cflgap
