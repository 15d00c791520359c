#include "cflgap/instance.hpp"

#include <sstream>

namespace cflgap {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw Error(Error::Kind::invalid_argument, "instance size overflows 64-bit counts");
  }
  return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw Error(Error::Kind::invalid_argument, "instance size overflows 64-bit counts");
  }
  return r;
}

std::string str(const Rational& r) { return to_string(r); }
std::string str(const BigInt& z) { return z.get_str(); }
std::string str(std::uint64_t v) { return std::to_string(v); }

}  // namespace

Rational FamilyParams::x_k() const {
  return (Rational(1) - make_rational(t) * x_l) / make_rational(t);
}

const FamilyParams& Instance::params() const {
  if (!family) throw Error(Error::Kind::precondition, "instance has no family parameters");
  return *family;
}

Instance build_family_instance(std::uint64_t t, std::uint64_t a) {
  if (t < 1) throw Error(Error::Kind::invalid_argument, "family parameter t must be >= 1");
  if (a < 2) throw Error(Error::Kind::invalid_argument, "family parameter a must be >= 2");
  const std::uint64_t t2 = checked_mul(t, t);
  const std::uint64_t t3 = checked_mul(t2, t);
  const std::uint64_t t4 = checked_mul(t3, t);

  Instance inst;
  inst.facility_count = t2;
  inst.client_count = checked_mul(a, t4);
  inst.capacity = t3;

  FamilyParams p;
  p.t = t;
  p.a = a;
  p.eps = make_rational(10) / make_rational(t2);
  p.x_l = Rational(1) / make_rational(t3);
  p.core_client_count = checked_add(t4, 1);
  inst.family = p;
  return inst;
}

Instance build_general_instance(std::uint64_t facility_count, std::uint64_t t,
                                std::uint64_t capacity, std::uint64_t client_count,
                                const Rational& eps, const Rational& x_l) {
  if (facility_count == 0 || t == 0 || capacity == 0 || client_count == 0) {
    throw Error(Error::Kind::invalid_argument,
                "facility_count, t, capacity and client_count must all be positive");
  }
  Instance inst;
  inst.facility_count = facility_count;
  inst.client_count = client_count;
  inst.capacity = capacity;

  FamilyParams p;
  p.t = t;
  p.eps = eps;
  p.x_l = x_l;
  p.core_client_count = checked_add(checked_mul(capacity, t), 1);
  inst.family = p;
  return inst;
}

std::vector<ParamViolation> validate_params(const Instance& inst) {
  std::vector<ParamViolation> out;
  auto report = [&out](std::string condition, std::string detail) {
    out.push_back({std::move(condition), std::move(detail)});
  };

  if (!inst.family) {
    report("family_params", "instance has no family parameters");
    return out;
  }
  const FamilyParams& p = *inst.family;
  const Rational t = make_rational(p.t);
  const Rational U = make_rational(inst.capacity);
  const Rational core = make_rational(p.core_client_count);
  const Rational eps = p.eps;
  const Rational x_l = p.x_l;
  const Rational x_k = p.x_k();

  if (inst.capacity < 1) report("U>=1", "U = " + str(inst.capacity));
  if (p.t < 1) {
    report("t>=1", "t = 0");
    return out;
  }
  if (p.core_client_count != inst.capacity * p.t + 1) {
    report("core=U*t+1", "core_client_count = " + str(p.core_client_count) +
                             ", U*t+1 = " + str(inst.capacity * p.t + 1));
  }
  if (!(sgn(eps) > 0 && eps <= 1)) report("0<eps<=1", "eps = " + str(eps));
  if (sgn(x_l) < 0) report("x_l>=0", "x_l = " + str(x_l));
  if (x_l > eps) report("x_l<=eps", "x_l = " + str(x_l) + ", eps = " + str(eps));
  if (!(sgn(x_k) >= 0 && x_k <= 1)) report("0<=x_k<=1", "x_k = (1-t*x_l)/t = " + str(x_k));

  const bool room_outside = inst.facility_count > 2 * p.t;
  if (!room_outside) {
    report("n_f>2t", "n_f = " + str(inst.facility_count) + ", 2t = " + str(2 * p.t));
  }
  if ((t - 1) * eps > 1) report("(t-1)*eps<=1", "(t-1)*eps = " + str((t - 1) * eps));
  if (t * eps > 1) report("t*eps<=1", "t*eps = " + str(t * eps));
  if (core * x_k > U) {
    report("core*x_k<=U", "core*x_k = " + str(core * x_k) + ", U = " + str(U));
  }
  if (core * x_l > U * eps) {
    report("core*x_l<=U*eps", "core*x_l = " + str(core * x_l) + ", U*eps = " + str(U * eps));
  }
  if (p.core_client_count > inst.client_count) {
    report("core<=m", "core_client_count = " + str(p.core_client_count) +
                          ", m = " + str(inst.client_count));
    return out;
  }
  if (!room_outside) return out;

  const std::uint64_t rest = inst.client_count - p.core_client_count;
  const std::uint64_t outside = inst.facility_count - 2 * p.t;
  const Rational N = make_rational(rest);
  if (N / make_rational(outside) > U) {
    report("(m-core)/(n_f-2t)<=U",
           "(m-core)/(n_f-2t) = " + str(N / make_rational(outside)) + ", U = " + str(U));
  }
  if (rest > inst.capacity * (outside - 1)) {
    report("m-core<=U*(n_f-2t-1)", "m-core = " + str(rest) +
                                       ", U*(n_f-2t-1) = " + str(inst.capacity * (outside - 1)));
  }

  // Slot branches of the rounding experiments; only meaningful once the
  // probabilities themselves are in range.
  if (!out.empty()) return out;

  auto step1 = [&](const std::string& who, const Rational& w) {
    const BigInt lo = floor(w);
    const BigInt hi = ceil(w);
    if (hi > inst.capacity) {
      report("slots:" + who, "ceil(w) = " + str(hi) + " > U = " + str(U));
    }
    const BigInt k_hi = ceil((core - Rational(lo)) / t);
    if (k_hi > inst.capacity) {
      report("slots:k-after-" + who,
             "ceil((core-floor(w))/t) = " + str(k_hi) + " > U = " + str(U));
    }
  };
  step1("l", core * x_l / eps);
  const Rational pivot_prob = 1 - (t - 1) * eps;
  if (sgn(pivot_prob) > 0) step1("pivot-l", core * x_l / pivot_prob);

  const Rational w_out = N / make_rational(outside) / (t * eps);
  const BigInt out_lo = floor(w_out);
  const BigInt out_hi = ceil(w_out);
  if (out_hi > inst.capacity || out_hi > rest) {
    report("slots:pivot-outside",
           "ceil(w) = " + str(out_hi) + ", U = " + str(U) + ", pool = " + str(rest));
  }
  const std::uint64_t bins = outside - 1;
  if (bins == 0) {
    if (rest != 0) report("slots:outside-bins", "no remaining outside facility for " + str(rest) + " clients");
  } else {
    const Rational b = make_rational(bins);
    const BigInt after = ceil((N - Rational(out_lo)) / b);
    if (after > inst.capacity) {
      report("slots:outside-after-pivot", "ceil((m-core-floor(w))/(n_f-2t-1)) = " + str(after));
    }
  }
  return out;
}

void require_valid(const Instance& inst) {
  const auto violations = validate_params(inst);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid family parameters:";
  for (const auto& v : violations) msg << " [" << v.condition << ": " << v.detail << "]";
  throw Error(Error::Kind::precondition, msg.str());
}

}  // namespace cflgap
