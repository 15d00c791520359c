#include "cflgap/certify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace cflgap {

CoreShape core_shape(const Instance& inst) {
  return CoreShape{inst.facility_count, inst.params().t};
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  BigInt out;
  if (k > n) return BigInt(0);
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

BigInt core_size(const CoreShape& s) {
  if (2 * s.t > s.facility_count) return BigInt(0);
  return binomial(s.facility_count, s.t) * binomial(s.facility_count - s.t, s.t);
}

NoncollidingCount noncolliding_count_exact(const CoreShape& s) {
  const std::uint64_t n = s.facility_count;
  const std::uint64_t t = s.t;
  NoncollidingCount out{BigInt(0), BigInt(0), BigInt(0)};
  if (2 * t > n) return out;

  // e1: pick l' inside the 2t facilities of k u l, then k' anywhere else.
  out.e1 = binomial(2 * t, t) * binomial(n - t, t);

  // e2: a members of l land in k', the other t - a in l'. k' fills its
  // remaining t - a slots outside l; l' fills its remaining a slots outside
  // l u k'.
  for (std::uint64_t a = 0; a <= t; ++a) {
    out.e2 += binomial(t, a) * binomial(n - t, t - a) * binomial(n - 2 * t + a, a);
  }

  // both: b = |l' n l|, the other t - b members of l' lie in k. The t - b
  // members of l outside l' must sit in k'; k' picks b more outside l u l'.
  for (std::uint64_t b = 0; b <= t; ++b) {
    out.both += binomial(t, b) * binomial(t, t - b) * binomial(n - 2 * t + b, b);
  }
  return out;
}

namespace {

bool next_combination(std::vector<std::uint32_t>& c, std::uint32_t n) {
  const std::size_t k = c.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

CoreIndex default_reference(const CoreShape& s) {
  CoreIndex ref;
  for (FacilityId i = 0; i < s.t; ++i) {
    ref.k.push_back(i);
    ref.l.push_back(static_cast<FacilityId>(s.t + i));
  }
  return ref;
}

}  // namespace

EnumeratedCensus noncolliding_count_enumerated(const CoreShape& s, std::optional<CoreIndex> reference,
                                               std::uint64_t max_pairs) {
  const BigInt size = core_size(s);
  if (size > to_bigint(max_pairs)) {
    throw Error(Error::Kind::precondition,
                "core has " + size.get_str() + " members, above the enumeration bound " + std::to_string(max_pairs));
  }
  const CoreIndex ref = reference ? *reference : default_reference(s);
  if (ref.k.size() != s.t || ref.l.size() != s.t) {
    throw Error(Error::Kind::invalid_argument, "reference core index does not match the shape");
  }
  const std::uint32_t n = static_cast<std::uint32_t>(s.facility_count);
  std::vector<bool> in_kl(n, false), in_l(n, false);
  for (FacilityId i : ref.k) in_kl.at(i) = true;
  for (FacilityId i : ref.l) {
    in_kl.at(i) = true;
    in_l.at(i) = true;
  }

  EnumeratedCensus out;
  if (2 * s.t > s.facility_count) return out;
  const std::uint32_t t = static_cast<std::uint32_t>(s.t);
  std::vector<std::uint32_t> kc(t);
  std::iota(kc.begin(), kc.end(), 0u);
  std::vector<std::uint32_t> rest;
  std::vector<bool> in_k2(n);
  do {
    rest.clear();
    std::fill(in_k2.begin(), in_k2.end(), false);
    for (auto i : kc) in_k2[i] = true;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (!in_k2[i]) rest.push_back(i);
    }
    std::vector<std::uint32_t> lc(t);
    std::iota(lc.begin(), lc.end(), 0u);
    do {
      ++out.members;
      bool l2_inside = true;  // l' subset of k u l
      std::uint32_t l_covered = 0;
      for (auto idx : lc) {
        const std::uint32_t f = rest[idx];
        if (!in_kl[f]) l2_inside = false;
        if (in_l[f]) ++l_covered;
      }
      for (auto f : kc) {
        if (in_l[f]) ++l_covered;
      }
      if (l2_inside || l_covered == t) ++out.noncolliding;
    } while (t > 0 && next_combination(lc, static_cast<std::uint32_t>(rest.size())));
  } while (t > 0 && next_combination(kc, n));
  return out;
}

McEstimate noncolliding_prob_mc(const CoreShape& s, std::uint64_t samples, std::uint64_t seed,
                                unsigned jobs) {
  if (samples == 0) throw Error(Error::Kind::invalid_argument, "Monte Carlo needs at least one sample");
  if (2 * s.t > s.facility_count) throw Error(Error::Kind::invalid_argument, "core is empty for this shape");
  constexpr std::uint64_t chunk = 4096;
  const std::uint64_t chunks = (samples + chunk - 1) / chunk;
  const std::uint32_t n = static_cast<std::uint32_t>(s.facility_count);
  const std::uint32_t t = static_cast<std::uint32_t>(s.t);

  std::vector<std::uint64_t> chunk_hits(chunks, 0);
  auto work = [&](std::uint64_t first_chunk, std::uint64_t stride) {
    std::vector<std::uint32_t> perm(n);
    for (std::uint64_t c = first_chunk; c < chunks; c += stride) {
      Rng rng(derive_seed(seed, c));
      std::iota(perm.begin(), perm.end(), 0u);
      const std::uint64_t count = std::min(chunk, samples - c * chunk);
      std::uint64_t hits = 0;
      for (std::uint64_t d = 0; d < count; ++d) {
        rng.shuffle_prefix(std::span<std::uint32_t>(perm), 2 * t);
        // Reference: k = {0..t-1}, l = {t..2t-1}; k' = perm[0..t), l' = perm[t..2t).
        bool l2_inside = true;
        std::uint32_t l_covered = 0;
        for (std::uint32_t a = 0; a < 2 * t; ++a) {
          const std::uint32_t f = perm[a];
          if (a >= t && f >= 2 * t) l2_inside = false;
          if (f >= t && f < 2 * t) ++l_covered;
        }
        if (l2_inside || l_covered == t) ++hits;
      }
      chunk_hits[c] = hits;
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(chunks)));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    for (auto& th : pool) th.join();
  }

  McEstimate out;
  out.samples = samples;
  out.seed = seed;
  out.hits = std::accumulate(chunk_hits.begin(), chunk_hits.end(), std::uint64_t{0});
  const double N = static_cast<double>(samples);
  const double p = static_cast<double>(out.hits) / N;
  constexpr double z = 1.96;
  out.estimate = p;
  out.half_width = z * std::sqrt(p * (1 - p) / N);
  const double z2 = z * z;
  out.upper_bound =
      (p + z2 / (2 * N) + z * std::sqrt(p * (1 - p) / N + z2 / (4 * N * N))) / (1 + z2 / N);
  return out;
}

Rational union_bound_fraction(const CoreShape& s) {
  const Rational base = make_rational(2 * s.t) / make_rational(s.facility_count);
  Rational power = 1;
  for (std::uint64_t i = 0; i < s.t; ++i) power *= base;
  return 2 * power;
}

LowerBound lower_bound_constraints(const CoreShape& s) {
  LowerBound out;
  out.core_size = core_size(s);
  out.lambda = noncolliding_count_exact(s).total();
  if (out.lambda == 0) {
    throw Error(Error::Kind::internal, "elimination bound is zero: no member can be separated");
  }
  mpz_cdiv_q(out.bound.get_mpz_t(), out.core_size.get_mpz_t(), out.lambda.get_mpz_t());
  return out;
}

LowerBound lower_bound_constraints(const Instance& inst) {
  require_valid(inst);
  return lower_bound_constraints(core_shape(inst));
}

CensusReport census(const CoreShape& s, bool enumerate, std::uint64_t max_pairs) {
  CensusReport r;
  r.shape = s;
  r.core_size = core_size(s);
  r.noncolliding = noncolliding_count_exact(s);
  r.lambda = r.noncolliding.total();
  if (r.core_size > 0) r.noncolliding_fraction = Rational(r.lambda, r.core_size);
  r.noncolliding_fraction.canonicalize();
  r.union_bound = union_bound_fraction(s);
  r.union_bound_count = r.union_bound * Rational(r.core_size);
  if (enumerate) r.enumerated = noncolliding_count_enumerated(s, std::nullopt, max_pairs);
  return r;
}

Rational fractional_cost(const CostVector& cost, const FracVector& v) {
  if (cost.facility_count() != v.facility_count() || cost.client_count() != v.client_count()) {
    throw Error(Error::Kind::invalid_argument, "cost and vector dimensions differ");
  }
  std::vector<ClientId> cuts;
  const auto cost_cuts = cost.client_cuts();
  std::set_union(cost_cuts.begin(), cost_cuts.end(), v.client_cuts().begin(), v.client_cuts().end(),
                 std::back_inserter(cuts));
  Rational total = 0;
  for (FacilityId i = 0; i < v.facility_count(); ++i) {
    total += cost.opening(i) * v.y(i);
    ClientId start = 0;
    for (std::size_t iv = 0; iv <= cuts.size(); ++iv) {
      const ClientId end = iv < cuts.size() ? cuts[iv] : v.client_count();
      const Rational& x = v.x(i, start);
      if (sgn(x) != 0) total += make_rational(end - start) * cost.connection(i, start) * x;
      start = end;
    }
  }
  return total;
}

IntSolution analytic_opt_witness(const Instance& inst, const CoreIndex& index) {
  require_valid(inst);
  validate_core_index(inst, index);
  const FamilyParams& p = inst.params();
  const std::uint64_t U = inst.capacity;
  const std::uint64_t outside = inst.facility_count - 2 * p.t;
  const std::uint64_t rest = inst.client_count - index.core_clients.size();
  if (rest > U * outside) {
    throw Error(Error::Kind::precondition,
                "witness infeasible: m - core = " + std::to_string(rest) + " > U*(n_f-2t) = " +
                    std::to_string(U * outside));
  }
  if (index.core_clients.size() != U * p.t + 1) {
    throw Error(Error::Kind::precondition, "witness needs exactly U*t + 1 core clients");
  }

  IntSolution sol;
  sol.open.assign(inst.facility_count, false);
  sol.assign.assign(inst.client_count, 0);
  const std::vector<Role> roles = facility_roles(inst, index);
  std::vector<FacilityId> outside_ids;
  for (FacilityId i = 0; i < inst.facility_count; ++i) {
    if (roles[i] == Role::outside) {
      sol.open[i] = true;
      outside_ids.push_back(i);
    }
  }
  for (FacilityId i : index.k) sol.open[i] = true;
  const FacilityId costly = index.l.front();
  sol.open[costly] = true;

  ClientId j = index.core_clients.begin;
  for (FacilityId i : index.k) {
    for (std::uint64_t c = 0; c < U; ++c) sol.assign[j++] = i;
  }
  sol.assign[j++] = costly;

  std::size_t slot = 0;
  std::uint64_t used = 0;
  for (ClientId c = 0; c < inst.client_count; ++c) {
    if (index.core_clients.contains(c)) continue;
    if (used == U) {
      ++slot;
      used = 0;
    }
    sol.assign[c] = outside_ids[slot];
    ++used;
  }

  const auto problems = check_solution(inst, sol);
  if (!problems.empty()) throw Error(Error::Kind::internal, "witness infeasible: " + problems.front());
  return sol;
}

std::string to_string(OptProvenance p) {
  return p == OptProvenance::analytic ? "analytic" : "brute-force";
}

GapCertificate certify_gap(const Instance& inst, const CoreIndex& index, OptProvenance mode,
                           const EnumerationBounds& bounds) {
  require_valid(inst);
  validate_core_index(inst, index);
  const CostVector cost = build_gap_costs(inst, index);
  const FracVector v = make_core_vector(inst, index);

  GapCertificate cert;
  cert.index = index;
  cert.provenance = mode;
  cert.frac_cost = fractional_cost(cost, v);
  if (mode == OptProvenance::analytic) {
    cert.witness = analytic_opt_witness(inst, index);
    cert.witness_cost = solution_cost(cost, cert.witness);
    // Lower bound: k holds U*t clients, fewer than the U*t + 1 core clients,
    // so some core client pays a crossing or some l-facility opens.
    if (index.core_clients.size() <= inst.capacity * inst.params().t) {
      throw Error(Error::Kind::internal, "core clients fit inside k; the cost-1 lower bound fails");
    }
    if (cert.witness_cost != 1) {
      throw Error(Error::Kind::internal, "analytic witness costs " + to_string(cert.witness_cost));
    }
    cert.opt_value = 1;
  } else {
    const OptResult opt = brute_force_opt(inst, cost, bounds);
    cert.opt_value = opt.value;
    cert.witness = opt.witness;
    cert.witness_cost = opt.value;
  }
  cert.ratio = cert.opt_value / cert.frac_cost;
  cert.conclusion = "any g-approximate natural-encoding formulation with g < " + to_string(cert.ratio) +
                    " must separate this core vector";
  if (cert.ratio <= 1) cert.conclusion += " (vacuous: every formulation has g >= 1)";
  return cert;
}

}  // namespace cflgap
