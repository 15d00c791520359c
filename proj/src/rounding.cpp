#include "cflgap/rounding.hpp"

#include <algorithm>
#include <numeric>

namespace cflgap {

std::vector<std::string> check_solution(const Instance& inst, const IntSolution& sol) {
  std::vector<std::string> out;
  if (sol.open.size() != inst.facility_count) {
    out.push_back("open set has " + std::to_string(sol.open.size()) + " entries, expected " +
                  std::to_string(inst.facility_count));
    return out;
  }
  if (sol.assign.size() != inst.client_count) {
    out.push_back("assignment has " + std::to_string(sol.assign.size()) + " entries, expected " +
                  std::to_string(inst.client_count));
    return out;
  }
  std::vector<std::uint64_t> load(inst.facility_count, 0);
  for (ClientId j = 0; j < sol.assign.size(); ++j) {
    const FacilityId i = sol.assign[j];
    if (i >= inst.facility_count) {
      out.push_back("client " + std::to_string(j) + " assigned to unknown facility " + std::to_string(i));
      continue;
    }
    if (!sol.open[i]) {
      out.push_back("client " + std::to_string(j) + " assigned to closed facility " + std::to_string(i));
    }
    load[i] += inst.demand(j);
  }
  for (FacilityId i = 0; i < inst.facility_count; ++i) {
    if (load[i] > inst.capacity) {
      out.push_back("facility " + std::to_string(i) + " serves " + std::to_string(load[i]) +
                    " > capacity " + std::to_string(inst.capacity));
    }
  }
  return out;
}

namespace {

FacilityId first_escape(const std::vector<FacilityId>& l, const CoreIndex& other) {
  for (FacilityId f : l) {
    if (!std::binary_search(other.k.begin(), other.k.end(), f) &&
        !std::binary_search(other.l.begin(), other.l.end(), f)) {
      return f;
    }
  }
  throw Error(Error::Kind::precondition, "no pivot exists: the pair does not collide");
}

struct Branch {
  std::uint64_t value;
  Rational probability;
};

std::vector<Branch> rounding_branches(const Rational& w) {
  const Rational fr = frac(w);
  const std::uint64_t lo = to_u64(floor(w));
  if (sgn(fr) == 0) return {{lo, Rational(1)}};
  return {{lo, 1 - fr}, {lo + 1, fr}};
}

/// Representative split: the lowest-numbered bins take the rounded-up share.
void assign_split(std::uint64_t total, const std::vector<FacilityId>& bins,
                  std::vector<std::uint64_t>& profile) {
  if (bins.empty()) {
    if (total != 0) throw Error(Error::Kind::internal, "clients left over with no bin to take them");
    return;
  }
  const std::uint64_t lo = total / bins.size();
  const std::uint64_t extra = total % bins.size();
  for (std::size_t b = 0; b < bins.size(); ++b) profile[bins[b]] = lo + (b < extra ? 1 : 0);
}

}  // namespace

Pivots pivot_facilities(const CoreIndex& a, const CoreIndex& b) {
  return Pivots{first_escape(a.l, b), first_escape(b.l, a)};
}

std::uint64_t round_slots(const Rational& w, Rng& rng) {
  if (sgn(w) < 0) throw Error(Error::Kind::invalid_argument, "round_slots: negative w " + to_string(w));
  const std::uint64_t lo = to_u64(floor(w));
  return rng.bernoulli(frac(w)) ? lo + 1 : lo;
}

std::vector<std::uint64_t> split_slots(std::uint64_t total, std::uint64_t bin_count,
                                       const Rational& avg, Rng& rng) {
  if (sgn(avg) < 0 || make_rational(bin_count) * avg != make_rational(total)) {
    throw Error(Error::Kind::invalid_argument,
                "split_slots: total " + std::to_string(total) + " != " + std::to_string(bin_count) +
                    " * " + to_string(avg));
  }
  std::vector<std::uint64_t> counts(bin_count, 0);
  if (bin_count == 0) return counts;
  const std::uint64_t lo = total / bin_count;
  const std::uint64_t up = total % bin_count;
  std::fill(counts.begin(), counts.end(), lo);
  std::vector<std::uint64_t> order(bin_count);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle_prefix(std::span<std::uint64_t>(order), up);
  for (std::uint64_t b = 0; b < up; ++b) ++counts[order[b]];
  return counts;
}

std::string describe(const OutcomeKey& key) {
  std::string s = key.experiment == Experiment::A ? "A" : "B";
  s += " chosen=" + std::to_string(key.chosen) + " slots=" + std::to_string(key.chosen_slots);
  s += key.extra_open ? " extra=open slots=" + std::to_string(key.extra_slots) : " extra=closed";
  return s;
}

MidpointDistribution::MidpointDistribution(const Instance& inst, const CoreIndex& first,
                                           const CoreIndex& second)
    : inst_(inst), first_(first), second_(second) {
  require_valid(inst_);
  validate_core_index(inst_, first_);
  validate_core_index(inst_, second_);
  if (first_.core_clients != second_.core_clients) {
    throw Error(Error::Kind::precondition, "core indices use different core client sets");
  }
  pivots_ = pivot_facilities(first_, second_);
  plan_a_ = make_plan(Experiment::A, first_, pivots_.f, pivots_.g);
  plan_b_ = make_plan(Experiment::B, second_, pivots_.g, pivots_.f);
}

MidpointDistribution::Plan MidpointDistribution::make_plan(Experiment e, const CoreIndex& own,
                                                           FacilityId own_pivot,
                                                           FacilityId other_pivot) const {
  const FamilyParams& p = inst_.params();
  const Rational t = make_rational(p.t);
  const Rational core = make_rational(p.core_client_count);
  const Rational core_mass = core * p.x_l;  // sum over core clients of x_ij, i in l

  Plan plan;
  plan.experiment = e;
  plan.k = own.k;
  plan.l = own.l;
  for (FacilityId i : own.l) {
    const Rational prob = i == own_pivot ? 1 - (t - 1) * p.eps : p.eps;
    plan.l_probability.push_back(prob);
    plan.l_weight.push_back(sgn(prob) > 0 ? core_mass / prob : Rational(0));
  }
  plan.extra = other_pivot;
  const std::vector<Role> roles = facility_roles(inst_, own);
  for (FacilityId i = 0; i < inst_.facility_count; ++i) {
    if (roles[i] == Role::outside && i != other_pivot) plan.bins.push_back(i);
  }
  const std::uint64_t outside = inst_.facility_count - 2 * p.t;
  const Rational rest = make_rational(inst_.client_count - p.core_client_count);
  plan.extra_probability = t * p.eps;
  plan.extra_weight = rest / make_rational(outside) / plan.extra_probability;
  return plan;
}

void MidpointDistribution::run(const Plan& plan, Rng& rng, Sample& out) const {
  const ClientRange core = first_.core_clients;
  IntSolution& sol = out.solution;
  sol.open.assign(inst_.facility_count, false);
  sol.assign.assign(inst_.client_count, 0);

  auto take = [&](std::span<ClientId> pool, std::size_t& cursor, FacilityId i, std::uint64_t n) {
    if (n > inst_.capacity) {
      throw Error(Error::Kind::internal, "slot count " + std::to_string(n) + " exceeds capacity at facility " +
                                             std::to_string(i) + "; instance parameters are invalid");
    }
    for (std::uint64_t c = 0; c < n; ++c) sol.assign[pool[cursor++]] = i;
  };

  // Step 1: k always open, exactly one facility of l.
  for (FacilityId i : plan.k) sol.open[i] = true;
  const std::size_t idx = rng.choose(plan.l_probability);
  const FacilityId chosen = plan.l[idx];
  sol.open[chosen] = true;
  const std::uint64_t chosen_slots = round_slots(plan.l_weight[idx], rng);
  if (chosen_slots > core.size()) throw Error(Error::Kind::internal, "rounded slots exceed the core pool");

  std::vector<ClientId> pool(core.size());
  std::iota(pool.begin(), pool.end(), core.begin);
  rng.shuffle_prefix(std::span<ClientId>(pool), pool.size());
  std::size_t cursor = 0;
  take(pool, cursor, chosen, chosen_slots);
  const std::uint64_t left = core.size() - chosen_slots;
  const auto k_counts =
      split_slots(left, plan.k.size(), make_rational(left) / make_rational(plan.k.size()), rng);
  for (std::size_t b = 0; b < plan.k.size(); ++b) take(pool, cursor, plan.k[b], k_counts[b]);

  // Step 2: outside facilities open, the other pair's pivot opens at random.
  for (FacilityId i : plan.bins) sol.open[i] = true;
  pool.clear();
  for (ClientId j = 0; j < inst_.client_count; ++j) {
    if (!core.contains(j)) pool.push_back(j);
  }
  rng.shuffle_prefix(std::span<ClientId>(pool), pool.size());
  cursor = 0;
  const bool extra_open = rng.bernoulli(plan.extra_probability);
  std::uint64_t extra_slots = 0;
  if (extra_open) {
    sol.open[plan.extra] = true;
    extra_slots = round_slots(plan.extra_weight, rng);
    if (extra_slots > pool.size()) throw Error(Error::Kind::internal, "rounded slots exceed the non-core pool");
    take(pool, cursor, plan.extra, extra_slots);
  }
  const std::uint64_t rest = pool.size() - extra_slots;
  std::vector<std::uint64_t> bin_counts;
  if (plan.bins.empty()) {
    if (rest != 0) throw Error(Error::Kind::internal, "non-core clients left with no open bin");
  } else {
    bin_counts = split_slots(rest, plan.bins.size(),
                             make_rational(rest) / make_rational(plan.bins.size()), rng);
  }
  for (std::size_t b = 0; b < plan.bins.size(); ++b) take(pool, cursor, plan.bins[b], bin_counts[b]);

  out.key = OutcomeKey{plan.experiment, chosen, chosen_slots, extra_open, extra_slots};
}

Sample MidpointDistribution::sample(Rng& rng) const {
  Sample out;
  const bool experiment_a = rng.bernoulli(Rational(1, 2));
  run(experiment_a ? plan_a_ : plan_b_, rng, out);
  return out;
}

FracVector MidpointDistribution::expected_vector() const {
  const std::uint64_t nf = inst_.facility_count;
  const ClientRange core = first_.core_clients;
  const Rational core_n = make_rational(core.size());
  const Rational rest_n = make_rational(inst_.client_count - core.size());

  // Per facility: E[y_i], E[x_ij] for a core client, E[x_ij] for a non-core client.
  struct Moments {
    Rational y, x_core, x_rest;
  };
  auto moments = [&](const Plan& plan) {
    std::vector<Moments> m(nf, Moments{Rational(0), Rational(0), Rational(0)});
    Rational to_l = 0;  // expected core clients sent to l
    for (std::size_t a = 0; a < plan.l.size(); ++a) {
      const Rational slots = plan.l_probability[a] * plan.l_weight[a];
      m[plan.l[a]].y = plan.l_probability[a];
      m[plan.l[a]].x_core = slots / core_n;
      to_l += slots;
    }
    for (FacilityId i : plan.k) {
      m[i].y = 1;
      m[i].x_core = (core_n - to_l) / make_rational(plan.k.size()) / core_n;
    }
    const Rational extra_slots = plan.extra_probability * plan.extra_weight;
    m[plan.extra].y = plan.extra_probability;
    if (sgn(rest_n) > 0) m[plan.extra].x_rest = extra_slots / rest_n;
    for (FacilityId i : plan.bins) {
      m[i].y = 1;
      if (sgn(rest_n) > 0) {
        m[i].x_rest = (rest_n - extra_slots) / make_rational(plan.bins.size()) / rest_n;
      }
    }
    return m;
  };
  const auto ma = moments(plan_a_);
  const auto mb = moments(plan_b_);

  std::vector<Moments> classes;
  std::vector<std::uint32_t> label(nf);
  for (FacilityId i = 0; i < nf; ++i) {
    Moments avg{(ma[i].y + mb[i].y) / 2, (ma[i].x_core + mb[i].x_core) / 2,
                (ma[i].x_rest + mb[i].x_rest) / 2};
    auto it = std::find_if(classes.begin(), classes.end(), [&](const Moments& c) {
      return c.y == avg.y && c.x_core == avg.x_core && c.x_rest == avg.x_rest;
    });
    label[i] = static_cast<std::uint32_t>(it - classes.begin());
    if (it == classes.end()) classes.push_back(std::move(avg));
  }

  std::vector<ClientId> cuts;
  for (ClientId c : {core.begin, core.end}) {
    if (c > 0 && c < inst_.client_count) cuts.push_back(c);
  }
  std::vector<Rational> yv;
  std::vector<Rational> xv;
  for (const auto& c : classes) {
    yv.push_back(c.y);
    ClientId start = 0;
    for (std::size_t iv = 0; iv <= cuts.size(); ++iv) {
      xv.push_back(core.contains(start) ? c.x_core : c.x_rest);
      if (iv < cuts.size()) start = cuts[iv];
    }
  }
  return FracVector::classed(nf, inst_.client_count, std::move(label), std::move(cuts),
                             std::move(yv), std::move(xv));
}

std::vector<OutcomeClass> MidpointDistribution::outcome_classes() const {
  const std::uint64_t core_n = first_.core_clients.size();
  const std::uint64_t rest_n = inst_.client_count - core_n;
  std::vector<OutcomeClass> out;
  for (const Plan* plan : {&plan_a_, &plan_b_}) {
    for (std::size_t a = 0; a < plan->l.size(); ++a) {
      if (sgn(plan->l_probability[a]) == 0) continue;
      for (const Branch& r1 : rounding_branches(plan->l_weight[a])) {
        for (bool extra_open : {true, false}) {
          const Rational p_open = extra_open ? plan->extra_probability : 1 - plan->extra_probability;
          if (sgn(p_open) == 0) continue;
          const std::vector<Branch> r2s =
              extra_open ? rounding_branches(plan->extra_weight) : std::vector<Branch>{{0, Rational(1)}};
          for (const Branch& r2 : r2s) {
            OutcomeClass cls;
            cls.key = OutcomeKey{plan->experiment, plan->l[a], r1.value, extra_open, r2.value};
            cls.probability = Rational(1, 2) * plan->l_probability[a] * r1.probability * p_open * r2.probability;
            cls.open.assign(inst_.facility_count, false);
            cls.slot_profile.assign(inst_.facility_count, 0);
            for (FacilityId i : plan->k) cls.open[i] = true;
            for (FacilityId i : plan->bins) cls.open[i] = true;
            cls.open[plan->l[a]] = true;
            cls.slot_profile[plan->l[a]] = r1.value;
            assign_split(core_n >= r1.value ? core_n - r1.value : 0, plan->k, cls.slot_profile);
            if (extra_open) {
              cls.open[plan->extra] = true;
              cls.slot_profile[plan->extra] = r2.value;
            }
            assign_split(rest_n >= r2.value ? rest_n - r2.value : 0, plan->bins, cls.slot_profile);
            out.push_back(std::move(cls));
          }
        }
      }
    }
  }
  return out;
}

std::vector<std::string> MidpointDistribution::check_class(const OutcomeClass& cls) const {
  std::vector<std::string> out;
  std::uint64_t total = 0;
  for (FacilityId i = 0; i < inst_.facility_count; ++i) {
    const std::uint64_t s = cls.slot_profile[i];
    total += s;
    if (s > inst_.capacity) {
      out.push_back("facility " + std::to_string(i) + " takes " + std::to_string(s) + " > capacity");
    }
    if (s > 0 && !cls.open[i]) out.push_back("closed facility " + std::to_string(i) + " takes clients");
  }
  if (total != inst_.client_count) {
    out.push_back("profile covers " + std::to_string(total) + " of " +
                  std::to_string(inst_.client_count) + " clients");
  }
  return out;
}

IntSolution sample_D(const Instance& inst, const CoreIndex& a, const CoreIndex& b, Rng& rng) {
  return MidpointDistribution(inst, a, b).sample(rng).solution;
}

FracVector expected_vector(const Instance& inst, const CoreIndex& a, const CoreIndex& b) {
  return MidpointDistribution(inst, a, b).expected_vector();
}

std::vector<OutcomeClass> enumerate_outcome_classes(const Instance& inst, const CoreIndex& a,
                                                    const CoreIndex& b) {
  return MidpointDistribution(inst, a, b).outcome_classes();
}

MidpointCertificate verify_midpoint(const Instance& inst, const CoreIndex& a, const CoreIndex& b,
                                    const MidpointOptions& options) {
  const MidpointDistribution dist(inst, a, b);
  const FracVector s1 = make_core_vector(inst, a);
  const FracVector s2 = make_core_vector(inst, b);
  const FracVector expected = dist.expected_vector();

  MidpointCertificate cert;
  cert.first = a;
  cert.second = b;
  cert.first_mismatch = first_difference(expected, midpoint(s1, s2));
  cert.expectation_matches = !cert.first_mismatch.has_value();

  const auto classes = dist.outcome_classes();
  cert.class_count = classes.size();
  cert.probability_sum = 0;
  cert.all_classes_feasible = true;
  for (const auto& cls : classes) {
    cert.probability_sum += cls.probability;
    if (!dist.check_class(cls).empty()) cert.all_classes_feasible = false;
  }

  Rng rng(options.seed);
  const std::uint64_t nf = inst.facility_count;
  const std::uint64_t m = inst.client_count;
  for (std::uint64_t n = 0; n < options.probes; ++n) {
    const std::uint64_t idx = rng.below(nf * (m + 1));
    const Coordinate c = idx < nf ? Coordinate{false, static_cast<FacilityId>(idx), 0}
                                  : Coordinate{true, static_cast<FacilityId>((idx - nf) / m), (idx - nf) % m};
    if (expected.at(c) != (s1.at(c) + s2.at(c)) / 2) ++cert.probe_mismatches;
  }
  cert.probe_count = options.probes;
  return cert;
}

}  // namespace cflgap
