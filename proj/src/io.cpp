#include "cflgap/io.hpp"

#include <fstream>
#include <sstream>

namespace cflgap::io {

namespace {

[[noreturn]] void bad(const std::string& msg) {
  throw Error(Error::Kind::invalid_argument, "malformed document: " + msg);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::uint64_t u64(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    bad(std::string("field '") + key + "' must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

Json big(const BigInt& z) { return z.get_str(); }

}  // namespace

Json rational(const Rational& r) { return to_string(r); }

Rational rational_from(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return make_rational(j.get<std::int64_t>(), 1);
  bad("rational must be a \"p/q\" string");
}

Json instance_to_json(const Instance& inst) {
  Json j;
  j["facility_count"] = inst.facility_count;
  j["client_count"] = inst.client_count;
  j["capacity"] = inst.capacity;
  if (inst.family) {
    const FamilyParams& p = *inst.family;
    Json fp;
    fp["t"] = p.t;
    if (p.a) fp["a"] = *p.a;
    fp["eps"] = rational(p.eps);
    fp["x_l"] = rational(p.x_l);
    fp["core_client_count"] = p.core_client_count;
    j["family_params"] = fp;
  }
  return j;
}

Instance instance_from_json(const Json& j) {
  Instance inst;
  inst.facility_count = u64(j, "facility_count");
  inst.client_count = u64(j, "client_count");
  inst.capacity = u64(j, "capacity");
  if (j.contains("family_params") && !j.at("family_params").is_null()) {
    const Json& fp = j.at("family_params");
    FamilyParams p;
    p.t = u64(fp, "t");
    if (fp.contains("a")) p.a = u64(fp, "a");
    p.eps = rational_from(field(fp, "eps"));
    p.x_l = rational_from(field(fp, "x_l"));
    p.core_client_count = u64(fp, "core_client_count");
    inst.family = p;
  }
  return inst;
}

Json core_index_to_json(const CoreIndex& index) {
  Json j;
  j["k"] = index.k;
  j["l"] = index.l;
  j["core_clients"] = {{"begin", index.core_clients.begin}, {"end", index.core_clients.end}};
  return j;
}

CoreIndex core_index_from_json(const Json& j, const Instance& inst) {
  CoreIndex index;
  try {
    index.k = field(j, "k").get<std::vector<FacilityId>>();
    index.l = field(j, "l").get<std::vector<FacilityId>>();
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("facility set: ") + e.what());
  }
  const Json& cc = field(j, "core_clients");
  index.core_clients = ClientRange{u64(cc, "begin"), u64(cc, "end")};
  validate_core_index(inst, index);
  return index;
}

Json vector_to_json(const FracVector& v) {
  Json j;
  j["facility_count"] = v.facility_count();
  j["client_count"] = v.client_count();
  if (v.repr() == FracVector::Repr::dense) {
    j["repr"] = "dense";
    Json y = Json::array();
    for (FacilityId i = 0; i < v.facility_count(); ++i) y.push_back(rational(v.y(i)));
    Json x = Json::array();
    for (FacilityId i = 0; i < v.facility_count(); ++i) {
      for (ClientId c = 0; c < v.client_count(); ++c) {
        if (sgn(v.x(i, c)) != 0) x.push_back(Json::array({i, c, rational(v.x(i, c))}));
      }
    }
    j["y"] = y;
    j["x"] = x;
    return j;
  }
  j["repr"] = "classed";
  Json y;
  y["facility_class"] = v.facility_classes();
  Json yv = Json::array();
  for (std::uint32_t c = 0; c < v.class_count(); ++c) yv.push_back(rational(v.y_class(c)));
  y["values"] = yv;
  Json x;
  x["client_cuts"] = v.client_cuts();
  Json rows = Json::array();
  for (std::uint32_t c = 0; c < v.class_count(); ++c) {
    Json row = Json::array();
    for (std::uint64_t iv = 0; iv < v.interval_count(); ++iv) row.push_back(rational(v.x_cell(c, iv)));
    rows.push_back(row);
  }
  x["values"] = rows;
  j["y"] = y;
  j["x"] = x;
  return j;
}

FracVector vector_from_json(const Json& j) {
  const std::uint64_t nf = u64(j, "facility_count");
  const std::uint64_t m = u64(j, "client_count");
  const Json& repr = field(j, "repr");
  try {
    if (repr == "dense") {
      std::vector<Rational> y;
      for (const auto& e : field(j, "y")) y.push_back(rational_from(e));
      std::vector<Rational> x(nf * m, Rational(0));
      for (const auto& t : field(j, "x")) {
        if (!t.is_array() || t.size() != 3) bad("x triplets must be [facility, client, \"p/q\"]");
        const auto i = t[0].get<std::uint64_t>();
        const auto c = t[1].get<std::uint64_t>();
        if (i >= nf || c >= m) bad("x triplet out of range");
        x[i * m + c] = rational_from(t[2]);
      }
      return FracVector::dense(nf, m, std::move(y), std::move(x));
    }
    if (repr == "classed") {
      const Json& y = field(j, "y");
      const Json& x = field(j, "x");
      auto classes = field(y, "facility_class").get<std::vector<std::uint32_t>>();
      std::vector<Rational> yv;
      for (const auto& e : field(y, "values")) yv.push_back(rational_from(e));
      auto cuts = field(x, "client_cuts").get<std::vector<ClientId>>();
      std::vector<Rational> xv;
      for (const auto& row : field(x, "values")) {
        if (!row.is_array() || row.size() != cuts.size() + 1) bad("x row length must be |client_cuts| + 1");
        for (const auto& e : row) xv.push_back(rational_from(e));
      }
      return FracVector::classed(nf, m, std::move(classes), std::move(cuts), std::move(yv), std::move(xv));
    }
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("vector: ") + e.what());
  }
  bad("repr must be \"dense\" or \"classed\"");
}

Json core_file_to_json(const Instance& inst, const CoreIndex& index) {
  Json j;
  j["instance"] = instance_to_json(inst);
  j["core_index"] = core_index_to_json(index);
  j["vector"] = vector_to_json(make_core_vector(inst, index));
  return j;
}

CoreFile core_file_from_json(const Json& j) {
  Instance inst = instance_from_json(field(j, "instance"));
  CoreIndex index = core_index_from_json(field(j, "core_index"), inst);
  FracVector v = j.contains("vector") ? vector_from_json(j.at("vector")) : make_core_vector(inst, index);
  return CoreFile{std::move(inst), std::move(index), std::move(v)};
}

Json solution_to_json(const IntSolution& sol) {
  Json j;
  Json open = Json::array();
  for (FacilityId i = 0; i < sol.open.size(); ++i) {
    if (sol.open[i]) open.push_back(i);
  }
  j["facility_count"] = sol.open.size();
  j["open"] = open;
  j["assign"] = sol.assign;
  return j;
}

IntSolution solution_from_json(const Json& j) {
  IntSolution sol;
  const std::uint64_t nf = u64(j, "facility_count");
  sol.open.assign(nf, false);
  try {
    for (const auto& e : field(j, "open")) {
      const auto i = e.get<std::uint64_t>();
      if (i >= nf) bad("open facility out of range");
      sol.open[i] = true;
    }
    sol.assign = field(j, "assign").get<std::vector<FacilityId>>();
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("solution: ") + e.what());
  }
  return sol;
}

Json outcome_class_to_json(const OutcomeClass& cls) {
  Json j;
  j["experiment"] = cls.key.experiment == Experiment::A ? "A" : "B";
  j["chosen_l_facility"] = cls.key.chosen;
  j["chosen_slots"] = cls.key.chosen_slots;
  j["extra_open"] = cls.key.extra_open;
  j["extra_slots"] = cls.key.extra_slots;
  j["probability"] = rational(cls.probability);
  j["slot_profile"] = cls.slot_profile;
  return j;
}

Json midpoint_certificate_to_json(const MidpointCertificate& cert) {
  Json j;
  j["pair"] = Json::array({core_index_to_json(cert.first), core_index_to_json(cert.second)});
  j["valid"] = cert.valid();
  j["expectation_matches"] = cert.expectation_matches;
  if (cert.first_mismatch) j["first_mismatch"] = describe(*cert.first_mismatch);
  j["all_classes_feasible"] = cert.all_classes_feasible;
  j["class_count"] = cert.class_count;
  j["probability_sum"] = rational(cert.probability_sum);
  j["probe_count"] = cert.probe_count;
  j["probe_mismatches"] = cert.probe_mismatches;
  return j;
}

Json lp_report_to_json(const LpReport& report) {
  Json j;
  j["pass"] = report.pass();
  Json v = Json::array();
  for (const auto& e : report.violations) {
    v.push_back({{"constraint", e.constraint},
                 {"at", describe(e.at)},
                 {"lhs", rational(e.lhs)},
                 {"rhs", rational(e.rhs)},
                 {"slack", rational(e.slack)}});
  }
  j["violations"] = v;
  return j;
}

Json mc_to_json(const McEstimate& mc) {
  std::ostringstream est, hw, ub;
  est.precision(17);
  hw.precision(17);
  ub.precision(17);
  est << mc.estimate;
  hw << mc.half_width;
  ub << mc.upper_bound;
  Json j;
  j["samples"] = mc.samples;
  j["hits"] = mc.hits;
  j["seed"] = mc.seed;
  j["estimate"] = est.str();
  j["half_width_95"] = hw.str();
  j["upper_bound_95"] = ub.str();
  return j;
}

Json census_to_json(const CensusReport& r) {
  Json j;
  j["facility_count"] = r.shape.facility_count;
  j["t"] = r.shape.t;
  j["core_size"] = big(r.core_size);
  j["lambda"] = big(r.lambda);
  j["events"] = {{"e1", big(r.noncolliding.e1)}, {"e2", big(r.noncolliding.e2)}, {"both", big(r.noncolliding.both)}};
  j["noncolliding_fraction"] = rational(r.noncolliding_fraction);
  j["union_bound_fraction"] = rational(r.union_bound);
  j["union_bound_count"] = rational(r.union_bound_count);
  j["within_union_bound"] = Rational(r.lambda) <= r.union_bound_count;
  if (r.enumerated) {
    j["enumerated"] = {{"members", r.enumerated->members},
                       {"noncolliding", r.enumerated->noncolliding},
                       {"matches_formula", to_bigint(r.enumerated->noncolliding) == r.lambda &&
                                               to_bigint(r.enumerated->members) == r.core_size}};
  }
  if (r.mc) j["mc_estimate"] = mc_to_json(*r.mc);
  return j;
}

Json lower_bound_to_json(const LowerBound& lb, const CoreShape& shape) {
  Json j;
  j["facility_count"] = shape.facility_count;
  j["t"] = shape.t;
  j["core_size"] = big(lb.core_size);
  j["lambda"] = big(lb.lambda);
  j["lower_bound"] = big(lb.bound);
  return j;
}

Json gap_certificate_to_json(const GapCertificate& cert) {
  Json j;
  j["core_index"] = core_index_to_json(cert.index);
  j["frac_cost"] = rational(cert.frac_cost);
  j["opt_value"] = rational(cert.opt_value);
  j["opt_provenance"] = to_string(cert.provenance);
  j["ratio"] = rational(cert.ratio);
  j["witness_cost"] = rational(cert.witness_cost);
  Json open = Json::array();
  for (FacilityId i = 0; i < cert.witness.open.size(); ++i) {
    if (cert.witness.open[i]) open.push_back(i);
  }
  j["witness_open"] = open;
  j["gap_conclusion"] = cert.conclusion;
  return j;
}

Json membership_to_json(const MembershipResult& result) {
  Json j;
  j["member"] = result.member;
  if (result.member) {
    Json w = Json::array();
    for (const auto& [idx, weight] : result.weights) w.push_back(Json::array({idx, rational(weight)}));
    j["weights"] = w;
  }
  if (result.separating) {
    Json coeffs = Json::array();
    for (const auto& c : result.separating->coefficients) coeffs.push_back(rational(c));
    j["separating_inequality"] = {{"coefficients", coeffs}, {"offset", rational(result.separating->offset)}};
  }
  return j;
}

Json violations_to_json(const std::vector<ParamViolation>& violations) {
  Json v = Json::array();
  for (const auto& e : violations) v.push_back({{"condition", e.condition}, {"detail", e.detail}});
  return v;
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Error::Kind::io, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Error::Kind::invalid_argument, "'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

void write_file(const std::string& path, const Json& doc) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Error::Kind::io, "cannot write '" + path + "'");
  out << dump(doc);
  if (!out) throw Error(Error::Kind::io, "write to '" + path + "' failed");
}

}  // namespace cflgap::io
