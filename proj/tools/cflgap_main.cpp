// cflgap: command-line front end.
//
// Exit codes: 0 success / true, 1 check failed / false, 2 invalid input or
// parameters (including non-colliding pairs), 3 I/O failure, 4 internal error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "cflgap/exact_lp.hpp"
#include "cflgap/io.hpp"

#ifndef CFLGAP_VERSION
#define CFLGAP_VERSION "dev"
#endif

namespace {

using namespace cflgap;
using io::Json;

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kInvalid = 2;
constexpr int kIo = 3;
constexpr int kInternal = 4;

struct Common {
  std::string output;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  bool strict = false;
};

std::string hex_sha256(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(Error::Kind::internal, "sha256 failed");
  }
  std::ostringstream s;
  for (unsigned int i = 0; i < len; ++i) s << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return s.str();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Error::Kind::io, "cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Collects what a run consumed so the sidecar manifest can name it.
class Run {
 public:
  Run(std::string command, const Common& common) : command_(std::move(command)), common_(common) {}

  Json& params() { return params_; }

  Json read(const std::string& path) {
    const std::string bytes = slurp(path);
    inputs_.push_back({{"path", path}, {"sha256", hex_sha256(bytes)}});
    try {
      return Json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(Error::Kind::invalid_argument, "'" + path + "' is not valid JSON: " + e.what());
    }
  }

  std::uint64_t seed() const {
    if (!common_.seed) throw Error(Error::Kind::invalid_argument, command_ + " is randomized and needs an explicit --seed");
    return *common_.seed;
  }

  /// Writes `doc` to -o (if given) plus FILE.manifest.json beside it.
  void emit(const Json& doc) const {
    if (common_.output.empty()) return;
    const std::string text = io::dump(doc);
    write_text(common_.output, text);
    Json m;
    m["command"] = command_;
    m["parameters"] = params_;
    m["seed"] = common_.seed ? Json(*common_.seed) : Json(nullptr);
    m["jobs"] = common_.jobs;
    m["version"] = CFLGAP_VERSION;
    m["inputs"] = inputs_;
    m["output"] = {{"path", common_.output}, {"sha256", hex_sha256(text)}};
    write_text(common_.output + ".manifest.json", io::dump(m));
  }

  static void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Error::Kind::io, "cannot write '" + path + "'");
    out << text;
    if (!out) throw Error(Error::Kind::io, "write to '" + path + "' failed");
  }

 private:
  std::string command_;
  const Common& common_;
  Json params_ = Json::object();
  Json inputs_ = Json::array();
};

void row(const std::string& key, const std::string& value) {
  std::cout << "  " << std::left << std::setw(30) << key << value << "\n";
}

std::string str(const Rational& r) { return to_string(r); }
std::string str(const BigInt& z) { return z.get_str(); }

std::string join(const std::vector<FacilityId>& ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? "," : "") + std::to_string(ids[i]);
  return "{" + s + "}";
}

std::string with_commas(const BigInt& z) {
  std::string s = z.get_str();
  const bool neg = !s.empty() && s[0] == '-';
  std::string out;
  int n = 0;
  for (auto it = s.rbegin(); it != s.rend() && *it != '-'; ++it) {
    if (n && n % 3 == 0) out.push_back(',');
    out.push_back(*it);
    ++n;
  }
  if (neg) out.push_back('-');
  return {out.rbegin(), out.rend()};
}

/// "0..9", "0,3,7" or a mix such as "0..4,10,12..13".
std::vector<FacilityId> parse_ids(const std::string& text) {
  std::vector<FacilityId> out;
  std::stringstream ss(text);
  std::string part;
  auto num = [&](const std::string& s) -> FacilityId {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(s, &used);
      if (used != s.size() || v > 0xffffffffUL) throw std::invalid_argument(s);
      return static_cast<FacilityId>(v);
    } catch (const std::exception&) {
      throw Error(Error::Kind::invalid_argument, "malformed facility list '" + text + "'");
    }
  };
  while (std::getline(ss, part, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(num(part));
      continue;
    }
    const FacilityId a = num(part.substr(0, dots)), b = num(part.substr(dots + 2));
    if (a > b) throw Error(Error::Kind::invalid_argument, "empty range '" + part + "'");
    for (FacilityId i = a; i <= b; ++i) out.push_back(i);
  }
  if (out.empty()) throw Error(Error::Kind::invalid_argument, "empty facility list");
  return out;
}

CoreIndex default_core(const Instance& inst) {
  std::vector<FacilityId> k, l;
  const auto t = static_cast<FacilityId>(inst.params().t);
  for (FacilityId i = 0; i < t; ++i) {
    k.push_back(i);
    l.push_back(t + i);
  }
  return make_core_index(inst, k, l);
}

/// Instance from --instance FILE, or the family I(t^2, a t^4, t^3).
struct InstanceSource {
  std::string path;
  std::optional<std::uint64_t> t;
  std::uint64_t a = 2;

  void add(CLI::App* cmd) {
    cmd->add_option("--instance", path, "instance file");
    cmd->add_option("--t", t, "family parameter t (with --a)");
    cmd->add_option("--a", a, "family client multiplier")->capture_default_str();
  }

  Instance load(Run& run) const {
    if (!path.empty()) {
      run.params()["instance"] = path;
      return io::instance_from_json(run.read(path));
    }
    if (!t) throw Error(Error::Kind::invalid_argument, "give --instance FILE or --t N");
    run.params()["t"] = *t;
    run.params()["a"] = a;
    return build_family_instance(*t, a);
  }
};

void print_instance(const Instance& inst) {
  row("facilities", std::to_string(inst.facility_count));
  row("clients", std::to_string(inst.client_count));
  row("capacity", std::to_string(inst.capacity));
  if (inst.family) {
    const auto& p = *inst.family;
    row("t", std::to_string(p.t));
    if (p.a) row("a", std::to_string(*p.a));
    row("eps", str(p.eps));
    row("x_l", str(p.x_l));
    row("x_k", str(p.x_k()));
    row("core clients", std::to_string(p.core_client_count));
  }
}

void print_violations(const std::vector<ParamViolation>& v, std::ostream& os) {
  for (const auto& e : v) os << "  violated " << e.condition << ": " << e.detail << "\n";
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  bool family = false, general = false;
  std::uint64_t t = 0, a = 2, nf = 0, U = 0, m = 0;
  std::string eps, xl;
};

int cmd_gen(const GenArgs& g, const Common& c) {
  Run run("gen", c);
  if (g.family == g.general) throw Error(Error::Kind::invalid_argument, "choose exactly one of --family and --general");
  Instance inst;
  if (g.family) {
    run.params() = {{"mode", "family"}, {"t", g.t}, {"a", g.a}};
    inst = build_family_instance(g.t, g.a);
  } else {
    run.params() = {{"mode", "general"}, {"nf", g.nf}, {"t", g.t}, {"U", g.U}, {"m", g.m}, {"eps", g.eps}, {"xl", g.xl}};
    inst = build_general_instance(g.nf, g.t, g.U, g.m, parse_rational(g.eps), parse_rational(g.xl));
  }
  run.params()["strict"] = c.strict;
  const auto violations = validate_params(inst);
  std::cout << "instance\n";
  print_instance(inst);
  row("valid", violations.empty() ? "yes" : "no");
  if (!violations.empty()) {
    print_violations(violations, c.strict ? std::cerr : std::cout);
    if (c.strict) return kInvalid;
  }
  run.emit(io::instance_to_json(inst));
  return kOk;
}

// ---------------------------------------------------------------- core / collide / lpcheck

struct CoreArgs {
  InstanceSource source;
  std::string k, l;
  bool random = false;
};

int cmd_core(const CoreArgs& a, const Common& c) {
  Run run("core", c);
  const Instance inst = a.source.load(run);
  require_valid(inst);
  CoreIndex index;
  if (a.random) {
    if (!a.k.empty() || !a.l.empty()) throw Error(Error::Kind::invalid_argument, "--random excludes --k/--l");
    run.params()["random"] = true;
    Rng rng(run.seed());
    const auto t = inst.params().t;
    std::vector<FacilityId> ids(inst.facility_count);
    for (FacilityId i = 0; i < ids.size(); ++i) ids[i] = i;
    rng.shuffle_prefix(std::span<FacilityId>(ids), 2 * t);
    index = make_core_index(inst, {ids.begin(), ids.begin() + t}, {ids.begin() + t, ids.begin() + 2 * t});
  } else {
    if (a.k.empty() || a.l.empty()) throw Error(Error::Kind::invalid_argument, "give --k and --l, or --random");
    run.params()["k"] = a.k;
    run.params()["l"] = a.l;
    index = make_core_index(inst, parse_ids(a.k), parse_ids(a.l));
  }
  const FracVector v = make_core_vector(inst, index);
  std::cout << "core vector\n";
  row("k", join(index.k));
  row("l", join(index.l));
  row("core clients", "[" + std::to_string(index.core_clients.begin) + ", " + std::to_string(index.core_clients.end) + ")");
  row("dimension", std::to_string(v.dimension()));
  row("cells", std::to_string(v.class_count() * v.interval_count()));
  run.emit(io::core_file_to_json(inst, index));
  return kOk;
}

io::CoreFile load_core(Run& run, const std::string& path) { return io::core_file_from_json(run.read(path)); }

void require_same_instance(const io::CoreFile& a, const io::CoreFile& b) {
  if (!(a.instance == b.instance)) throw Error(Error::Kind::invalid_argument, "the two core files use different instances");
}

int cmd_collide(const std::string& pa, const std::string& pb, const Common& c) {
  Run run("collide", c);
  run.params() = {{"a", pa}, {"b", pb}};
  const auto a = load_core(run, pa), b = load_core(run, pb);
  require_same_instance(a, b);
  const bool hit = collides(a.index, b.index);
  std::cout << "collision\n";
  row("collide", hit ? "true" : "false");
  Json doc{{"collide", hit}};
  if (hit) {
    const Pivots p = pivot_facilities(a.index, b.index);
    row("pivot f", std::to_string(p.f));
    row("pivot g", std::to_string(p.g));
    doc["pivots"] = {{"f", p.f}, {"g", p.g}};
  }
  run.emit(doc);
  return hit ? kOk : kFalse;
}

int cmd_lpcheck(const std::string& path, const Common& c) {
  Run run("lpcheck", c);
  run.params() = {{"core", path}};
  const auto f = load_core(run, path);
  const LpReport r = check_natural_lp(f.instance, f.vector);
  std::cout << "natural LP\n";
  row("pass", r.pass() ? "yes" : "no");
  for (const auto& v : r.violations) {
    row(v.constraint + " at " + describe(v.at), "lhs " + str(v.lhs) + ", rhs " + str(v.rhs) + ", slack " + str(v.slack));
  }
  run.emit(io::lp_report_to_json(r));
  return r.pass() ? kOk : kFalse;
}

// ---------------------------------------------------------------- verify-midpoint / sample

int cmd_verify_midpoint(const std::string& pa, const std::string& pb, std::uint64_t probes, const Common& c) {
  Run run("verify-midpoint", c);
  run.params() = {{"a", pa}, {"b", pb}, {"probes", probes}};
  const auto a = load_core(run, pa), b = load_core(run, pb);
  require_same_instance(a, b);
  MidpointOptions opt;
  opt.probes = probes;
  if (probes > 0) opt.seed = run.seed();
  if (!collides(a.index, b.index)) pivot_facilities(a.index, b.index);  // throws, naming the empty set
  const MidpointCertificate cert = verify_midpoint(a.instance, a.index, b.index, opt);
  std::cout << "midpoint certificate\n";
  row("valid", cert.valid() ? "yes" : "no");
  row("expectation matches", cert.expectation_matches ? "yes" : "no");
  if (cert.first_mismatch) row("first mismatch", describe(*cert.first_mismatch));
  row("outcome classes", std::to_string(cert.class_count));
  row("probability sum", str(cert.probability_sum));
  row("all classes feasible", cert.all_classes_feasible ? "yes" : "no");
  row("coordinate probes", std::to_string(cert.probe_count) + " (" + std::to_string(cert.probe_mismatches) + " mismatches)");
  Json doc = io::midpoint_certificate_to_json(cert);
  doc["coordinates"] = std::to_string(a.vector.dimension());
  Json classes = Json::array();
  for (const auto& cls : enumerate_outcome_classes(a.instance, a.index, b.index)) {
    classes.push_back(io::outcome_class_to_json(cls));
  }
  doc["classes"] = classes;
  run.emit(doc);
  return cert.valid() ? kOk : kFalse;
}

int cmd_sample(const std::string& pa, const std::string& pb, std::uint64_t n, const std::string& solutions,
               const Common& c) {
  Run run("sample", c);
  run.params() = {{"a", pa}, {"b", pb}, {"n", n}, {"solutions", solutions}};
  const std::uint64_t seed = run.seed();
  if (n == 0) throw Error(Error::Kind::invalid_argument, "--n must be positive");
  const auto a = load_core(run, pa), b = load_core(run, pb);
  require_same_instance(a, b);
  const MidpointDistribution d(a.instance, a.index, b.index);
  const auto classes = d.outcome_classes();

  std::ofstream jsonl;
  if (!solutions.empty()) {
    jsonl.open(solutions, std::ios::binary | std::ios::trunc);
    if (!jsonl) throw Error(Error::Kind::io, "cannot write '" + solutions + "'");
  }

  // Sample i always uses stream derive_seed(seed, i), so --jobs only changes
  // who computes it; blocks are merged in index order.
  constexpr std::uint64_t block = 1024;
  const unsigned jobs = std::max(1u, c.jobs);
  std::map<OutcomeKey, std::uint64_t> freq;
  std::uint64_t violations = 0;
  std::string first_violation;
  std::vector<Sample> buf;
  for (std::uint64_t start = 0; start < n; start += block) {
    const std::uint64_t len = std::min(block, n - start);
    buf.assign(len, Sample{});
    auto work = [&](unsigned w) {
      for (std::uint64_t i = w; i < len; i += jobs) {
        Rng rng(derive_seed(seed, start + i));
        buf[i] = d.sample(rng);
      }
    };
    if (jobs == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
      for (auto& th : pool) th.join();
    }
    for (std::uint64_t i = 0; i < len; ++i) {
      const auto problems = check_solution(a.instance, buf[i].solution);
      if (!problems.empty()) {
        if (violations == 0) first_violation = "sample " + std::to_string(start + i) + ": " + problems.front();
        ++violations;
      }
      ++freq[buf[i].key];
      if (jsonl.is_open()) {
        Json line{{"index", start + i}, {"seed", derive_seed(seed, start + i)}, {"class", describe(buf[i].key)},
                  {"feasible", problems.empty()}, {"solution", io::solution_to_json(buf[i].solution)}};
        jsonl << line.dump() << "\n";
      }
    }
  }
  if (jsonl.is_open() && !jsonl) throw Error(Error::Kind::io, "write to '" + solutions + "' failed");

  Json cls_doc = Json::array();
  double worst_z = 0;
  std::uint64_t unexpected = 0;
  for (const auto& cls : classes) {
    const double p = cls.probability.get_d();
    const double mean = static_cast<double>(n) * p;
    const double se = std::sqrt(static_cast<double>(n) * p * (1 - p));
    const std::uint64_t seen = freq.count(cls.key) ? freq.at(cls.key) : 0;
    const double z = se > 0 ? (static_cast<double>(seen) - mean) / se : (seen == mean ? 0.0 : INFINITY);
    worst_z = std::max(worst_z, std::abs(z));
    std::ostringstream zs;
    zs << std::setprecision(6) << z;
    cls_doc.push_back({{"class", describe(cls.key)}, {"probability", io::rational(cls.probability)}, {"count", seen}, {"z", zs.str()}});
    freq.erase(cls.key);
  }
  for (const auto& [key, count] : freq) unexpected += count;

  std::cout << "sampler\n";
  row("samples", std::to_string(n));
  row("seed", std::to_string(seed));
  row("infeasible samples", std::to_string(violations));
  if (!first_violation.empty()) row("first infeasible", first_violation);
  row("outcome classes", std::to_string(classes.size()));
  row("samples outside classes", std::to_string(unexpected));
  {
    std::ostringstream zs;
    zs << std::setprecision(4) << worst_z;
    row("max |z| over classes", zs.str() + (worst_z <= 4 ? " (within 4 se)" : " (beyond 4 se)"));
  }
  std::ostringstream wz;
  wz << std::setprecision(6) << worst_z;
  Json doc{{"pair", Json::array({io::core_index_to_json(a.index), io::core_index_to_json(b.index)})},
           {"samples", n},
           {"seed", seed},
           {"infeasible", violations},
           {"samples_outside_classes", unexpected},
           {"max_abs_z", wz.str()},
           {"within_4_se", worst_z <= 4},
           {"classes", cls_doc}};
  run.emit(doc);
  return violations == 0 && unexpected == 0 ? kOk : kFalse;
}

// ---------------------------------------------------------------- census / bound / certify

struct ShapeArgs {
  InstanceSource source;
  std::optional<std::uint64_t> nf;
};

CoreShape load_shape(const ShapeArgs& s, Run& run) {
  if (s.nf) {
    if (!s.source.t) throw Error(Error::Kind::invalid_argument, "--nf needs --t");
    run.params()["nf"] = *s.nf;
    run.params()["t"] = *s.source.t;
    return CoreShape{*s.nf, *s.source.t};
  }
  const Instance inst = s.source.load(run);
  require_valid(inst);
  return core_shape(inst);
}

int cmd_census(const ShapeArgs& s, bool exact, std::uint64_t mc, bool formula_only, std::uint64_t max_pairs,
               const Common& c) {
  Run run("census", c);
  const CoreShape shape = load_shape(s, run);
  run.params()["exact"] = exact;
  run.params()["mc"] = mc;
  run.params()["formula_only"] = formula_only;
  run.params()["max_pairs"] = max_pairs;
  if (exact && formula_only) throw Error(Error::Kind::invalid_argument, "--exact and --formula-only exclude each other");
  if (!exact && mc == 0 && !formula_only) throw Error(Error::Kind::invalid_argument, "choose --exact, --mc N or --formula-only");
  CensusReport r = census(shape, exact, max_pairs);
  if (mc > 0) r.mc = noncolliding_prob_mc(shape, mc, run.seed(), c.jobs);

  std::cout << "census (n_f = " << shape.facility_count << ", t = " << shape.t << ")\n";
  row("core size", str(r.core_size));
  row("non-colliding (lambda)", str(r.lambda));
  row("  event l' in k u l", str(r.noncolliding.e1));
  row("  event l in k' u l'", str(r.noncolliding.e2));
  row("  both events", str(r.noncolliding.both));
  row("non-colliding fraction", str(r.noncolliding_fraction));
  row("union bound 2(2t/n_f)^t", str(r.union_bound));
  row("within union bound", Rational(r.lambda) <= r.union_bound_count ? "yes" : "no");
  bool ok = true;
  if (r.enumerated) {
    const bool match = to_bigint(r.enumerated->noncolliding) == r.lambda && to_bigint(r.enumerated->members) == r.core_size;
    ok = match;
    row("enumerated members", std::to_string(r.enumerated->members));
    row("enumerated non-colliding", std::to_string(r.enumerated->noncolliding));
    row("formula = enumeration", match ? "yes" : "no");
  }
  if (r.mc) {
    std::ostringstream e;
    e << std::setprecision(6) << r.mc->estimate << " +- " << r.mc->half_width << " (upper " << r.mc->upper_bound << ")";
    row("Monte Carlo", std::to_string(r.mc->hits) + "/" + std::to_string(r.mc->samples) + " = " + e.str());
  }
  run.emit(io::census_to_json(r));
  return ok ? kOk : kFalse;
}

int cmd_bound(const ShapeArgs& s, const Common& c) {
  Run run("bound", c);
  const CoreShape shape = load_shape(s, run);
  const LowerBound lb = lower_bound_constraints(shape);
  // ceil(1 / (2 (2t/n_f)^t)): the count the union bound alone guarantees.
  const Rational inv = 1 / union_bound_fraction(shape);
  const BigInt floor_bound = ceil(inv);
  std::cout << "lower bound on inequalities (n_f = " << shape.facility_count << ", t = " << shape.t << ")\n";
  row("|C_I|", with_commas(lb.core_size));
  row("lambda", with_commas(lb.lambda));
  row("ceil(|C_I| / lambda)", with_commas(lb.bound));
  row("union-bound floor", with_commas(floor_bound));
  row("bound >= floor", lb.bound >= floor_bound ? "yes" : "no");
  Json doc = io::lower_bound_to_json(lb, shape);
  doc["union_bound_floor"] = str(floor_bound);
  doc["bound_at_least_floor"] = lb.bound >= floor_bound;
  run.emit(doc);
  return lb.bound >= floor_bound ? kOk : kFalse;
}

int cmd_certify(const InstanceSource& src, const std::string& core_path, bool brute, const Common& c) {
  Run run("certify", c);
  Instance inst;
  CoreIndex index;
  if (!core_path.empty()) {
    run.params()["core"] = core_path;
    const auto f = load_core(run, core_path);
    inst = f.instance;
    index = f.index;
  } else {
    inst = src.load(run);
    require_valid(inst);
    index = default_core(inst);
  }
  run.params()["brute_force"] = brute;
  const GapCertificate g = certify_gap(inst, index, brute ? OptProvenance::brute_force : OptProvenance::analytic);
  std::cout << "gap certificate\n";
  row("k", join(index.k));
  row("l", join(index.l));
  row("fractional cost", str(g.frac_cost));
  row("integer optimum", str(g.opt_value) + " (" + to_string(g.provenance) + ")");
  row("witness cost", str(g.witness_cost));
  row("ratio", str(g.ratio));
  std::cout << "  " << g.conclusion << "\n";
  run.emit(io::gap_certificate_to_json(g));
  return kOk;
}

// ---------------------------------------------------------------- oracle

EnumerationBounds bounds_of(std::uint64_t nf, std::uint64_t m) { return EnumerationBounds{nf, m}; }

int cmd_oracle_enum(const std::string& path, const EnumerationBounds& b, const Common& c) {
  Run run("oracle enum", c);
  run.params() = {{"instance", path}, {"max_facilities", b.max_facilities}, {"max_clients", b.max_clients}};
  const Instance inst = io::instance_from_json(run.read(path));
  const auto sols = enumerate_integer_solutions(inst, b);
  std::cout << "integer solutions\n";
  row("count", std::to_string(sols.size()));
  Json list = Json::array();
  for (const auto& s : sols) list.push_back(io::solution_to_json(s));
  run.emit(Json{{"count", sols.size()}, {"solutions", list}});
  return kOk;
}

FracVector load_vector(Run& run, const std::string& path) {
  const Json j = run.read(path);
  if (j.contains("core_index")) return io::core_file_from_json(j).vector;
  return io::vector_from_json(j);
}

int cmd_oracle_member(const std::string& path, const std::string& vec, const std::vector<std::string>& mid,
                      const EnumerationBounds& b, const Common& c) {
  Run run("oracle member", c);
  run.params() = {{"instance", path}, {"vector", vec}, {"midpoint", mid}};
  const Instance inst = io::instance_from_json(run.read(path));
  std::optional<FracVector> v;
  std::optional<MidpointCertificate> cert;
  if (!vec.empty() == !mid.empty()) throw Error(Error::Kind::invalid_argument, "give exactly one of --vector and --midpoint");
  if (!vec.empty()) {
    v = load_vector(run, vec);
  } else {
    const auto a = load_core(run, mid.at(0)), b2 = load_core(run, mid.at(1));
    require_same_instance(a, b2);
    v = midpoint(a.vector, b2.vector);
    if (collides(a.index, b2.index)) cert = verify_midpoint(a.instance, a.index, b2.index);
  }
  const auto sols = enumerate_integer_solutions(inst, b);
  const MembershipResult r = membership_lp(*v, sols);
  const bool verified = verify_membership(r, *v, sols);
  std::cout << "membership in conv(P)\n";
  row("solutions", std::to_string(sols.size()));
  row("member", r.member ? "yes" : "no");
  row("certificate verified", verified ? "yes" : "no");
  if (r.member) row("support size", std::to_string(r.weights.size()));
  if (cert) row("rounding certificate valid", cert->valid() ? "yes" : "no");
  Json doc = io::membership_to_json(r);
  doc["certificate_verified"] = verified;
  if (cert) doc["rounding_certificate_valid"] = cert->valid();
  run.emit(doc);
  if (!verified) return kInternal;
  return r.member ? kOk : kFalse;
}

CostVector load_costs(Run& run, const std::string& path, const Instance& inst) {
  const Json j = run.read(path);
  try {
    std::vector<Rational> open, conn;
    for (const auto& e : j.at("opening")) open.push_back(io::rational_from(e));
    for (const auto& r : j.at("connection"))
      for (const auto& e : r) conn.push_back(io::rational_from(e));
    return CostVector::dense(inst.facility_count, inst.client_count, open, conn);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Error::Kind::invalid_argument, "cost file: " + std::string(e.what()));
  }
}

int cmd_oracle_opt(const std::string& path, const std::string& core_path, const std::string& costs,
                   const EnumerationBounds& b, const Common& c) {
  Run run("oracle opt", c);
  run.params() = {{"instance", path}, {"core", core_path}, {"costs", costs}};
  const Instance inst = io::instance_from_json(run.read(path));
  if (core_path.empty() == costs.empty()) throw Error(Error::Kind::invalid_argument, "give exactly one of --core and --costs");
  CostVector cost = costs.empty() ? build_gap_costs(inst, load_core(run, core_path).index) : load_costs(run, costs, inst);
  const OptResult r = brute_force_opt(inst, cost, b);
  std::cout << "brute-force optimum\n";
  row("value", str(r.value));
  Json doc{{"value", io::rational(r.value)}, {"witness", io::solution_to_json(r.witness)}};
  run.emit(doc);
  return kOk;
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case Error::Kind::io: return kIo;
    case Error::Kind::internal: return kInternal;
    default: return kInvalid;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integrality-gap lab for capacitated facility location LPs"};
  app.set_version_flag("--version", CFLGAP_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("-o,--output", common.output, "write the structured report here (plus FILE.manifest.json)");
  app.add_option("--seed", common.seed, "seed for randomized commands");
  app.add_option("--jobs", common.jobs, "worker threads for sampling and census")->check(CLI::Range(1u, 1024u));
  app.add_flag("--strict", common.strict, "treat parameter validity failures as fatal");

  std::function<int()> action;

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "generate an instance file");
  g->add_flag("--family", gen.family, "family instance I(t^2, a t^4, t^3)");
  g->add_flag("--general", gen.general, "explicit parameters");
  g->add_option("--t", gen.t)->required();
  g->add_option("--a", gen.a)->capture_default_str();
  g->add_option("--nf", gen.nf);
  g->add_option("--U", gen.U);
  g->add_option("--m", gen.m);
  g->add_option("--eps", gen.eps);
  g->add_option("--xl", gen.xl);
  g->callback([&] { action = [&] { return cmd_gen(gen, common); }; });

  CoreArgs core;
  auto* co = app.add_subcommand("core", "build a core vector file");
  core.source.add(co);
  co->add_option("--k", core.k, "k, e.g. 0..9");
  co->add_option("--l", core.l, "l, e.g. 10..19");
  co->add_flag("--random", core.random, "uniform disjoint (k, l); needs --seed");
  co->callback([&] { action = [&] { return cmd_core(core, common); }; });

  std::vector<std::string> pair;
  auto* cl = app.add_subcommand("collide", "exit 0 when two cores collide, 1 otherwise");
  cl->add_option("cores", pair)->expected(2)->required();
  cl->callback([&] { action = [&] { return cmd_collide(pair[0], pair[1], common); }; });

  std::string lp_path;
  auto* lp = app.add_subcommand("lpcheck", "check a core file's vector against the natural LP");
  lp->add_option("core", lp_path)->required();
  lp->callback([&] { action = [&] { return cmd_lpcheck(lp_path, common); }; });

  std::uint64_t probes = 0;
  auto* vm = app.add_subcommand("verify-midpoint", "exact rounding certificate for a colliding pair");
  vm->add_option("cores", pair)->expected(2)->required();
  vm->add_option("--probes", probes, "random single-coordinate probes (needs --seed)");
  vm->callback([&] { action = [&] { return cmd_verify_midpoint(pair[0], pair[1], probes, common); }; });

  std::uint64_t n_samples = 0;
  std::string solutions;
  auto* sa = app.add_subcommand("sample", "draw integer solutions from the rounding distribution");
  sa->add_option("cores", pair)->expected(2)->required();
  sa->add_option("--n", n_samples)->required();
  sa->add_option("--solutions", solutions, "also write every solution as JSON lines");
  sa->callback([&] { action = [&] { return cmd_sample(pair[0], pair[1], n_samples, solutions, common); }; });

  ShapeArgs shape;
  bool exact = false, formula_only = false;
  std::uint64_t mc = 0, max_pairs = 100'000;
  auto* ce = app.add_subcommand("census", "count cores that do not collide with a fixed one");
  shape.source.add(ce);
  ce->add_option("--nf", shape.nf, "facility count (shape only, with --t)");
  ce->add_flag("--exact", exact, "formula plus brute-force enumeration");
  ce->add_option("--mc", mc, "Monte Carlo samples (needs --seed)");
  ce->add_flag("--formula-only", formula_only, "skip enumeration");
  ce->add_option("--max-pairs", max_pairs, "enumeration bound")->capture_default_str();
  ce->callback([&] { action = [&] { return cmd_census(shape, exact, mc, formula_only, max_pairs, common); }; });

  auto* bo = app.add_subcommand("bound", "lower bound on the number of inequalities");
  shape.source.add(bo);
  bo->add_option("--nf", shape.nf, "facility count (shape only, with --t)");
  bo->callback([&] { action = [&] { return cmd_bound(shape, common); }; });

  InstanceSource cert_src;
  std::string cert_core;
  bool brute = false;
  auto* cf = app.add_subcommand("certify", "gap certificate for one core vector");
  cert_src.add(cf);
  cf->add_option("--core", cert_core, "core file (default core k={0..t-1}, l={t..2t-1} otherwise)");
  cf->add_flag("--brute-force", brute, "take opt from exhaustive enumeration");
  cf->callback([&] { action = [&] { return cmd_certify(cert_src, cert_core, brute, common); }; });

  auto* orc = app.add_subcommand("oracle", "exact polytope oracles on tiny instances");
  orc->require_subcommand(1);
  std::string orc_inst, orc_vec, orc_core, orc_costs;
  std::vector<std::string> orc_mid;
  std::uint64_t max_f = 4, max_c = 8;
  auto add_bounds = [&](CLI::App* cmd) {
    cmd->add_option("--instance", orc_inst)->required();
    cmd->add_option("--max-facilities", max_f)->capture_default_str();
    cmd->add_option("--max-clients", max_c)->capture_default_str();
  };
  auto* oe = orc->add_subcommand("enum", "enumerate integer solutions");
  add_bounds(oe);
  oe->callback([&] { action = [&] { return cmd_oracle_enum(orc_inst, bounds_of(max_f, max_c), common); }; });
  auto* om = orc->add_subcommand("member", "decide membership in conv(P); exit 1 for non-members");
  add_bounds(om);
  om->add_option("--vector", orc_vec, "vector or core file");
  om->add_option("--midpoint", orc_mid, "two core files")->expected(2);
  om->callback([&] { action = [&] { return cmd_oracle_member(orc_inst, orc_vec, orc_mid, bounds_of(max_f, max_c), common); }; });
  auto* oo = orc->add_subcommand("opt", "brute-force optimum");
  add_bounds(oo);
  oo->add_option("--core", orc_core, "use the gap costs of this core");
  oo->add_option("--costs", orc_costs, "dense cost file {opening: [...], connection: [[...]]}");
  oo->callback([&] { action = [&] { return cmd_oracle_opt(orc_inst, orc_core, orc_costs, bounds_of(max_f, max_c), common); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInvalid;
  }
  try {
    return action();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
