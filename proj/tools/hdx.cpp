// hdx: command line front end for the library.

#include "CLI11.hpp"
#include "json.hpp"

#include "hdx/cohomology.hpp"
#include "hdx/error.hpp"
#include "hdx/fixtures.hpp"
#include "hdx/matgroup.hpp"
#include "hdx/relations.hpp"
#include "hdx/rootsys.hpp"
#include "hdx/spectral.hpp"
#include "hdx/suite.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

using nlohmann::json;
using namespace hdx;

namespace {

enum Exit { kOk = 0, kVerification = 1, kUsage = 2, kResource = 3 };

struct Common {
  std::string out = "-";
  std::string format = "json";
  std::uint64_t seed = 1;
  unsigned workers = 0;
  bool timings = false;
};

constexpr std::uint64_t kGroupCap = 1ull << 26;
constexpr std::uint64_t kKernelCap = 1ull << 22;
constexpr std::uint64_t kCochainCap = 1ull << 24;
constexpr std::uint64_t kSearchNodeCap = 1ull << 26;

struct Params {
  std::uint32_t n = 2, p = 2, s = 3, d = 1;
  std::optional<std::uint64_t> cap;
  std::string preset;
  std::string complex_file;
  std::string lambda = "zmod:2";
  std::string mode;
  std::uint32_t stages = 2;
  std::uint32_t target_s = 0;
  std::uint32_t s_hi = 2, s_lo = 1;
  std::int32_t k = -1;
  std::optional<double> threshold;
  double tolerance = 1e-6;
  std::uint64_t proposals = 200;
  bool count_all = false;
  bool quick = false;
  std::vector<std::string> operands;
};

class Clock {
public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << "/" << r.denominator();
  return os.str();
}

json optional_rational(const std::optional<Rational>& r) { return r ? json(rational_str(*r)) : json(nullptr); }

json envelope(const Common& c, const std::string& command, json params, json caps) {
  return {{"tool", "hdx"},
          {"version", kToolVersion},
          {"command", command},
          {"seed", c.seed},
          {"params", std::move(params)},
          {"caps", std::move(caps)}};
}

void render_text(std::ostream& os, const json& j, const std::string& prefix) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_text(os, v, prefix.empty() ? k : prefix + "." + k);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(os, j[i], prefix + "[" + std::to_string(i) + "]");
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void write_suite_table(std::ostream& os, const json& rep) {
  for (const auto& c : rep["criteria"])
    os << (c["pass"].get<bool>() ? "PASS" : "FAIL") << "  " << c["id"].get<int>() << "  "
       << c["title"].get<std::string>() << "\n";
  os << rep["passed"].get<std::size_t>() << " passed, " << rep["failed"].get<std::size_t>() << " failed\n";
}

void emit(const Common& c, const json& j) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (c.out != "-") {
    file.open(c.out);
    if (!file) throw InputError("cannot write " + c.out);
    os = &file;
  }
  if (c.format == "text") {
    if (j.value("command", "") == "suite") write_suite_table(*os, j);
    else render_text(*os, j, "");
  } else {
    *os << j.dump(2) << "\n";
  }
}

SimplicialComplex load_complex(const std::string& path) {
  if (path.empty()) throw ParameterError("--complex is required");
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  return read_complex(in);
}

json face_counts(const SimplicialComplex& x) {
  json counts = json::array();
  for (int k = 0; k <= x.dim(); ++k) counts.push_back(x.face_count(k));
  return counts;
}

json complex_stats(const SimplicialComplex& x) {
  json sums = json::array();
  bool normalized = true;
  for (const auto& w : weight_sums(x)) {
    sums.push_back(rational_str(w));
    normalized = normalized && w == Rational(1);
  }
  return {{"dim", x.dim()},
          {"vertex_count", x.vertex_count()},
          {"face_counts", face_counts(x)},
          {"weight_sums", sums},
          {"weights_normalized", normalized},
          {"colored", x.colored()},
          {"partite", x.is_partite()},
          {"pure", x.is_pure()},
          {"components", x.component_count()}};
}

// ---------------------------------------------------------------------------

TruncPoly read_operand(const std::string& text, const Params& a) {
  if (!text.empty() && text.front() == '[') return parse_compact(text);
  return parse_poly(text, a.p, a.s);
}

int cmd_ring(const Common& c, const Params& a, const std::string& op) {
  std::size_t need = op == "add" || op == "mul" ? 2 : 1;
  if (a.operands.size() != need) throw ParameterError("ring " + op + " takes " + std::to_string(need) + " operand(s)");
  std::vector<TruncPoly> xs;
  for (const auto& t : a.operands) xs.push_back(read_operand(t, a));
  TruncPoly r = xs[0];
  if (op == "add") r = xs[0] + xs[1];
  else if (op == "mul") r = xs[0] * xs[1];
  else if (op == "inv") r = xs[0].inverse();
  json j = envelope(c, "ring " + op, {{"p", xs[0].p()}, {"s", xs[0].s()}, {"operands", a.operands}}, json::object());
  j["result"] = {{"text", r.to_string()}, {"compact", r.to_compact()}, {"degree", r.degree()}, {"unit", r.is_unit()}};
  emit(c, j);
  return kOk;
}

int cmd_group_enum(const Common& c, const Params& a) {
  const std::uint64_t cap = a.cap.value_or(kGroupCap);
  FiniteGroup g = a.k < 0 ? special_linear(a.n, a.p, a.s, cap)
                          : subgroup_K(a.n, a.p, a.s, a.d, static_cast<std::uint32_t>(a.k), cap);
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (c.out != "-") {
    file.open(c.out);
    if (!file) throw InputError("cannot write " + c.out);
    os = &file;
  }
  write_group_dump(*os, g, a.n, a.p, a.s);
  if (c.out != "-") {
    json params = {{"n", a.n}, {"p", a.p}, {"s", a.s}};
    if (a.k >= 0) params["d"] = a.d, params["k"] = a.k;
    json j = envelope(c, "group enum", params, {{"elements", cap}});
    j["order"] = g.size();
    j["file"] = c.out;
    std::cout << j.dump(2) << "\n";
  }
  return kOk;
}

int cmd_group_kernel(const Common& c, const Params& a) {
  const std::uint64_t cap = a.cap.value_or(kKernelCap);
  auto ker = reduction_kernel(a.n, a.p, a.s_hi, a.s_lo, cap);
  std::map<std::uint64_t, std::uint64_t> orders;
  for (ElemIndex x = 0; x < ker.size(); ++x) ++orders[element_order(ker, x)];
  json hist = json::object();
  for (auto [o, cnt] : orders) hist[std::to_string(o)] = cnt;
  bool exact_p = orders.size() <= 2 && (orders.size() == 1 || orders.count(a.p));
  json j = envelope(c, "group kernel", {{"n", a.n}, {"p", a.p}, {"s_hi", a.s_hi}, {"s_lo", a.s_lo}},
                    {{"elements", cap}});
  j["order"] = ker.size();
  j["element_orders"] = hist;
  j["all_nonidentity_order_p"] = exact_p;
  emit(c, j);
  return exact_p ? kOk : kVerification;
}

SimplicialComplex preset_complex(const Params& a, json& info) {
  const std::string& p = a.preset;
  if (p == "ko") {
    auto ko = ko_instance(a.n, a.p, a.s, a.d, a.cap.value_or(kGroupCap));
    json orders = json::array();
    for (const auto& k : ko.subgroups) orders.push_back(k.size());
    info = {{"group_order", ko.group.size()}, {"subgroup_orders", orders}};
    return coset_complex(ko.group, ko.subgroups).complex;
  }
  if (p == "torus") return torus7();
  if (p == "sphere") return tetrahedron_boundary();
  if (p == "triangle") return single_triangle();
  if (p == "edge") return single_edge();
  for (const auto& inst : coset_zoo()) {
    std::string key = p == "s3" ? "S3 <(1 2)>,<(2 3)>" : p == "s4" ? "S4 Coxeter" : p == "b3" ? "B3 Coxeter" : "";
    if (inst.name == key) {
      info = {{"group_order", inst.group.size()}};
      return coset_complex(inst.group, inst.subgroups).complex;
    }
  }
  throw ParameterError("unknown preset '" + p + "' (ko, torus, sphere, triangle, edge, s3, s4, b3)");
}

json preset_params(const Params& a) {
  json j = {{"preset", a.preset}};
  if (a.preset == "ko") j.update({{"n", a.n}, {"p", a.p}, {"s", a.s}, {"d", a.d}});
  return j;
}

int cmd_complex_build(const Common& c, const Params& a) {
  Clock clock;
  json info = json::object();
  SimplicialComplex x = preset_complex(a, info);
  std::ofstream file;
  if (c.out == "-") {
    write_complex(std::cout, x);
    return kOk;
  }
  file.open(c.out);
  if (!file) throw InputError("cannot write " + c.out);
  write_complex(file, x);
  json j = envelope(c, "complex build", preset_params(a), {{"group_elements", a.cap.value_or(kGroupCap)}});
  j["file"] = c.out;
  j["stats"] = complex_stats(x);
  j["construction"] = info;
  if (c.timings) j["wall_seconds"] = clock.seconds();
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int cmd_complex_stats(const Common& c, const Params& a) {
  SimplicialComplex x = load_complex(a.complex_file);
  json j = envelope(c, "complex stats", {{"complex", a.complex_file}}, json::object());
  j["stats"] = complex_stats(x);
  emit(c, j);
  return kOk;
}

json oriented_cochain(const SimplicialComplex& x, const Cochain1& phi) {
  json out = json::array();
  const auto& edges = x.faces(1);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto f = edges.face(e);
    out.push_back({f[0], f[1], phi[e]});
  }
  return out;
}

int cmd_cohomology_h1(const Common& c, const Params& a) {
  SimplicialComplex x = load_complex(a.complex_file);
  auto L = CoefficientGroup::parse(a.lambda);
  H1Mode mode = a.mode == "brute" ? H1Mode::brute : H1Mode::gauge;
  if (!a.mode.empty() && a.mode != "brute" && a.mode != "gauge") throw ParameterError("--mode must be gauge or brute");
  H1Options opts;
  opts.cap = a.cap.value_or(kCochainCap);
  opts.count_all = a.count_all;
  opts.workers = c.workers;
  auto r = h1_trivial(x, L, mode, opts);
  json j = envelope(c, "cohomology h1",
                    {{"complex", a.complex_file}, {"lambda", L.name()}, {"mode", mode == H1Mode::brute ? "brute" : "gauge"},
                     {"count_all", a.count_all}},
                    {{"cochains", opts.cap}, {"steps", opts.step_cap}});
  j["trivial"] = r.trivial;
  j["cocycles"] = r.cocycles;
  j["coboundaries"] = r.coboundaries ? json(*r.coboundaries) : json(nullptr);
  j["classes"] = r.classes ? json(*r.classes) : json(nullptr);
  j["witness"] = r.witness ? oriented_cochain(x, *r.witness) : json(nullptr);
  emit(c, j);
  return kOk;
}

int cmd_expansion(const Common& c, const Params& a, int degree) {
  SimplicialComplex x = load_complex(a.complex_file);
  auto L = CoefficientGroup::parse(a.lambda);
  std::string mode = a.mode.empty() ? "exact" : a.mode;
  const std::uint64_t cap = a.cap.value_or(mode == "search" ? kSearchNodeCap : kCochainCap);
  json params = {{"complex", a.complex_file}, {"lambda", L.name()}, {"mode", mode}};
  json j;
  if (degree == 0) {
    if (mode != "exact") throw ParameterError("h0 supports --mode exact only");
    j = envelope(c, "expansion h0", params, {{"cochains", cap}});
    j["h0_cobound"] = rational_str(expansion_h0(x, L, cap));
  } else if (mode == "exact") {
    j = envelope(c, "expansion h1", params, {{"cochains", cap}});
    auto r = expansion_h1_exact(x, L, cap);
    j["h1_cobound"] = optional_rational(r.cobound);
    j["h1_cosys"] = optional_rational(r.cosys);
    j["systole"] = optional_rational(r.systole);
    j["cochains"] = r.cochains;
    j["orbits"] = r.orbits;
  } else if (mode == "search") {
    params["proposals"] = a.proposals;
    j = envelope(c, "expansion h1", params, {{"search_nodes", cap}});
    auto r = expansion_h1_search(x, L, a.proposals, c.seed, cap);
    j["h1_cobound_upper_bound"] = optional_rational(r.upper_bound);
    j["proposals"] = r.proposals;
    j["best"] = r.upper_bound ? oriented_cochain(x, r.best) : json(nullptr);
  } else {
    throw ParameterError("--mode must be exact or search");
  }
  emit(c, j);
  return kOk;
}

int cmd_propagate(const Common& c, const Params& a) {
  Clock clock;
  auto r = verify_propagation(static_cast<int>(a.n), static_cast<int>(a.stages), c.workers);
  json uncovered = json::array();
  for (const auto& stage : r.uncovered) {
    json s = json::array();
    for (const auto& [x, y] : stage) s.push_back({x.to_string(), y.to_string()});
    uncovered.push_back(s);
  }
  json j = envelope(c, "propagate", {{"n", a.n}, {"stages", a.stages}}, json::object());
  j["total_pairs"] = r.total_pairs;
  j["stage_sizes"] = r.stage_sizes;
  j["covered_pairs"] = r.covered_pairs;
  j["uncovered"] = uncovered;
  j["monotone"] = r.monotone;
  j["complete"] = r.complete();
  if (c.timings) j["wall_seconds"] = clock.seconds();
  emit(c, j);
  return r.complete() ? kOk : kVerification;
}

Presentation preset_presentation(const Params& a) {
  int n = static_cast<int>(a.n);
  if (a.preset == "sl") return presentation_SL(n, a.p, a.d);
  if (a.preset == "unip") return presentation_unipotent(n + 1, a.p, a.d);
  if (a.preset == "chamber") return chamber_relation_sets(n, a.p, a.d).chamber;
  if (a.preset == "prechamber") return chamber_relation_sets(n, a.p, a.d).pre_chamber;
  if (a.preset == "tilde") return tilde_gamma_presentation(n, a.p, a.d);
  throw ParameterError("unknown preset '" + a.preset + "' (sl, unip, chamber, prechamber, tilde)");
}

json relations_params(const Params& a) { return {{"preset", a.preset}, {"n", a.n}, {"p", a.p}, {"d", a.d}}; }

int cmd_relations_emit(const Common& c, const Params& a) {
  auto pres = preset_presentation(a);
  json gens = json::array();
  for (const auto& g : pres.generators) gens.push_back(g.to_string());
  json rels = json::array();
  for (const auto& r : pres.relations)
    rels.push_back({{"kind", to_string(r.kind)},
                    {"lhs", word_to_string(r.lhs)},
                    {"rhs", word_to_string(r.rhs)},
                    {"source", {r.source.first.to_string(), r.source.second.to_string()}}});
  json pairs = json::array();
  for (const auto& [x, y] : pres.relation_pairs()) pairs.push_back({x.to_string(), y.to_string()});
  json j = envelope(c, "relations emit", relations_params(a), json::object());
  j["name"] = pres.name;
  j["generators"] = gens;
  j["relation_pairs"] = pairs;
  j["relations"] = rels;
  j["relation_count"] = pres.relations.size();
  emit(c, j);
  return kOk;
}

int cmd_relations_verify(const Common& c, const Params& a) {
  if (a.target_s == 0) throw ParameterError("--target-s is required");
  auto pres = preset_presentation(a);
  const int n = static_cast<int>(a.n);
  const std::uint32_t s = a.target_s;
  auto rep = verify_relations(
      pres, [n, s](const GeneratorSymbol& g) { return elementary_image(n, s, g); },
      MatrixOps{a.n + 1, a.p, s}, c.workers);
  json violated = json::array();
  for (std::size_t k : rep.violated) {
    const auto& r = pres.relations[k];
    violated.push_back({{"index", k}, {"kind", to_string(r.kind)}, {"lhs", word_to_string(r.lhs)}, {"rhs", word_to_string(r.rhs)}});
  }
  json params = relations_params(a);
  params["target_s"] = s;
  json j = envelope(c, "relations verify", params, json::object());
  j["checked"] = rep.checked;
  j["violations"] = rep.violated.size();
  j["violated"] = violated;
  emit(c, j);
  return rep.ok() ? kOk : kVerification;
}

json spectral_json(const LocalSpectralReport& r) {
  json links = json::array();
  for (const auto& l : r.links)
    links.push_back({{"link", l.label},
                     {"face", l.face},
                     {"vertices", l.vertices},
                     {"components", l.components},
                     {"second", l.second ? json(*l.second) : json(nullptr)}});
  return {{"links", links},
          {"threshold", r.threshold},
          {"tolerance", r.tolerance},
          {"max_second", r.max_second ? json(*r.max_second) : json(nullptr)},
          {"pass", r.pass}};
}

int cmd_spectral_links(const Common& c, const Params& a) {
  LocalSpectralReport rep;
  json params;
  if (!a.complex_file.empty()) {
    if (!a.threshold) throw ParameterError("--threshold is required with --complex");
    rep = local_spectral_report(load_complex(a.complex_file), *a.threshold, a.tolerance, c.workers);
    params = {{"complex", a.complex_file}};
  } else {
    if (a.preset != "ko") throw ParameterError("spectral links needs --preset ko or --complex F");
    double thr;
    if (a.threshold) thr = *a.threshold;
    else if (std::sqrt(double(a.p)) > a.n) thr = 1.0 / (std::sqrt(double(a.p)) - a.n);
    else throw ParameterError("no default threshold when sqrt(p) <= n; pass --threshold");
    rep = ko_link_report(a.n, a.p, a.s, a.d, thr, a.tolerance, a.cap.value_or(kGroupCap), c.workers);
    params = preset_params(a);
  }
  params["threshold"] = rep.threshold;
  params["tolerance"] = rep.tolerance;
  json j = envelope(c, "spectral links", params, {{"group_elements", a.cap.value_or(kGroupCap)}});
  j["report"] = spectral_json(rep);
  emit(c, j);
  return rep.pass ? kOk : kVerification;
}

int cmd_suite(const Common& c, const Params& a) {
  SuiteOptions opts{a.quick, c.seed, c.workers};
  auto rep = run_suite(opts, [](const CriterionResult& r) {
    std::cerr << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "  " << r.title << "\n";
  });
  emit(c, rep.to_json(c.timings));
  return rep.pass() ? kOk : kVerification;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-dimensional expander toolkit: coset complexes, cohomology and spectra"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  Params a;
  app.add_option("--out", common.out, "Output path, - for standard output")->capture_default_str();
  app.add_option("--format", common.format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("--seed", common.seed, "Random seed recorded in every report")->capture_default_str();
  app.add_option("--workers", common.workers, "Worker threads, 0 for all cores")->capture_default_str();
  app.add_flag("--timings", common.timings, "Add wall-clock times (breaks byte-identical output)");

  auto add_nps = [&](CLI::App* sub, bool with_d) {
    sub->add_option("--n", a.n, "Rank: matrices are (n+1) x (n+1)")->capture_default_str();
    sub->add_option("--p", a.p, "Prime")->capture_default_str();
    sub->add_option("--s", a.s, "Truncation: F_p[t]/t^s")->capture_default_str();
    if (with_d) sub->add_option("--d", a.d, "Degree bound")->capture_default_str();
  };

  // ring
  auto ring = app.add_subcommand("ring", "Arithmetic in F_p[t]/t^s");
  ring->require_subcommand(1);
  std::string ring_op;
  for (const char* op : {"add", "mul", "inv"}) {
    auto sub = ring->add_subcommand(op, std::string(op) + " of polynomials in text or compact form");
    sub->add_option("--p", a.p, "Prime")->capture_default_str();
    sub->add_option("--s", a.s, "Truncation")->capture_default_str();
    sub->add_option("operands", a.operands, "Polynomials")->required();
    sub->callback([&, op] { ring_op = op; });
  }

  // group
  auto group = app.add_subcommand("group", "Matrix groups over F_p[t]/t^s");
  group->require_subcommand(1);
  auto genum = group->add_subcommand("enum", "Dump SL_{n+1}(F_p[t]/t^s), or K_k with --k");
  add_nps(genum, true);
  genum->add_option("--k", a.k, "Dump the subgroup K_k instead")->capture_default_str();
  genum->add_option("--cap", a.cap, "Element cap");
  auto gker = group->add_subcommand("kernel", "Element orders of a congruence kernel");
  gker->add_option("--n", a.n)->capture_default_str();
  gker->add_option("--p", a.p)->capture_default_str();
  gker->add_option("--s-hi", a.s_hi)->capture_default_str();
  gker->add_option("--s-lo", a.s_lo)->capture_default_str();
  gker->add_option("--cap", a.cap, "Element cap");

  // complex
  auto cx = app.add_subcommand("complex", "Build and inspect complexes");
  cx->require_subcommand(1);
  auto cbuild = cx->add_subcommand("build", "Build a preset complex and write it to --out");
  cbuild->add_option("--preset", a.preset, "ko, torus, sphere, triangle, edge, s3, s4, b3")->required();
  add_nps(cbuild, true);
  cbuild->add_option("--cap", a.cap, "Group element cap");
  auto cstats = cx->add_subcommand("stats", "Face counts, weight sums and partiteness of a complex file");
  cstats->add_option("file", a.complex_file, "Complex file")->required();

  // cohomology
  auto coh = app.add_subcommand("cohomology", "First cohomology with group coefficients");
  coh->require_subcommand(1);
  auto h1 = coh->add_subcommand("h1", "Decide whether H^1(X, Lambda) is trivial");
  h1->add_option("--complex", a.complex_file, "Complex file")->required();
  h1->add_option("--lambda", a.lambda, "zmod:m, sym:k or table:FILE")->capture_default_str();
  h1->add_option("--mode", a.mode, "gauge or brute")->check(CLI::IsMember({"gauge", "brute"}));
  h1->add_option("--cap", a.cap, "Brute-force cochain cap");
  h1->add_flag("--count-all", a.count_all, "Count every tree-trivial cocycle and the classes");

  // expansion
  auto ex = app.add_subcommand("expansion", "Coboundary and cosystolic expansion constants");
  ex->require_subcommand(1);
  int degree = 1;
  for (int k : {0, 1}) {
    auto sub = ex->add_subcommand("h" + std::to_string(k), "Degree-" + std::to_string(k) + " constants");
    sub->add_option("--complex", a.complex_file, "Complex file")->required();
    sub->add_option("--lambda", a.lambda, "zmod:m, sym:k or table:FILE")->capture_default_str();
    sub->add_option("--mode", a.mode, "exact or search")->check(CLI::IsMember({"exact", "search"}));
    sub->add_option("--cap", a.cap, "Cochain cap (exact) or search node cap (search)");
    sub->add_option("--proposals", a.proposals, "Search proposals")->capture_default_str();
    sub->callback([&degree, k] { degree = k; });
  }

  // propagate
  auto prop = app.add_subcommand("propagate", "Chamber propagation coverage report");
  prop->add_option("--n", a.n, "Rank, 3..7")->required();
  prop->add_option("--stages", a.stages, "Number of stages")->capture_default_str();

  // relations
  auto rel = app.add_subcommand("relations", "Root-pair relation sets");
  rel->require_subcommand(1);
  auto remit = rel->add_subcommand("emit", "Emit a presentation as JSON");
  auto rver = rel->add_subcommand("verify", "Evaluate a presentation in SL_{n+1}(F_p[t]/t^S)");
  for (auto sub : {remit, rver}) {
    sub->add_option("--preset", a.preset, "sl, unip, chamber, prechamber, tilde")
        ->required()
        ->check(CLI::IsMember({"sl", "unip", "chamber", "prechamber", "tilde"}));
    sub->add_option("--n", a.n)->capture_default_str();
    sub->add_option("--p", a.p)->capture_default_str();
    sub->add_option("--d", a.d)->capture_default_str();
  }
  rver->add_option("--target-s", a.target_s, "Truncation of the target ring")->required();

  // spectral
  auto spec = app.add_subcommand("spectral", "Local spectral expansion");
  spec->require_subcommand(1);
  auto links = spec->add_subcommand("links", "Second eigenvalues of links");
  links->add_option("--preset", a.preset, "ko");
  links->add_option("--complex", a.complex_file, "Complex file (all links of faces up to dim-2)");
  add_nps(links, true);
  links->add_option("--threshold", a.threshold, "Default 1/(sqrt(p) - n) for the ko preset");
  links->add_option("--tolerance", a.tolerance)->capture_default_str();
  links->add_option("--cap", a.cap, "Subgroup element cap");

  // suite
  auto suite = app.add_subcommand("suite", "Run the acceptance battery");
  suite->add_flag("--quick", a.quick, "Reduced instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (ring->parsed()) return cmd_ring(common, a, ring_op);
    if (genum->parsed()) return cmd_group_enum(common, a);
    if (gker->parsed()) return cmd_group_kernel(common, a);
    if (cbuild->parsed()) return cmd_complex_build(common, a);
    if (cstats->parsed()) return cmd_complex_stats(common, a);
    if (h1->parsed()) return cmd_cohomology_h1(common, a);
    if (ex->parsed()) return cmd_expansion(common, a, degree);
    if (prop->parsed()) return cmd_propagate(common, a);
    if (remit->parsed()) return cmd_relations_emit(common, a);
    if (rver->parsed()) return cmd_relations_verify(common, a);
    if (links->parsed()) return cmd_spectral_links(common, a);
    if (suite->parsed()) return cmd_suite(common, a);
  } catch (const ParameterError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kResource;
  } catch (const StructuralError& e) {
    std::cerr << "structural error: " << e.what() << "\n";
    return kVerification;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kVerification;
  }
  return kUsage;
}
