#include "hdx/suite.hpp"

#include "hdx/cohomology.hpp"
#include "hdx/error.hpp"
#include "hdx/fixtures.hpp"
#include "hdx/matgroup.hpp"
#include "hdx/matrix.hpp"
#include "hdx/relations.hpp"
#include "hdx/rootsys.hpp"
#include "hdx/spectral.hpp"

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <sstream>

namespace hdx {

using nlohmann::json;

namespace {

// Pinned limits and tolerances.
constexpr double kPropagationSeconds = 10;
constexpr double kRelationSeconds = 60;
constexpr double kKoBuildSeconds = 1800;
constexpr double kKoBuildBytes = 16.0 * (1ull << 30);
constexpr double kFixtureTol = 1e-9;
constexpr double kLinkTol = 1e-6;
constexpr std::uint64_t kGroupCap = 1ull << 26;
constexpr std::uint64_t kCochainCap = 1ull << 24;

std::uint64_t kernel_cap(bool quick) { return quick ? 1ull << 16 : 1ull << 24; }
std::size_t commutator_samples(bool quick) { return quick ? 1000 : 5000; }

class Stopwatch {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

double peak_rss_bytes() {
  rusage u{};
  getrusage(RUSAGE_SELF, &u);
  return static_cast<double>(u.ru_maxrss) * 1024.0;
}

std::string str(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << "/" << r.denominator();
  return os.str();
}

// Rounded so that reports do not depend on the last bits of a solver.
double rounded(double x) { return std::round(x * 1e12) / 1e12; }

struct WeightEntry {
  std::string label;
  std::vector<std::string> sums;
  bool ok;
};

struct Context {
  SuiteOptions opts;
  std::vector<WeightEntry> weights;

  void record_weights(const std::string& label, const SimplicialComplex& x) {
    auto sums = weight_sums(x);
    WeightEntry e{label, {}, true};
    for (const auto& s : sums) {
      e.sums.push_back(str(s));
      e.ok = e.ok && s == Rational(1);
    }
    weights.push_back(std::move(e));
  }
};

// ---------------------------------------------------------------------------

CriterionResult propagation(Context& c) {
  CriterionResult r{1, "propagation: stage-2 coverage of non-opposite root pairs, n = 3, 4, 5", true, {}, {}};
  Stopwatch sw;
  json runs = json::array();
  for (int n = 3; n <= 5; ++n) {
    auto rep = verify_propagation(n, 2, c.opts.workers);
    runs.push_back({{"n", n},
                    {"stage_sizes", rep.stage_sizes},
                    {"covered_pairs", rep.covered_pairs},
                    {"total_pairs", rep.total_pairs},
                    {"monotone", rep.monotone},
                    {"complete", rep.complete()}});
    r.pass = r.pass && rep.complete() && rep.monotone;
  }
  double t = sw.seconds();
  bool fast = t < kPropagationSeconds;
  r.pass = r.pass && fast;
  r.details = {{"runs", runs}, {"time_limit_s", kPropagationSeconds}, {"within_time_limit", fast}};
  r.measurements = {{"seconds", t}};
  return r;
}

CriterionResult chamber_lemmas(Context&) {
  CriterionResult r{2, "chamber lemmas: exhaustive for n <= 6", true, {}, {}};
  json rows = json::array();
  std::uint64_t total_bad = 0;
  for (int n = 2; n <= 6; ++n) {
    ChamberSet c0 = initial_chambers(n);
    std::uint64_t shared_checked = 0, shared_bad = 0;
    for (Root a : all_roots(n))
      for (Root b : all_roots(n))
        if (a.i == b.i || a.j == b.j) {
          ++shared_checked;
          shared_bad += !c0.pair_covered(a, b);
        }
    std::uint64_t simple_checked = 0, simple_bad = 0;
    for (int i = 1; i <= n; ++i)
      for (Root b : all_roots(n))
        if (b != Root{i + 1, i}) {
          ++simple_checked;
          simple_bad += !c0.pair_covered({i, i + 1}, b);
        }
    std::uint64_t boundary_checked = 0, boundary_bad = 0;
    for (int l = 1; l <= n - 1; ++l) {
      ++boundary_checked;
      boundary_bad += boundary_of_gamma1_power(n, l) != chamber_boundary(power(gamma1(n), l));
    }
    std::vector<Permutation> rotated;
    for (int t = 0; t <= n; ++t)
      for (int l = 0; l <= n - 1; ++l) rotated.push_back(compose(power(gamma0(n), t), power(gamma1(n), l)));
    ChamberSet cs(n, 0, rotated);
    std::uint64_t general_checked = 0, general_bad = 0;
    for (const auto& [a, b] : non_opposite_pairs(n)) {
      ++general_checked;
      general_bad += !cs.pair_covered(a, b);
    }
    total_bad += shared_bad + simple_bad + boundary_bad + general_bad;
    rows.push_back({{"n", n},
                    {"shared_index", {{"checked", shared_checked}, {"counterexamples", shared_bad}}},
                    {"simple_root", {{"checked", simple_checked}, {"counterexamples", simple_bad}}},
                    {"gamma1_boundary", {{"checked", boundary_checked}, {"counterexamples", boundary_bad}}},
                    {"rotated_chambers", {{"checked", general_checked}, {"counterexamples", general_bad}}}});
  }
  r.pass = total_bad == 0;
  r.details = {{"by_n", rows}, {"counterexamples", total_bad}};
  return r;
}

CriterionResult steinberg(Context& c) {
  CriterionResult r{3, "Steinberg relations hold in SL_4(F_p[t]/t^4), n = 3, d = 1, p = 3, 5", true, {}, {}};
  Stopwatch sw;
  json runs = json::array();
  for (std::uint32_t p : {3u, 5u}) {
    auto pres = presentation_SL(3, p, 1);
    auto rep = verify_relations(
        pres, [](const GeneratorSymbol& g) { return elementary_image(3, 4, g); }, MatrixOps{4, p, 4},
        c.opts.workers);
    runs.push_back({{"p", p}, {"relations", rep.checked}, {"violations", rep.violated.size()}});
    r.pass = r.pass && rep.ok() && rep.checked > 0;
  }
  double t = sw.seconds();
  bool fast = t < kRelationSeconds;
  r.pass = r.pass && fast;
  r.details = {{"runs", runs}, {"target_s", 4}, {"time_limit_s", kRelationSeconds}, {"within_time_limit", fast}};
  r.measurements = {{"seconds", t}};
  return r;
}

CriterionResult commutator_power(Context& c) {
  CriterionResult r{4, "[x,y]^p = [x^p,y] on sampled elementary pairs with [x,[x,y]] = e", true, {}, {}};
  const std::size_t want = commutator_samples(c.opts.quick);
  const std::uint32_t dim = 4, s = 5;
  std::mt19937_64 rng(c.opts.seed);
  json runs = json::array();
  std::size_t total = 0, bad_total = 0;
  for (std::uint32_t p : {2u, 3u, 5u}) {
    std::size_t qualifying = 0, tried = 0, bad = 0;
    const std::size_t target = want / 3 + (p == 2 ? want % 3 : 0);
    while (qualifying < target && tried < 100 * target) {
      ++tried;
      std::uint32_t i = rng() % dim + 1, j = rng() % dim + 1, k = rng() % dim + 1, l = rng() % dim + 1;
      if (i == j || k == l) continue;
      std::vector<std::int64_t> a(s), b(s);
      for (auto& x : a) x = static_cast<std::int64_t>(rng() % p);
      for (auto& x : b) x = static_cast<std::int64_t>(rng() % p);
      auto x = MatElement::elementary(dim, i, j, TruncPoly(p, s, a));
      auto y = MatElement::elementary(dim, k, l, TruncPoly(p, s, b));
      auto xy = commutator(x, y);
      if (!commutator(x, xy).is_identity()) continue;
      ++qualifying;
      bad += !(xy.pow(p) == commutator(x.pow(p), y));
    }
    runs.push_back({{"p", p}, {"dim", dim}, {"s", s}, {"qualifying", qualifying}, {"tried", tried}, {"violations", bad}});
    total += qualifying;
    bad_total += bad;
  }
  r.pass = total >= want && bad_total == 0;
  r.details = {{"runs", runs}, {"qualifying", total}, {"required", want}, {"violations", bad_total}};
  return r;
}

CriterionResult quotient_proposition(Context& c) {
  CriterionResult r{5, "quotient of a coset complex is the coset complex of the quotient group", true, {}, {}};
  json rows = json::array();
  std::size_t checked = 0, failures = 0;
  for (const auto& inst : coset_zoo()) {
    auto cc = coset_complex(inst.group, inst.subgroups);
    c.record_weights(inst.name, cc.complex);
    for (const auto& n : inst.normals) {
      bool ok = verify_quotient_proposition(inst.group, inst.subgroups, n);
      ++checked;
      failures += !ok;
      rows.push_back({{"instance", inst.name}, {"group_order", inst.group.size()}, {"normal_order", n.size()}, {"ok", ok}});
    }
  }
  r.pass = checked >= 10 && failures == 0;
  r.details = {{"checks", rows}, {"checked", checked}, {"failures", failures}};
  return r;
}

CriterionResult weight_normalization(Context& c) {
  CriterionResult r{6, "weights sum to 1 in every dimension of every constructed complex", true, {}, {}};
  c.record_weights("torus7", torus7());
  c.record_weights("tetrahedron boundary", tetrahedron_boundary());
  c.record_weights("single triangle", single_triangle());
  c.record_weights("single edge", single_edge());
  c.record_weights("K_5", complete_graph(5));
  c.record_weights("C_6", cycle_graph(6));
  std::size_t small = 0;
  for (const auto& x : small_complexes(9, 8)) {
    c.record_weights("small complex " + std::to_string(small), x);
    ++small;
  }
  for (const auto& inst : coset_zoo()) {
    auto cc = coset_complex(inst.group, inst.subgroups);
    for (std::size_t k = 0; k < inst.normals.size(); ++k) {
      auto q = quotient_by_action(cc.complex, left_action(cc, inst.group, inst.normals[k].codes()));
      c.record_weights(inst.name + " / N" + std::to_string(k), q.complex);
    }
  }
  auto ks = ko_subgroups(2, 3, 3, 1, kGroupCap);
  for (std::size_t i = 0; i < ks.size(); ++i)
    c.record_weights("link of K_" + std::to_string(i) + " (n=2, p=3, s=3, d=1)", vertex_link(ks, i).complex);

  json entries = json::array();
  std::size_t bad = 0;
  for (const auto& e : c.weights) {
    bad += !e.ok;
    if (e.label.rfind("small complex ", 0) == 0 && e.ok) continue;
    entries.push_back({{"complex", e.label}, {"sums", e.sums}, {"ok", e.ok}});
  }
  r.pass = bad == 0 && !c.weights.empty();
  r.details = {{"complexes", c.weights.size()}, {"small_complexes", small}, {"failures", bad}, {"listed", entries}};
  return r;
}

CriterionResult h1_cross_validation(Context& c) {
  CriterionResult r{7, "H^1: gauge and brute modes agree; sphere and torus fixtures", true, {}, {}};
  H1Options all;
  all.count_all = true;
  all.cap = kCochainCap;
  all.workers = c.opts.workers;
  auto zoo = small_complexes(9, 8);
  std::size_t compared = 0, disagreements = 0, nontrivial = 0;
  for (const auto& x : zoo)
    for (std::uint32_t m : {1u, 2u, 3u}) {
      auto L = CoefficientGroup::zmod(m);
      auto g = h1_trivial(x, L, H1Mode::gauge, all);
      auto b = h1_trivial(x, L, H1Mode::brute, all);
      ++compared;
      disagreements += g.trivial != b.trivial || g.classes != b.classes;
      nontrivial += !b.trivial;
    }
  json sphere = json::array();
  bool sphere_ok = true;
  for (const auto& L : {CoefficientGroup::zmod(2), CoefficientGroup::zmod(3), CoefficientGroup::symmetric(3)}) {
    auto g = h1_trivial(tetrahedron_boundary(), L, H1Mode::gauge, all);
    auto b = h1_trivial(tetrahedron_boundary(), L, H1Mode::brute, all);
    sphere_ok = sphere_ok && g.trivial && b.trivial;
    sphere.push_back({{"lambda", L.name()}, {"gauge_trivial", g.trivial}, {"brute_trivial", b.trivial}});
  }
  auto z2 = CoefficientGroup::zmod(2);
  auto tb = h1_trivial(torus7(), z2, H1Mode::brute, all);
  auto tg = h1_trivial(torus7(), z2, H1Mode::gauge, all);
  std::uint64_t classes = tb.classes.value_or(0);
  bool torus_ok = !tb.trivial && !tg.trivial && classes == 4 && tg.classes == tb.classes;
  r.pass = disagreements == 0 && compared > 0 && sphere_ok && torus_ok;
  r.details = {{"small_complexes", zoo.size()},
               {"comparisons", compared},
               {"disagreements", disagreements},
               {"nontrivial_cases", nontrivial},
               {"sphere", sphere},
               {"torus_z2",
                {{"trivial", tb.trivial},
                 {"cocycles", tb.cocycles},
                 {"coboundaries", tb.coboundaries.value_or(0)},
                 {"classes", classes},
                 {"nontrivial_classes", classes ? classes - 1 : 0}}}};
  return r;
}

// Weighted Cheeger constant of the 1-skeleton by subset enumeration.
Rational cheeger_by_subsets(const SimplicialComplex& x) {
  const std::size_t nv = x.vertex_count();
  const std::int64_t n = x.dim();
  std::vector<std::int64_t> wv(nv, 0);
  std::map<std::pair<Vertex, Vertex>, std::int64_t> we;
  for (std::size_t f = 0; f < x.max_face_count(); ++f) {
    auto s = x.max_face(f);
    for (std::size_t a = 0; a < s.size(); ++a) {
      ++wv[s[a]];
      for (std::size_t b = a + 1; b < s.size(); ++b) ++we[{s[a], s[b]}];
    }
  }
  const std::int64_t top = static_cast<std::int64_t>(x.max_face_count());
  const std::int64_t den0 = (n + 1) * top, den1 = (n + 1) * n / 2 * top;
  std::int64_t total = 0;
  for (auto w : wv) total += w;
  std::optional<Rational> best;
  for (std::uint64_t mask = 1; mask + 1 < (1ull << nv); ++mask) {
    std::int64_t in = 0, cut = 0;
    for (std::size_t v = 0; v < nv; ++v)
      if (mask >> v & 1) in += wv[v];
    for (const auto& [e, w] : we)
      if ((mask >> e.first & 1) != (mask >> e.second & 1)) cut += w;
    Rational q(cut * den0, den1 * std::min(in, total - in));
    if (!best || q < *best) best = q;
  }
  return *best;
}

SimplicialComplex petersen() {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return graph(10, e);
}

SimplicialComplex grid(std::uint32_t rows, std::uint32_t cols) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex a = 0; a < rows; ++a)
    for (Vertex b = 0; b < cols; ++b) {
      if (b + 1 < cols) e.emplace_back(a * cols + b, a * cols + b + 1);
      if (a + 1 < rows) e.emplace_back(a * cols + b, (a + 1) * cols + b);
    }
  return graph(rows * cols, e);
}

CriterionResult expansion_constants(Context& c) {
  CriterionResult r{8, "expansion constants: h0 against weighted Cheeger, torus h1", true, {}, {}};
  auto z2 = CoefficientGroup::zmod(2);
  Rational tri = expansion_h0(single_triangle(), z2, kCochainCap);
  Rational tri_oracle = cheeger_by_subsets(single_triangle());
  bool tri_ok = tri == Rational(2) && tri_oracle == Rational(2);

  std::vector<std::pair<std::string, SimplicialComplex>> graphs{
      {"C_5", cycle_graph(5)},       {"C_6", cycle_graph(6)},         {"C_12", cycle_graph(12)},
      {"C_20", cycle_graph(20)},     {"K_4", complete_graph(4)},      {"K_7", complete_graph(7)},
      {"P_8", path_graph(8)},        {"Petersen", petersen()},        {"grid 4x5", grid(4, 5)},
      {"grid 3x3", grid(3, 3)},      {"torus7", torus7()},            {"tetrahedron boundary", tetrahedron_boundary()}};
  std::mt19937_64 rng(c.opts.seed);
  for (int k = 0; k < 4; ++k) {
    std::vector<std::pair<Vertex, Vertex>> e;
    std::uint32_t n = 6 + static_cast<std::uint32_t>(rng() % 10);
    for (Vertex a = 0; a + 1 < n; ++a) e.emplace_back(a, a + 1);
    for (int q = 0; q < 6; ++q) {
      Vertex a = static_cast<Vertex>(rng() % n), b = static_cast<Vertex>(rng() % n);
      if (a != b) e.emplace_back(std::min(a, b), std::max(a, b));
    }
    graphs.emplace_back("random " + std::to_string(k), graph(n, e));
  }
  json rows = json::array();
  std::size_t mismatches = 0;
  for (const auto& [name, x] : graphs) {
    Rational h = expansion_h0(x, z2, kCochainCap);
    Rational o = cheeger_by_subsets(x);
    mismatches += h != o;
    c.record_weights(name, x);
    rows.push_back({{"graph", name}, {"vertices", x.vertex_count()}, {"h0", str(h)}, {"cheeger", str(o)}});
  }
  auto torus = expansion_h1_exact(torus7(), z2, kCochainCap);
  bool torus_ok = torus.cobound && *torus.cobound == Rational(0);
  r.pass = tri_ok && mismatches == 0 && graphs.size() >= 10 && torus_ok;
  r.details = {{"triangle_h0", str(tri)},
               {"triangle_cheeger", str(tri_oracle)},
               {"graphs", rows},
               {"mismatches", mismatches},
               {"torus_h1_cobound", torus.cobound ? str(*torus.cobound) : "none"},
               {"torus_h1_systole", torus.systole ? str(*torus.systole) : "none"}};
  return r;
}

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t v = 1;
  while (e--) v *= b;
  return v;
}

// |SL_m(F_p[t]/t^s)| = |SL_m(F_p)| p^((m^2-1)(s-1)).
std::uint64_t sl_order(std::uint32_t m, std::uint32_t p, std::uint32_t s) {
  std::uint64_t v = ipow(p, m * (m - 1) / 2);
  for (std::uint32_t k = 2; k <= m; ++k) v *= ipow(p, k) - 1;
  return v * ipow(p, (m * m - 1) * (s - 1));
}

json ko_counts(Context& c, std::uint32_t n, std::uint32_t p, std::uint32_t s, std::uint32_t d, bool& ok) {
  Stopwatch sw;
  auto ko = ko_instance(n, p, s, d, kGroupCap);
  double group_s = sw.seconds();
  auto cc = coset_complex(ko.group, ko.subgroups);
  double total_s = sw.seconds();
  const std::uint64_t g = ko.group.size();
  // Orbit-stabilizer: a face of colors I has stabilizer the intersection of K_i, i in I.
  std::vector<std::uint64_t> predicted(n + 1, 0);
  const std::uint32_t m = n + 1;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    std::optional<FiniteGroup> stab;
    int size = 0;
    for (std::uint32_t i = 0; i < m; ++i)
      if (mask >> i & 1) {
        stab = stab ? intersection(*stab, ko.subgroups[i]) : ko.subgroups[i];
        ++size;
      }
    predicted[size - 1] += g / stab->size();
  }
  std::vector<std::uint64_t> counted, k_orders;
  for (int k = 0; k <= cc.complex.dim(); ++k) counted.push_back(cc.complex.face_count(k));
  for (const auto& k : ko.subgroups) k_orders.push_back(k.size());
  c.record_weights("KO complex (n=" + std::to_string(n) + ", p=" + std::to_string(p) + ", s=" + std::to_string(s) +
                       ", d=" + std::to_string(d) + ")",
                   cc.complex);
  bool partite = cc.complex.is_partite();
  bool counts_ok = counted == predicted && g == sl_order(m, p, s) && partite;
  ok = ok && counts_ok;
  return {{"n", n},
          {"p", p},
          {"s", s},
          {"d", d},
          {"group_order", g},
          {"group_order_formula", sl_order(m, p, s)},
          {"subgroup_orders", k_orders},
          {"face_counts", counted},
          {"predicted_face_counts", predicted},
          {"partite", partite},
          {"ok", counts_ok},
          {"group_seconds", group_s},
          {"total_seconds", total_s}};
}

bool generated_by_order(const FiniteGroup& g, const FiniteGroup& n, std::uint64_t q) {
  std::vector<Code> gens;
  for (ElemIndex x = 0; x < n.size(); ++x)
    if (element_order(n, x) == q) gens.push_back(n.code(x));
  return !gens.empty() && subgroup(g, gens).size() == n.size();
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= v; ++q)
    if (v % q == 0) {
      out.push_back(q);
      while (v % q == 0) v /= q;
    }
  if (v > 1) out.push_back(v);
  return out;
}

json quotient_cohomology(Context& c, bool& ok) {
  H1Options opts;
  opts.workers = c.opts.workers;
  const std::vector<CoefficientGroup> lambdas{CoefficientGroup::zmod(2), CoefficientGroup::zmod(3),
                                              CoefficientGroup::zmod(4), CoefficientGroup::zmod(5),
                                              CoefficientGroup::symmetric(3)};
  json rows = json::array();
  std::size_t applicable = 0, failures = 0;
  for (const auto& inst : coset_zoo()) {
    if (inst.subgroups.size() < 3) continue;  // needs a 2-dimensional complex
    auto cc = coset_complex(inst.group, inst.subgroups);
    for (const auto& n : inst.normals) {
      if (n.size() == 1) continue;
      auto q = quotient_by_action(cc.complex, left_action(cc, inst.group, n.codes()));
      auto qg = quotient(inst.group, n);
      auto qcc = coset_complex(qg.group, image_subgroups(qg, inst.group, inst.subgroups));
      for (std::uint64_t p : prime_divisors(n.size())) {
        if (!generated_by_order(inst.group, n, p)) continue;
        for (const auto& L : lambdas) {
          if (L.has_element_of_order(static_cast<std::uint32_t>(p))) continue;
          bool x_trivial = h1_trivial(cc.complex, L, H1Mode::gauge, opts).trivial;
          if (!x_trivial) {
            rows.push_back({{"instance", inst.name}, {"normal_order", n.size()}, {"p", p}, {"lambda", L.name()},
                            {"x_trivial", false}});
            continue;
          }
          ++applicable;
          bool quotient_trivial = h1_trivial(q.complex, L, H1Mode::gauge, opts).trivial;
          bool group_trivial = h1_trivial(qcc.complex, L, H1Mode::gauge, opts).trivial;
          failures += !(quotient_trivial && group_trivial);
          rows.push_back({{"instance", inst.name},
                          {"normal_order", n.size()},
                          {"p", p},
                          {"lambda", L.name()},
                          {"x_trivial", true},
                          {"quotient_trivial", quotient_trivial},
                          {"quotient_group_complex_trivial", group_trivial}});
        }
      }
    }
  }
  ok = ok && applicable > 0 && failures == 0;
  return {{"cases", rows}, {"applicable", applicable}, {"failures", failures}};
}

CriterionResult vanishing_substitute(Context& c) {
  CriterionResult r{9, "", true, {}, {}};
  Stopwatch sw;
  bool a_ok = true;
  json builds = json::array();
  if (c.opts.quick) {
    r.title = "KO complex counts (quick: n = 1 instances) and quotient cohomology on the zoo";
    for (auto [p, s] : {std::pair{2u, 2u}, {3u, 2u}, {2u, 3u}}) builds.push_back(ko_counts(c, 1, p, s, 1, a_ok));
  } else {
    r.title = "KO complex counts (n = 2, p = 2, s = 3, d = 1) and quotient cohomology on the zoo";
    builds.push_back(ko_counts(c, 2, 2, 3, 1, a_ok));
  }
  double build_s = sw.seconds();
  double rss = peak_rss_bytes();
  bool within = build_s < kKoBuildSeconds && rss < kKoBuildBytes;
  a_ok = a_ok && within;
  // Timings belong to the measurements, not the report.
  json measured = json::array();
  for (auto& b : builds) {
    measured.push_back({{"group_seconds", b["group_seconds"]}, {"total_seconds", b["total_seconds"]}});
    b.erase("group_seconds");
    b.erase("total_seconds");
  }
  bool b_ok = true;
  json b = quotient_cohomology(c, b_ok);
  r.pass = a_ok && b_ok;
  r.details = {{"a",
                {{"builds", builds},
                 {"time_limit_s", kKoBuildSeconds},
                 {"memory_limit_bytes", kKoBuildBytes},
                 {"within_limits", within},
                 {"pass", a_ok}}},
               {"b", b},
               {"b_pass", b_ok}};
  r.measurements = {{"builds", measured}, {"build_seconds", build_s}, {"peak_rss_bytes", rss}};
  return r;
}

CriterionResult kernel_orders(Context& c) {
  CriterionResult r{10, "congruence kernel elements have order exactly p", true, {}, {}};
  const std::uint64_t cap = kernel_cap(c.opts.quick);
  json rows = json::array();
  std::uint64_t violations = 0;
  std::size_t skipped = 0;
  for (std::uint32_t n : {1u, 2u})
    for (std::uint32_t p : {2u, 3u, 5u})
      for (std::uint32_t hi = 2; hi <= 4; ++hi)
        for (std::uint32_t lo = 1; lo < hi; ++lo) {
          json row = {{"n", n}, {"p", p}, {"s_hi", hi}, {"s_lo", lo}};
          auto order = reduction_kernel_order(n, p, hi, lo);
          if (!order || *order > cap) {
            ++skipped;
            row["skipped"] = "kernel order exceeds cap";
            rows.push_back(row);
            continue;
          }
          std::optional<FiniteGroup> built;
          try {
            built = reduction_kernel(n, p, hi, lo, cap);
          } catch (const Error& e) {
            ++skipped;
            row["skipped"] = e.what();
            rows.push_back(row);
            continue;
          }
          const FiniteGroup& ker = *built;
          const auto& law = ker.law();
          std::uint64_t bad = 0;
          std::uint64_t max_order = 1;
          for (ElemIndex x = 0; x < ker.size(); ++x) {
            if (x == ker.identity()) continue;
            Code a = ker.code(x);
            Code acc = a;
            for (std::uint32_t k = 1; k < p; ++k) acc = law.multiply(acc, a);
            if (acc != law.identity()) {
              ++bad;
              max_order = std::max(max_order, element_order(ker, x));
            } else {
              max_order = std::max<std::uint64_t>(max_order, p);
            }
          }
          violations += bad;
          row["order"] = ker.size();
          row["violations"] = bad;
          row["max_element_order"] = max_order;
          rows.push_back(row);
        }
  r.pass = violations == 0 && skipped == 0;
  r.details = {{"instances", rows}, {"cap", cap}, {"violations", violations}, {"skipped", skipped}};
  return r;
}

CriterionResult spectral(Context& c) {
  CriterionResult r{11, "spectral: KO links (n = 2, p = 5, s = 3, d = 1) and fixture spectra", true, {}, {}};
  json fixtures = json::array();
  bool fixtures_ok = true;
  auto check = [&](const std::string& name, const SimplicialComplex& x, double want) {
    auto e = second_eigenvalue(WalkMatrix(x), EigenMethod::dense);
    bool ok = std::abs(e.value - want) <= kFixtureTol;
    fixtures_ok = fixtures_ok && ok;
    fixtures.push_back({{"fixture", name}, {"second", rounded(e.value)}, {"expected", rounded(want)}, {"ok", ok}});
  };
  for (std::uint32_t m = 3; m <= 10; ++m)
    check("K_" + std::to_string(m), complete_graph(m), -1.0 / (m - 1));
  check("C_6", cycle_graph(6), 0.5);

  const double threshold = 1.0 / (std::sqrt(5.0) - 2.0);
  Stopwatch sw;
  auto rep = ko_link_report(2, 5, 3, 1, threshold, kLinkTol, kGroupCap, c.opts.workers);
  json links = json::array();
  for (const auto& l : rep.links)
    links.push_back({{"link", l.label},
                     {"vertices", l.vertices},
                     {"components", l.components},
                     {"second", l.second ? json(rounded(*l.second)) : json(nullptr)}});
  r.pass = fixtures_ok && rep.pass;
  r.details = {{"fixtures", fixtures},
               {"fixture_tolerance", kFixtureTol},
               {"links", links},
               {"threshold", rounded(threshold)},
               {"tolerance", kLinkTol},
               {"max_second", rep.max_second ? json(rounded(*rep.max_second)) : json(nullptr)},
               {"links_pass", rep.pass}};
  r.measurements = {{"link_seconds", sw.seconds()}};
  return r;
}

using Runner = CriterionResult (*)(Context&);

// Criterion 6 runs after the others so that it sees every complex they built.
const std::vector<std::pair<int, Runner>>& runners() {
  static const std::vector<std::pair<int, Runner>> table{
      {1, propagation},           {2, chamber_lemmas},   {3, steinberg},         {4, commutator_power},
      {5, quotient_proposition},  {7, h1_cross_validation}, {8, expansion_constants}, {9, vanishing_substitute},
      {10, kernel_orders},        {11, spectral},        {6, weight_normalization}};
  return table;
}

CriterionResult guarded(Runner fn, int id, Context& c) {
  Stopwatch sw;
  CriterionResult r;
  try {
    r = fn(c);
  } catch (const std::exception& e) {
    r = {id, "criterion " + std::to_string(id), false, {{"error", e.what()}}, {}};
  }
  if (!r.measurements.is_object()) r.measurements = json::object();
  r.measurements["wall_seconds"] = sw.seconds();
  return r;
}

std::vector<CriterionResult> run_battery(const SuiteOptions& opts,
                                         const std::function<void(const CriterionResult&)>& on_result) {
  Context c{opts, {}};
  std::vector<CriterionResult> out;
  for (const auto& [id, fn] : runners()) {
    out.push_back(guarded(fn, id, c));
    if (on_result) on_result(out.back());
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

json criteria_json(const std::vector<CriterionResult>& rs, bool with_measurements) {
  json arr = json::array();
  for (const auto& r : rs) {
    json j = {{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"details", r.details}};
    if (with_measurements) j["measurements"] = r.measurements;
    arr.push_back(std::move(j));
  }
  return arr;
}

} // namespace

bool SuiteReport::pass() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const auto& r) { return r.pass; });
}

json SuiteReport::to_json(bool with_measurements) const {
  std::size_t passed = std::count_if(criteria.begin(), criteria.end(), [](const auto& r) { return r.pass; });
  return {{"tool", "hdx"},
          {"version", kToolVersion},
          {"command", "suite"},
          {"params", {{"quick", options.quick}, {"seed", options.seed}}},
          {"caps",
           {{"group_elements", kGroupCap},
            {"cochains", kCochainCap},
            {"kernel_elements", kernel_cap(options.quick)},
            {"commutator_samples", commutator_samples(options.quick)}}},
          {"criteria", criteria_json(criteria, with_measurements)},
          {"passed", passed},
          {"failed", criteria.size() - passed}};
}

std::vector<int> criterion_ids() { return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}; }

SuiteReport run_suite(const SuiteOptions& opts, const std::function<void(const CriterionResult&)>& on_result) {
  SuiteReport rep{opts, run_battery(opts, on_result)};

  // Determinism: the quick battery twice from scratch, compared byte for byte.
  Stopwatch sw;
  SuiteOptions quick = opts;
  quick.quick = true;
  std::string first = opts.quick ? criteria_json(rep.criteria, false).dump() : criteria_json(run_battery(quick, {}), false).dump();
  std::string second = criteria_json(run_battery(quick, {}), false).dump();
  CriterionResult d{12, "determinism: two quick runs with the same seed are byte-identical", first == second,
                    {{"seed", opts.seed}, {"bytes", first.size()}, {"identical", first == second}},
                    {{"wall_seconds", sw.seconds()}}};
  if (on_result) on_result(d);
  rep.criteria.push_back(std::move(d));
  return rep;
}

} // namespace hdx
