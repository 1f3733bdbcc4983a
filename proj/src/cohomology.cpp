#include "hdx/cohomology.hpp"

#include "hdx/error.hpp"
#include "hdx/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <unordered_set>

namespace hdx {

namespace {

constexpr LambdaElem kUnset = 0xFFFFFFFFu;

// m^e, or nullopt once it exceeds limit.
std::optional<std::uint64_t> bounded_pow(std::uint64_t m, std::size_t e, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (std::size_t k = 0; k < e; ++k) {
    if (r > limit / std::max<std::uint64_t>(m, 1)) return std::nullopt;
    r *= m;
  }
  return r <= limit ? std::optional(r) : std::nullopt;
}

std::size_t edge_index(const SimplicialComplex& x, Vertex u, Vertex v) {
  if (x.dim() < 1) throw InputError("complex has no edges");
  std::array<Vertex, 2> e{std::min(u, v), std::max(u, v)};
  auto idx = x.faces(1).find(e);
  if (!idx) throw InputError("(" + std::to_string(u) + "," + std::to_string(v) + ") is not an edge");
  return *idx;
}

std::size_t edge_count(const SimplicialComplex& x) { return x.dim() >= 1 ? x.faces(1).size() : 0; }

// Edge indices (ab, bc, ac) of each triangle (a, b, c).
std::vector<std::array<std::uint32_t, 3>> triangle_edges(const SimplicialComplex& x) {
  std::vector<std::array<std::uint32_t, 3>> out;
  if (x.dim() < 2) return out;
  const auto& t = x.faces(2);
  out.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto f = t.face(i);
    out.push_back({static_cast<std::uint32_t>(edge_index(x, f[0], f[1])),
                   static_cast<std::uint32_t>(edge_index(x, f[1], f[2])),
                   static_cast<std::uint32_t>(edge_index(x, f[0], f[2]))});
  }
  return out;
}

// Edges at each vertex with a flag telling whether the vertex is the smaller end.
std::vector<std::vector<std::pair<std::uint32_t, bool>>> incidence(const SimplicialComplex& x) {
  std::vector<std::vector<std::pair<std::uint32_t, bool>>> out(x.vertex_count());
  for (std::size_t e = 0; e < edge_count(x); ++e) {
    auto f = x.faces(1).face(e);
    out[f[0]].emplace_back(static_cast<std::uint32_t>(e), true);
    out[f[1]].emplace_back(static_cast<std::uint32_t>(e), false);
  }
  return out;
}

std::int64_t denominator(const SimplicialComplex& x, int k) {
  return static_cast<std::int64_t>(binomial(x.dim() + 1, k + 1) * x.max_face_count());
}

std::vector<std::int64_t> containing_counts(const SimplicialComplex& x, int k) {
  std::vector<std::int64_t> out;
  if (k > x.dim()) return out;
  const auto& t = x.faces(k);
  for (std::size_t i = 0; i < t.size(); ++i) out.push_back(static_cast<std::int64_t>(t.containing(i)));
  return out;
}

void require_pure(const SimplicialComplex& x) {
  if (!x.is_pure()) throw ParameterError("norms need a pure complex");
}

void require_connected(const SimplicialComplex& x) {
  if (x.component_count() != 1) throw InputError("complex is not connected");
}

void check_size(const SimplicialComplex& x, const CoefficientGroup& lambda, const Cochain1& phi) {
  if (phi.size() != edge_count(x)) throw InputError("1-cochain has the wrong number of edges");
  for (auto v : phi)
    if (v >= lambda.order()) throw InputError("cochain value outside the coefficient group");
}

void check_size0(const SimplicialComplex& x, const CoefficientGroup& lambda, const Cochain0& phi) {
  if (phi.size() != x.vertex_count()) throw InputError("0-cochain has the wrong number of vertices");
  for (auto v : phi)
    if (v >= lambda.order()) throw InputError("cochain value outside the coefficient group");
}

std::vector<LambdaElem> generators_of(const CoefficientGroup& lambda) {
  std::vector<LambdaElem> gens;
  std::vector<char> in(lambda.order(), 0);
  in[0] = 1;
  for (LambdaElem a = 1; a < lambda.order(); ++a) {
    if (in[a]) continue;
    gens.push_back(a);
    std::vector<LambdaElem> frontier;
    for (LambdaElem b = 0; b < lambda.order(); ++b)
      if (in[b]) frontier.push_back(b);
    while (!frontier.empty()) {
      LambdaElem b = frontier.back();
      frontier.pop_back();
      for (LambdaElem g : gens) {
        LambdaElem c = lambda.mul(b, g);
        if (!in[c]) {
          in[c] = 1;
          frontier.push_back(c);
        }
      }
    }
  }
  return gens;
}

struct Digits {
  std::uint32_t m;
  std::vector<std::uint64_t> pw;
  Digits(std::uint32_t m_, std::size_t len) : m(m_), pw(len + 1, 1) {
    for (std::size_t k = 1; k <= len; ++k) pw[k] = pw[k - 1] * m;
  }
  LambdaElem at(std::uint64_t code, std::size_t k) const { return static_cast<LambdaElem>(code / pw[k] % m); }
  std::uint64_t with(std::uint64_t code, std::size_t k, LambdaElem v) const {
    return code + (static_cast<std::uint64_t>(v) - at(code, k)) * pw[k];
  }
  void decode(std::uint64_t code, std::vector<LambdaElem>& out) const {
    for (std::size_t k = 0; k + 1 < pw.size(); ++k) {
      out[k] = static_cast<LambdaElem>(code % m);
      code /= m;
    }
  }
  std::uint64_t encode(const std::vector<LambdaElem>& d) const {
    std::uint64_t c = 0;
    for (std::size_t k = d.size(); k-- > 0;) c = c * m + d[k];
    return c;
  }
};

// Code of the image of phi under psi = g at vertex v, identity elsewhere.
std::uint64_t move(const Digits& dg, const CoefficientGroup& lambda,
                   const std::vector<std::pair<std::uint32_t, bool>>& inc, std::uint64_t code, LambdaElem g) {
  const LambdaElem gi = lambda.inv(g);
  std::uint64_t out = code;
  for (auto [e, first] : inc) {
    LambdaElem a = dg.at(code, e);
    out = dg.with(out, e, first ? lambda.mul(g, a) : lambda.mul(a, gi));
  }
  return out;
}

struct UnionFind32 {
  std::vector<std::uint32_t> parent;
  explicit UnionFind32(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Backtracking over edge values with forced moves from triangle equations
// phi(a,b) phi(b,c) = phi(a,c).
class CocycleSearch {
public:
  CocycleSearch(const CoefficientGroup& lambda, std::size_t edges,
                const std::vector<std::array<std::uint32_t, 3>>& tris, std::uint64_t step_cap)
      : lambda_(&lambda), tris_(&tris), val_(edges, kUnset), step_cap_(step_cap) {
    start_.assign(edges + 1, 0);
    for (const auto& t : tris)
      for (auto e : t) ++start_[e + 1];
    for (std::size_t e = 0; e < edges; ++e) start_[e + 1] += start_[e];
    list_.resize(start_.back());
    std::vector<std::uint32_t> fill(start_.begin(), start_.end() - 1);
    for (std::uint32_t t = 0; t < tris.size(); ++t)
      for (auto e : tris[t]) list_[fill[e]++] = t;
  }

  bool assign(std::uint32_t e, LambdaElem v) {
    if (!set(e, v)) return false;
    return propagate();
  }

  struct Outcome {
    std::uint64_t count = 0;
    std::optional<Cochain1> witness;
    std::vector<Cochain1> solutions;
    bool overflow = false;
  };

  void search(std::size_t hint, bool count_all, std::size_t keep, Outcome& out) {
    while (hint < val_.size() && val_[hint] != kUnset) ++hint;
    if (hint == val_.size()) {
      ++out.count;
      bool nontrivial = std::any_of(val_.begin(), val_.end(), [](LambdaElem v) { return v != 0; });
      if (nontrivial && !out.witness) out.witness = val_;
      if (count_all) {
        if (out.solutions.size() < keep)
          out.solutions.push_back(val_);
        else
          out.overflow = true;
      }
      return;
    }
    for (LambdaElem v = 0; v < lambda_->order(); ++v) {
      std::size_t mark = trail_.size();
      if (assign(static_cast<std::uint32_t>(hint), v)) search(hint + 1, count_all, keep, out);
      undo(mark);
      if (!count_all && out.witness) return;
    }
  }

  std::optional<std::uint32_t> first_unset() const {
    for (std::uint32_t e = 0; e < val_.size(); ++e)
      if (val_[e] == kUnset) return e;
    return std::nullopt;
  }
  const std::vector<LambdaElem>& values() const { return val_; }

private:
  bool set(std::uint32_t e, LambdaElem v) {
    if (val_[e] != kUnset) return val_[e] == v;
    if (++steps_ > step_cap_) throw ResourceError("cocycle search exceeded its step cap", steps_);
    val_[e] = v;
    trail_.push_back(e);
    queue_.push_back(e);
    return true;
  }

  bool propagate() {
    const CoefficientGroup& L = *lambda_;
    while (!queue_.empty()) {
      std::uint32_t e = queue_.back();
      queue_.pop_back();
      for (std::uint32_t q = start_[e]; q < start_[e + 1]; ++q) {
        const auto& t = (*tris_)[list_[q]];
        LambdaElem a = val_[t[0]], b = val_[t[1]], c = val_[t[2]];
        bool ok = true;
        if (a != kUnset && b != kUnset && c != kUnset)
          ok = L.mul(a, b) == c;
        else if (a != kUnset && b != kUnset)
          ok = set(t[2], L.mul(a, b));
        else if (a != kUnset && c != kUnset)
          ok = set(t[1], L.mul(L.inv(a), c));
        else if (b != kUnset && c != kUnset)
          ok = set(t[0], L.mul(c, L.inv(b)));
        if (!ok) {
          queue_.clear();
          return false;
        }
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      val_[trail_.back()] = kUnset;
      trail_.pop_back();
    }
  }

  const CoefficientGroup* lambda_;
  const std::vector<std::array<std::uint32_t, 3>>* tris_;
  std::vector<std::uint32_t> start_, list_;
  std::vector<LambdaElem> val_;
  std::vector<std::uint32_t> trail_, queue_;
  std::uint64_t steps_ = 0, step_cap_;
};

std::uint64_t conjugacy_classes_of_solutions(const CoefficientGroup& lambda, const std::vector<Cochain1>& sols) {
  std::set<Cochain1> canon;
  Cochain1 c;
  for (const auto& s : sols) {
    Cochain1 best = s;
    for (LambdaElem g = 1; g < lambda.order(); ++g) {
      c = s;
      for (auto& v : c) v = lambda.mul(lambda.mul(g, v), lambda.inv(g));
      best = std::min(best, c);
    }
    canon.insert(best);
  }
  return canon.size();
}

H1Result h1_gauge(const SimplicialComplex& x, const CoefficientGroup& lambda, const H1Options& opts) {
  SpanningTree tree = bfs_tree(x);
  auto tris = triangle_edges(x);
  const std::size_t edges = edge_count(x);
  CocycleSearch base(lambda, edges, tris, opts.step_cap);
  for (std::size_t e = 0; e < edges; ++e)
    if (tree.in_tree[e] && !base.assign(static_cast<std::uint32_t>(e), 0))
      throw StructuralError("identity values violate a triangle equation");
  H1Result r;
  auto branch_edge = base.first_unset();
  constexpr std::size_t keep = 1u << 20;
  if (!branch_edge) {
    r.cocycles = 1;
    r.classes = 1;
    return r;
  }
  std::vector<CocycleSearch::Outcome> outs(lambda.order());
  parallel_for(lambda.order(), opts.workers, [&](std::size_t v) {
    CocycleSearch s = base;
    if (s.assign(*branch_edge, static_cast<LambdaElem>(v))) s.search(*branch_edge + 1, opts.count_all, keep, outs[v]);
  });
  bool overflow = false;
  std::vector<Cochain1> sols;
  for (auto& o : outs) {
    r.cocycles += o.count;
    if (!r.witness && o.witness) r.witness = o.witness;
    overflow = overflow || o.overflow;
    for (auto& s : o.solutions) sols.push_back(std::move(s));
  }
  r.trivial = !r.witness.has_value();
  if (r.trivial)
    r.classes = 1;
  else if (opts.count_all && !overflow)
    r.classes = conjugacy_classes_of_solutions(lambda, sols);
  return r;
}

H1Result h1_brute(const SimplicialComplex& x, const CoefficientGroup& lambda, const H1Options& opts) {
  require_connected(x);
  const std::size_t E = edge_count(x), V = x.vertex_count();
  const std::uint32_t m = lambda.order();
  auto n1 = bounded_pow(m, E, opts.cap);
  auto n0 = bounded_pow(m, V, opts.cap);
  if (!n1 || !n0) throw ResourceError("brute-force H^1 exceeds the cochain cap " + std::to_string(opts.cap), 0);
  auto tris = triangle_edges(x);
  Digits dg(m, E);
  std::vector<std::uint64_t> z1;
  std::vector<LambdaElem> d(E, 0);
  for (std::uint64_t code = 0; code < *n1; ++code) {
    bool ok = true;
    for (const auto& t : tris)
      if (lambda.mul(d[t[0]], d[t[1]]) != d[t[2]]) {
        ok = false;
        break;
      }
    if (ok) z1.push_back(code);
    for (std::size_t k = 0; k < E && ++d[k] == m; ++k) d[k] = 0;
  }
  std::unordered_set<std::uint64_t> b1;
  Cochain0 psi(V, 0);
  for (std::uint64_t code = 0; code < *n0; ++code) {
    b1.insert(dg.encode(d0(x, lambda, psi)));
    for (std::size_t k = 0; k < V && ++psi[k] == m; ++k) psi[k] = 0;
  }
  H1Result r;
  r.cocycles = z1.size();
  r.coboundaries = b1.size();
  r.trivial = b1.size() == z1.size();
  for (auto c : z1)
    if (!b1.count(c)) {
      Cochain1 phi(E);
      dg.decode(c, phi);
      r.witness = tree_gauge_fix(x, lambda, phi);
      break;
    }
  auto inc = incidence(x);
  UnionFind32 uf(z1.size());
  for (std::uint32_t i = 0; i < z1.size(); ++i)
    for (Vertex v = 0; v < V; ++v)
      for (LambdaElem g = 1; g < m; ++g) {
        auto j = std::lower_bound(z1.begin(), z1.end(), move(dg, lambda, inc[v], z1[i], g)) - z1.begin();
        uf.unite(i, static_cast<std::uint32_t>(j));
      }
  std::uint64_t classes = 0;
  for (std::uint32_t i = 0; i < z1.size(); ++i) classes += uf.find(i) == i;
  r.classes = classes;
  return r;
}

} // namespace

CoefficientGroup::CoefficientGroup(const FiniteGroup& g, std::string name) : name_(std::move(name)) {
  auto table = cayley_table(g);
  const std::uint32_t id = g.identity();
  // Swap labels id and 0.
  auto relabel = [id](std::uint32_t a) { return a == id ? 0u : a == 0 ? id : a; };
  std::vector<std::vector<std::uint32_t>> t(table.size(), std::vector<std::uint32_t>(table.size()));
  for (std::uint32_t a = 0; a < table.size(); ++a)
    for (std::uint32_t b = 0; b < table.size(); ++b) t[relabel(a)][relabel(b)] = relabel(table[a][b]);
  init(t);
}

void CoefficientGroup::init(const std::vector<std::vector<std::uint32_t>>& table) {
  m_ = static_cast<std::uint32_t>(table.size());
  if (m_ == 0) throw InputError("empty coefficient group");
  table_.clear();
  for (const auto& row : table) {
    if (row.size() != m_) throw InputError("coefficient table is not square");
    for (auto v : row) {
      if (v >= m_) throw InputError("coefficient table entry out of range");
      table_.push_back(v);
    }
  }
  for (std::uint32_t a = 0; a < m_; ++a)
    if (mul(0, a) != a || mul(a, 0) != a) throw InputError("coefficient table: element 0 is not the identity");
  inv_.assign(m_, kUnset);
  for (std::uint32_t a = 0; a < m_; ++a)
    for (std::uint32_t b = 0; b < m_; ++b)
      if (mul(a, b) == 0) inv_[a] = b;
  for (std::uint32_t a = 0; a < m_; ++a)
    if (inv_[a] == kUnset || mul(inv_[a], a) != 0) throw InputError("coefficient table: missing inverse");
  for (std::uint32_t a = 0; a < m_; ++a)
    for (std::uint32_t b = 0; b < m_; ++b)
      for (std::uint32_t c = 0; c < m_; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw InputError("coefficient table is not associative");
}

CoefficientGroup CoefficientGroup::zmod(std::uint32_t m) {
  if (m == 0) throw ParameterError("Z/m needs m >= 1");
  return CoefficientGroup(cyclic_group(m), "Z/" + std::to_string(m));
}

CoefficientGroup CoefficientGroup::symmetric(std::uint32_t k) {
  if (k == 0 || k > 6) throw ParameterError("S_k coefficients need 1 <= k <= 6");
  return CoefficientGroup(symmetric_group(k), "S_" + std::to_string(k));
}

CoefficientGroup CoefficientGroup::from_table(const std::vector<std::vector<std::uint32_t>>& table,
                                              std::string name) {
  if (table.empty()) throw InputError("empty coefficient group");
  // Find the identity, then relabel it to 0.
  const auto m = static_cast<std::uint32_t>(table.size());
  std::optional<std::uint32_t> id;
  for (std::uint32_t e = 0; e < m && !id; ++e) {
    bool ok = table[e].size() == m;
    for (std::uint32_t a = 0; a < m && ok; ++a)
      ok = table[e][a] == a && table[a].size() == m && table[a][e] == a;
    if (ok) id = e;
  }
  if (!id) throw InputError("coefficient table has no identity");
  auto relabel = [e = *id](std::uint32_t a) { return a == e ? 0u : a == 0 ? e : a; };
  std::vector<std::vector<std::uint32_t>> t(m, std::vector<std::uint32_t>(m));
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b) {
      if (table[a][b] >= m) throw InputError("coefficient table entry out of range");
      t[relabel(a)][relabel(b)] = relabel(table[a][b]);
    }
  CoefficientGroup g;
  g.name_ = std::move(name);
  g.init(t);
  return g;
}

CoefficientGroup CoefficientGroup::read_table(std::istream& is, std::string name) {
  std::uint64_t m = 0;
  if (!(is >> m) || m == 0 || m > 4096) throw InputError("coefficient table: bad order line");
  std::vector<std::vector<std::uint32_t>> t(m, std::vector<std::uint32_t>(m));
  for (auto& row : t)
    for (auto& v : row)
      if (!(is >> v)) throw InputError("coefficient table: truncated");
  return from_table(t, std::move(name));
}

CoefficientGroup CoefficientGroup::parse(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw ParameterError("coefficient spec must look like zmod:m, sym:k or table:FILE");
  std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
  auto number = [&]() {
    try {
      std::size_t used = 0;
      unsigned long v = std::stoul(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
      return static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
      throw ParameterError("bad number in coefficient spec: " + arg);
    }
  };
  if (kind == "zmod") return zmod(number());
  if (kind == "sym") return symmetric(number());
  if (kind == "table") {
    std::ifstream in(arg);
    if (!in) throw InputError("cannot open coefficient table " + arg);
    return read_table(in, "table:" + arg);
  }
  throw ParameterError("unknown coefficient kind " + kind);
}

std::uint32_t CoefficientGroup::element_order(LambdaElem a) const {
  std::uint32_t k = 1;
  for (LambdaElem b = a; b != 0; b = mul(b, a)) ++k;
  return k;
}

bool CoefficientGroup::has_element_of_order(std::uint32_t q) const {
  for (LambdaElem a = 0; a < m_; ++a)
    if (element_order(a) == q) return true;
  return false;
}

bool CoefficientGroup::is_abelian() const {
  for (LambdaElem a = 0; a < m_; ++a)
    for (LambdaElem b = 0; b < m_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

Cochain1 cochain_from_oriented(const SimplicialComplex& x, const CoefficientGroup& lambda,
                               const std::vector<OrientedValue>& values) {
  Cochain1 phi(edge_count(x), kUnset);
  for (const auto& ov : values) {
    if (ov.value >= lambda.order()) throw InputError("cochain value outside the coefficient group");
    std::size_t e = edge_index(x, ov.from, ov.to);
    LambdaElem forward = ov.from < ov.to ? ov.value : lambda.inv(ov.value);
    if (phi[e] != kUnset && phi[e] != forward)
      throw InputError("values on (" + std::to_string(ov.from) + "," + std::to_string(ov.to) +
                       ") and its reverse are not inverse");
    phi[e] = forward;
  }
  for (auto v : phi)
    if (v == kUnset) throw InputError("cochain misses an edge");
  return phi;
}

LambdaElem oriented_value(const SimplicialComplex& x, const CoefficientGroup& lambda, const Cochain1& phi,
                          Vertex u, Vertex v) {
  LambdaElem a = phi.at(edge_index(x, u, v));
  return u < v ? a : lambda.inv(a);
}

Cochain1 d0(const SimplicialComplex& x, const CoefficientGroup& lambda, const Cochain0& phi) {
  check_size0(x, lambda, phi);
  Cochain1 out(edge_count(x));
  for (std::size_t e = 0; e < out.size(); ++e) {
    auto f = x.faces(1).face(e);
    out[e] = lambda.mul(phi[f[0]], lambda.inv(phi[f[1]]));
  }
  return out;
}

Cochain2 d1(const SimplicialComplex& x, const CoefficientGroup& lambda, const Cochain1& phi) {
  check_size(x, lambda, phi);
  auto tris = triangle_edges(x);
  Cochain2 out(tris.size());
  for (std::size_t t = 0; t < tris.size(); ++t)
    out[t] = lambda.mul(lambda.mul(phi[tris[t][0]], phi[tris[t][1]]), lambda.inv(phi[tris[t][2]]));
  return out;
}

LambdaElem d1_ordered(const SimplicialComplex& x, const CoefficientGroup& lambda, const Cochain1& phi,
                      Vertex v0, Vertex v1, Vertex v2) {
  check_size(x, lambda, phi);
  return lambda.mul(lambda.mul(oriented_value(x, lambda, phi, v0, v1), oriented_value(x, lambda, phi, v1, v2)),
                    oriented_value(x, lambda, phi, v2, v0));
}

bool is_cocycle(const SimplicialComplex& x, const CoefficientGroup& lambda, const Cochain1& phi) {
  auto v = d1(x, lambda, phi);
  return std::all_of(v.begin(), v.end(), [](LambdaElem a) { return a == 0; });
}

Cochain1 gauge_act(const SimplicialComplex& x, const CoefficientGroup& lambda, const Cochain0& psi,
                   const Cochain1& phi) {
  check_size0(x, lambda, psi);
  if (!is_cocycle(x, lambda, phi)) throw InputError("gauge action is defined on cocycles only");
  Cochain1 out(phi.size());
  for (std::size_t e = 0; e < phi.size(); ++e) {
    auto f = x.faces(1).face(e);
    out[e] = lambda.mul(lambda.mul(psi[f[0]], phi[e]), lambda.inv(psi[f[1]]));
  }
  return out;
}

SpanningTree bfs_tree(const SimplicialComplex& x) {
  const std::size_t nv = x.vertex_count();
  if (nv == 0) throw InputError("empty complex");
  auto inc = incidence(x);
  SpanningTree t;
  t.parent.assign(nv, 0xFFFFFFFFu);
  t.parent_edge.assign(nv, static_cast<std::size_t>(-1));
  t.in_tree.assign(edge_count(x), 0);
  t.parent[0] = 0;
  t.order.push_back(0);
  for (std::size_t head = 0; head < t.order.size(); ++head) {
    Vertex v = t.order[head];
    std::vector<std::pair<Vertex, std::uint32_t>> nbrs;
    for (auto [e, first] : inc[v]) {
      auto f = x.faces(1).face(e);
      nbrs.emplace_back(first ? f[1] : f[0], e);
    }
    std::sort(nbrs.begin(), nbrs.end());
    for (auto [w, e] : nbrs)
      if (t.parent[w] == 0xFFFFFFFFu) {
        t.parent[w] = v;
        t.parent_edge[w] = e;
        t.in_tree[e] = 1;
        t.order.push_back(w);
      }
  }
  if (t.order.size() != nv) throw InputError("complex is not connected");
  return t;
}

Cochain1 tree_gauge_fix(const SimplicialComplex& x, const CoefficientGroup& lambda, const Cochain1& phi) {
  SpanningTree t = bfs_tree(x);
  Cochain0 psi(x.vertex_count(), 0);
  for (std::size_t k = 1; k < t.order.size(); ++k) {
    Vertex c = t.order[k], p = t.parent[c];
    psi[c] = lambda.mul(psi[p], oriented_value(x, lambda, phi, p, c));
  }
  return gauge_act(x, lambda, psi, phi);
}

H1Result h1_trivial(const SimplicialComplex& x, const CoefficientGroup& lambda, H1Mode mode,
                    const H1Options& opts) {
  if (x.dim() < 1) throw ParameterError("H^1 needs a complex with edges");
  return mode == H1Mode::gauge ? h1_gauge(x, lambda, opts) : h1_brute(x, lambda, opts);
}

Rational norm0(const SimplicialComplex& x, const Cochain0& phi) {
  require_pure(x);
  if (phi.size() != x.vertex_count()) throw InputError("0-cochain has the wrong number of vertices");
  std::int64_t num = 0;
  for (Vertex v = 0; v < phi.size(); ++v)
    if (phi[v] != 0) num += static_cast<std::int64_t>(x.faces(0).containing(v));
  return {num, denominator(x, 0)};
}

Rational norm1(const SimplicialComplex& x, const Cochain1& phi) {
  return distance1(x, phi, Cochain1(phi.size(), 0));
}

Rational norm2(const SimplicialComplex& x, const Cochain2& phi) {
  if (x.dim() < 2) return Rational(0);
  if (phi.size() != x.faces(2).size()) throw InputError("2-cochain has the wrong number of triangles");
  std::int64_t num = 0;
  for (std::size_t t = 0; t < phi.size(); ++t)
    if (phi[t] != 0) num += static_cast<std::int64_t>(x.faces(2).containing(t));
  return {num, denominator(x, 2)};
}

Rational distance1(const SimplicialComplex& x, const Cochain1& a, const Cochain1& b) {
  if (a.size() != edge_count(x) || b.size() != a.size()) throw InputError("1-cochain has the wrong number of edges");
  std::int64_t num = 0;
  for (std::size_t e = 0; e < a.size(); ++e)
    if (a[e] != b[e]) num += static_cast<std::int64_t>(x.faces(1).containing(e));
  return {num, denominator(x, 1)};
}

Rational expansion_h0(const SimplicialComplex& x, const CoefficientGroup& lambda, std::uint64_t cap) {
  require_pure(x);
  if (x.dim() < 1) throw ParameterError("expansion needs a complex with edges");
  const std::uint32_t m = lambda.order();
  if (m < 2) throw ParameterError("C^0 equals B^0 for a trivial coefficient group");
  const std::size_t V = x.vertex_count(), E = edge_count(x);
  auto n0 = bounded_pow(m, V, cap);
  if (!n0) throw ResourceError("h^0 enumeration exceeds the cochain cap " + std::to_string(cap), 0);
  auto w0 = containing_counts(x, 0), w1 = containing_counts(x, 1);
  const std::int64_t den0 = denominator(x, 0), den1 = denominator(x, 1);
  std::optional<Rational> best;
  Cochain0 phi(V, 0);
  std::vector<std::int64_t> by_value(m);
  for (std::uint64_t code = 0; code < *n0; ++code) {
    std::fill(by_value.begin(), by_value.end(), 0);
    std::int64_t total = 0;
    for (Vertex v = 0; v < V; ++v) {
      by_value[phi[v]] += w0[v];
      total += w0[v];
    }
    std::int64_t dist = total - *std::max_element(by_value.begin(), by_value.end());
    if (dist > 0) {
      std::int64_t cut = 0;
      for (std::size_t e = 0; e < E; ++e) {
        auto f = x.faces(1).face(e);
        if (phi[f[0]] != phi[f[1]]) cut += w1[e];
      }
      Rational r(cut * den0, den1 * dist);
      if (!best || r < *best) best = r;
    }
    for (std::size_t k = 0; k < V && ++phi[k] == m; ++k) phi[k] = 0;
  }
  return *best;
}

H1Expansion expansion_h1_exact(const SimplicialComplex& x, const CoefficientGroup& lambda, std::uint64_t cap) {
  require_pure(x);
  if (x.dim() < 1) throw ParameterError("expansion needs a complex with edges");
  const std::uint32_t m = lambda.order();
  const std::size_t E = edge_count(x), V = x.vertex_count();
  auto n1 = bounded_pow(m, E, std::min<std::uint64_t>(cap, 0xFFFFFFFFull));
  if (!n1) throw ResourceError("h^1 enumeration exceeds the cochain cap " + std::to_string(cap), 0);
  const std::uint64_t N = *n1;
  auto tris = triangle_edges(x);
  auto w1 = containing_counts(x, 1), w2 = containing_counts(x, 2);
  const std::int64_t den1 = denominator(x, 1), den2 = x.dim() >= 2 ? denominator(x, 2) : 1;
  Digits dg(m, E);
  auto inc = incidence(x);
  auto gens = generators_of(lambda);

  UnionFind32 uf(N);
  std::vector<std::uint32_t> norm(N), dnorm(N);
  std::vector<LambdaElem> d(E, 0);
  for (std::uint64_t code = 0; code < N; ++code) {
    std::int64_t a = 0, b = 0;
    for (std::size_t e = 0; e < E; ++e)
      if (d[e]) a += w1[e];
    for (std::size_t t = 0; t < tris.size(); ++t)
      if (lambda.mul(d[tris[t][0]], d[tris[t][1]]) != d[tris[t][2]]) b += w2[t];
    norm[code] = static_cast<std::uint32_t>(a);
    dnorm[code] = static_cast<std::uint32_t>(b);
    for (Vertex v = 0; v < V; ++v)
      for (LambdaElem g : gens) uf.unite(static_cast<std::uint32_t>(code), static_cast<std::uint32_t>(move(dg, lambda, inc[v], code, g)));
    for (std::size_t k = 0; k < E && ++d[k] == m; ++k) d[k] = 0;
  }
  std::vector<std::uint32_t> min_norm(N, 0xFFFFFFFFu);
  std::vector<std::uint64_t> roots;
  for (std::uint64_t code = 0; code < N; ++code) {
    auto r = uf.find(static_cast<std::uint32_t>(code));
    if (r == code) roots.push_back(code);
    min_norm[r] = std::min(min_norm[r], norm[code]);
  }
  std::vector<std::uint64_t> z1;
  for (std::uint64_t code = 0; code < N; ++code)
    if (dnorm[code] == 0) z1.push_back(code);
  std::vector<LambdaElem> zd(z1.size() * E);
  for (std::size_t i = 0; i < z1.size(); ++i) {
    std::vector<LambdaElem> tmp(E);
    dg.decode(z1[i], tmp);
    std::copy(tmp.begin(), tmp.end(), zd.begin() + i * E);
  }
  H1Expansion out;
  out.cochains = N;
  out.orbits = roots.size();
  const std::uint32_t trivial_root = uf.find(0);
  auto keep_min = [](std::optional<Rational>& slot, const Rational& r) {
    if (!slot || r < *slot) slot = r;
  };
  std::vector<LambdaElem> rep(E);
  for (auto r : roots) {
    if (r == trivial_root) continue;
    keep_min(out.cobound, Rational(static_cast<std::int64_t>(dnorm[r]) * den1,
                                   den2 * static_cast<std::int64_t>(min_norm[r])));
    if (dnorm[r] == 0) {
      keep_min(out.systole, Rational(min_norm[r], den1));
      continue;
    }
    dg.decode(r, rep);
    std::int64_t dist = std::numeric_limits<std::int64_t>::max();
    for (std::size_t i = 0; i < z1.size(); ++i) {
      std::int64_t s = 0;
      for (std::size_t e = 0; e < E && s < dist; ++e)
        if (rep[e] != zd[i * E + e]) s += w1[e];
      dist = std::min(dist, s);
    }
    keep_min(out.cosys, Rational(static_cast<std::int64_t>(dnorm[r]) * den1, den2 * dist));
  }
  return out;
}

Rational distance_to_coboundaries(const SimplicialComplex& x, const CoefficientGroup& lambda,
                                  const Cochain1& phi, std::uint64_t node_cap) {
  check_size(x, lambda, phi);
  SpanningTree tree = bfs_tree(x);
  const std::size_t V = x.vertex_count();
  auto w1 = containing_counts(x, 1);
  std::vector<std::size_t> pos(V);
  for (std::size_t k = 0; k < V; ++k) pos[tree.order[k]] = k;
  // Edges to earlier vertices, per position: (earlier vertex, edge, vertex is smaller end).
  struct Back {
    Vertex other;
    std::uint32_t edge;
    bool first;
  };
  std::vector<std::vector<Back>> back(V);
  for (std::size_t e = 0; e < phi.size(); ++e) {
    auto f = x.faces(1).face(e);
    Vertex a = f[0], b = f[1];
    if (pos[a] < pos[b])
      back[pos[b]].push_back({a, static_cast<std::uint32_t>(e), false});
    else
      back[pos[a]].push_back({b, static_cast<std::uint32_t>(e), true});
  }
  std::int64_t best = 0;
  for (std::size_t e = 0; e < phi.size(); ++e)
    if (phi[e]) best += w1[e];
  Cochain0 psi(V, 0);
  std::uint64_t nodes = 0;
  // d0 psi(a, b) = psi(a) psi(b)^-1 for a < b.
  auto rec = [&](auto&& self, std::size_t k, std::int64_t cost) -> void {
    if (cost >= best) return;
    if (k == V) {
      best = cost;
      return;
    }
    if (++nodes > node_cap) throw ResourceError("distance search exceeded its node cap", nodes);
    Vertex v = tree.order[k];
    Vertex p = tree.parent[v];
    // Try first the value that makes the tree edge agree.
    LambdaElem hint = lambda.mul(lambda.inv(oriented_value(x, lambda, phi, p, v)), psi[p]);
    for (LambdaElem step = 0; step < lambda.order(); ++step) {
      LambdaElem val = step == 0 ? hint : (step <= hint ? step - 1 : step);
      psi[v] = val;
      std::int64_t c = cost;
      for (const auto& bk : back[k]) {
        LambdaElem dv = bk.first ? lambda.mul(psi[v], lambda.inv(psi[bk.other]))
                                 : lambda.mul(psi[bk.other], lambda.inv(psi[v]));
        if (dv != phi[bk.edge]) c += w1[bk.edge];
      }
      self(self, k + 1, c);
    }
    psi[v] = 0;
  };
  rec(rec, 1, 0);
  return {best, denominator(x, 1)};
}

H1Search expansion_h1_search(const SimplicialComplex& x, const CoefficientGroup& lambda, std::uint64_t proposals,
                             std::uint64_t seed, std::uint64_t node_cap) {
  require_pure(x);
  if (x.dim() < 1) throw ParameterError("expansion needs a complex with edges");
  const std::size_t E = edge_count(x);
  const std::uint32_t m = lambda.order();
  H1Search out;
  if (m < 2 || E == 0) return out;
  std::mt19937_64 rng(seed);
  auto ratio = [&](const Cochain1& phi) -> std::optional<Rational> {
    Rational dist = distance_to_coboundaries(x, lambda, phi, node_cap);
    if (dist == Rational(0)) return std::nullopt;
    return norm2(x, d1(x, lambda, phi)) / dist;
  };
  auto consider = [&](const Cochain1& phi, const std::optional<Rational>& r) {
    if (r && (!out.upper_bound || *r < *out.upper_bound)) {
      out.upper_bound = r;
      out.best = phi;
    }
  };
  for (std::uint64_t t = 0; t < proposals; ++t) {
    ++out.proposals;
    Cochain1 phi(E, 0);
    std::size_t support = 1 + rng() % std::min<std::size_t>(3, E);
    for (std::size_t q = 0; q < support; ++q) phi[rng() % E] = static_cast<LambdaElem>(1 + rng() % (m - 1));
    auto cur = ratio(phi);
    consider(phi, cur);
    // One pass of first-improvement single-edge moves.
    for (std::size_t e = 0; e < E; ++e) {
      LambdaElem old = phi[e];
      LambdaElem v = static_cast<LambdaElem>(rng() % m);
      if (v == old) continue;
      phi[e] = v;
      auto r = ratio(phi);
      if (r && (!cur || *r < *cur)) {
        cur = r;
        consider(phi, r);
      } else {
        phi[e] = old;
      }
    }
  }
  return out;
}

double dd_bound(double lambda, double beta) {
  if (!(lambda >= 0.0 && lambda < 1.0) || !(beta > 0.0)) throw ParameterError("dd_bound needs 0 <= lambda < 1 and beta > 0");
  return (1.0 - lambda) * beta / 24.0 - std::exp(1.0) * lambda;
}

} // namespace hdx
