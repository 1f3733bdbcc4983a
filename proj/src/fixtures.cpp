#include "hdx/fixtures.hpp"

#include "hdx/error.hpp"
#include "hdx/matgroup.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <numeric>
#include <set>

namespace hdx {

namespace {

SimplicialComplex uncolored(int dim, std::uint32_t nv, std::vector<std::vector<Vertex>> faces) {
  return SimplicialComplex(dim, nv, {}, std::move(faces));
}

FiniteGroup perm_group(std::uint32_t degree, const std::vector<std::vector<std::vector<int>>>& gens) {
  auto law = std::make_shared<PermutationLaw>(degree);
  std::vector<Code> codes;
  for (const auto& cycles : gens) codes.push_back(law->from_cycles(cycles));
  return bfs_closure(law, codes, 1u << 20);
}

Code perm_code(const FiniteGroup& g, const std::vector<std::vector<int>>& cycles) {
  const auto& law = dynamic_cast<const PermutationLaw&>(g.law());
  return law.from_cycles(cycles);
}

FiniteGroup sub(const FiniteGroup& g, std::vector<Code> gens) { return subgroup(g, gens); }

FiniteGroup perm_sub(const FiniteGroup& g, const std::vector<std::vector<std::vector<int>>>& gens) {
  std::vector<Code> codes;
  for (const auto& c : gens) codes.push_back(perm_code(g, c));
  return sub(g, codes);
}

FiniteGroup trivial(const FiniteGroup& g) { return sub(g, {}); }

} // namespace

SimplicialComplex torus7() {
  std::vector<std::vector<Vertex>> faces;
  for (Vertex i = 0; i < 7; ++i) {
    faces.push_back({i, (i + 1) % 7, (i + 3) % 7});
    faces.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return uncolored(2, 7, faces);
}

SimplicialComplex tetrahedron_boundary() {
  return uncolored(2, 4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

SimplicialComplex single_triangle() { return SimplicialComplex(2, 3, {0, 1, 2}, {{0, 1, 2}}); }

SimplicialComplex single_edge() { return SimplicialComplex(1, 2, {0, 1}, {{0, 1}}); }

SimplicialComplex graph(std::uint32_t m, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  std::vector<std::vector<Vertex>> faces;
  for (auto [a, b] : edges) faces.push_back({a, b});
  return uncolored(1, m, faces);
}

SimplicialComplex complete_graph(std::uint32_t m) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex a = 0; a < m; ++a)
    for (Vertex b = a + 1; b < m; ++b) e.emplace_back(a, b);
  return graph(m, e);
}

SimplicialComplex cycle_graph(std::uint32_t m) {
  if (m < 3) throw ParameterError("a cycle needs at least three vertices");
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex a = 0; a < m; ++a) e.emplace_back(a, (a + 1) % m);
  return graph(m, e);
}

SimplicialComplex path_graph(std::uint32_t m) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex a = 0; a + 1 < m; ++a) e.emplace_back(a, a + 1);
  return graph(m, e);
}

namespace {

using Edge = std::pair<Vertex, Vertex>;

// Vertex classes from iterated refinement by neighbour classes; the class
// order depends only on the isomorphism type.
std::vector<std::vector<Vertex>> refined_cells(std::uint32_t nv, const std::vector<Edge>& edges) {
  std::vector<std::vector<Vertex>> adj(nv);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<std::uint32_t> cls(nv, 0);
  std::size_t classes = 1;
  for (;;) {
    std::vector<std::vector<std::uint32_t>> sig(nv);
    for (Vertex v = 0; v < nv; ++v) {
      sig[v].push_back(cls[v]);
      std::vector<std::uint32_t> nb;
      for (Vertex u : adj[v]) nb.push_back(cls[u]);
      std::sort(nb.begin(), nb.end());
      sig[v].insert(sig[v].end(), nb.begin(), nb.end());
    }
    auto sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (Vertex v = 0; v < nv; ++v)
      cls[v] = static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
    if (sorted.size() == classes) break;
    classes = sorted.size();
  }
  std::vector<std::vector<Vertex>> cells(classes);
  for (Vertex v = 0; v < nv; ++v) cells[cls[v]].push_back(v);
  return cells;
}

struct Canonical {
  std::vector<std::uint32_t> key;
  std::vector<Vertex> relabel;  // old vertex -> new vertex
};

// Least encoding of (edges, triangles) over relabelings that keep the
// refined cells in order.
Canonical canonical_form(std::uint32_t nv, const std::vector<Edge>& edges,
                         const std::vector<std::array<Vertex, 3>>& triangles) {
  auto cells = refined_cells(nv, edges);
  std::vector<Vertex> relabel(nv);
  Canonical best;
  auto encode = [&] {
    std::vector<std::uint32_t> e, t;
    for (auto [a, b] : edges) {
      auto x = relabel[a], y = relabel[b];
      e.push_back(std::min(x, y) * 16 + std::max(x, y));
    }
    for (const auto& tri : triangles) {
      std::array<Vertex, 3> r{relabel[tri[0]], relabel[tri[1]], relabel[tri[2]]};
      std::sort(r.begin(), r.end());
      t.push_back((r[0] * 16 + r[1]) * 16 + r[2]);
    }
    std::sort(e.begin(), e.end());
    std::sort(t.begin(), t.end());
    e.push_back(0xFFFFFFFFu);
    e.insert(e.end(), t.begin(), t.end());
    if (best.key.empty() || e < best.key) best = {std::move(e), relabel};
  };
  auto rec = [&](auto&& self, std::size_t c, Vertex next) -> void {
    if (c == cells.size()) return encode();
    auto cell = cells[c];
    do {
      for (std::size_t q = 0; q < cell.size(); ++q) relabel[cell[q]] = next + static_cast<Vertex>(q);
      self(self, c + 1, next + static_cast<Vertex>(cell.size()));
    } while (std::next_permutation(cell.begin(), cell.end()));
  };
  rec(rec, 0, 0);
  return best;
}

std::vector<Edge> relabeled(const std::vector<Edge>& edges, const std::vector<Vertex>& relabel) {
  std::vector<Edge> out;
  for (auto [a, b] : edges) out.emplace_back(std::min(relabel[a], relabel[b]), std::max(relabel[a], relabel[b]));
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

std::vector<SimplicialComplex> small_complexes(std::uint32_t max_vertices, std::size_t max_edges) {
  if (max_vertices > 16) throw ParameterError("small_complexes supports at most 16 vertices");
  // Connected graphs up to isomorphism, grown one edge at a time.
  std::map<std::vector<std::uint32_t>, std::pair<std::uint32_t, std::vector<Edge>>> graphs, level;
  if (max_vertices >= 2 && max_edges >= 1) level[canonical_form(2, {{0, 1}}, {}).key] = {2, {{0, 1}}};
  while (!level.empty()) {
    graphs.insert(level.begin(), level.end());
    std::map<std::vector<std::uint32_t>, std::pair<std::uint32_t, std::vector<Edge>>> next;
    for (const auto& [key, g] : level) {
      const auto& [nv, edges] = g;
      if (edges.size() >= max_edges) continue;
      std::set<Edge> present(edges.begin(), edges.end());
      auto add = [&](std::uint32_t m, std::vector<Edge> e) {
        auto c = canonical_form(m, e, {});
        if (!next.count(c.key)) next[c.key] = {m, relabeled(e, c.relabel)};
      };
      for (Vertex a = 0; a < nv; ++a) {
        for (Vertex b = a + 1; b < nv; ++b)
          if (!present.count({a, b})) {
            auto e = edges;
            e.emplace_back(a, b);
            add(nv, std::move(e));
          }
        if (nv < max_vertices) {
          auto e = edges;
          e.emplace_back(a, nv);
          add(nv + 1, std::move(e));
        }
      }
    }
    level = std::move(next);
  }

  struct Entry {
    std::uint32_t nv;
    int dim;
    std::vector<std::uint32_t> key;
    std::vector<std::vector<Vertex>> faces;
  };
  std::vector<Entry> entries;
  for (const auto& [key, g] : graphs) {
    const auto& [nv, edges] = g;
    if (nv < 3) continue;
    std::vector<std::vector<Vertex>> faces;
    for (auto [a, b] : edges) faces.push_back({a, b});
    entries.push_back({nv, 1, key, faces});

    std::set<Edge> present(edges.begin(), edges.end());
    std::vector<std::array<Vertex, 3>> tris;
    for (auto [a, b] : edges)
      for (Vertex c = b + 1; c < nv; ++c)
        if (present.count({a, c}) && present.count({b, c})) tris.push_back({a, b, c});
    std::set<std::vector<std::uint32_t>> seen;
    for (std::uint64_t mask = 1; mask < (1ull << tris.size()); ++mask) {
      std::vector<std::array<Vertex, 3>> chosen;
      std::set<Edge> covered;
      for (std::size_t q = 0; q < tris.size(); ++q)
        if (mask >> q & 1) {
          const auto& t = tris[q];
          chosen.push_back(t);
          covered.insert({t[0], t[1]});
          covered.insert({t[0], t[2]});
          covered.insert({t[1], t[2]});
        }
      if (covered.size() != edges.size()) continue;
      auto c = canonical_form(nv, edges, chosen);
      if (!seen.insert(c.key).second) continue;
      std::vector<std::vector<Vertex>> tf;
      for (const auto& t : chosen) tf.push_back({t[0], t[1], t[2]});
      entries.push_back({nv, 2, c.key, tf});
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.nv, a.dim, a.key) < std::tie(b.nv, b.dim, b.key);
  });
  std::vector<SimplicialComplex> out;
  for (auto& e : entries) out.push_back(uncolored(e.dim, e.nv, std::move(e.faces)));
  return out;
}

CosetInstance s3_hexagon() {
  FiniteGroup g = perm_group(3, {{{1, 2}}, {{2, 3}}});
  std::vector<FiniteGroup> ks{perm_sub(g, {{{1, 2}}}), perm_sub(g, {{{2, 3}}})};
  std::vector<FiniteGroup> ns{trivial(g), perm_sub(g, {{{1, 2, 3}}}), g};
  return {"S3 <(1 2)>,<(2 3)>", g, std::move(ks), std::move(ns)};
}

CosetInstance s4_coxeter() {
  FiniteGroup g = perm_group(4, {{{1, 2}}, {{2, 3}}, {{3, 4}}});
  std::vector<FiniteGroup> ks{perm_sub(g, {{{2, 3}}, {{3, 4}}}), perm_sub(g, {{{1, 2}}, {{3, 4}}}),
                              perm_sub(g, {{{1, 2}}, {{2, 3}}})};
  std::vector<FiniteGroup> ns{trivial(g), perm_sub(g, {{{1, 2}, {3, 4}}, {{1, 3}, {2, 4}}}),
                              perm_sub(g, {{{1, 2, 3}}, {{2, 3, 4}}})};
  return {"S4 Coxeter", g, std::move(ks), std::move(ns)};
}

CosetInstance b3_coxeter() {
  // Points 4, 5, 6 stand for -1, -2, -3.
  FiniteGroup g = perm_group(6, {{{1, 2}, {4, 5}}, {{2, 3}, {5, 6}}, {{3, 6}}});
  std::vector<FiniteGroup> ks{perm_sub(g, {{{2, 3}, {5, 6}}, {{3, 6}}}),
                              perm_sub(g, {{{1, 2}, {4, 5}}, {{3, 6}}}),
                              perm_sub(g, {{{1, 2}, {4, 5}}, {{2, 3}, {5, 6}}})};
  std::vector<FiniteGroup> ns{perm_sub(g, {{{1, 4}, {2, 5}, {3, 6}}})};
  return {"B3 Coxeter", g, std::move(ks), std::move(ns)};
}

std::vector<CosetInstance> coset_zoo() {
  std::vector<CosetInstance> out;
  out.push_back(s3_hexagon());
  {
    FiniteGroup g = perm_group(3, {{{1, 2}}, {{2, 3}}});
    std::vector<FiniteGroup> ks{perm_sub(g, {{{1, 2}}}), perm_sub(g, {{{1, 3}}})};
    std::vector<FiniteGroup> ns{perm_sub(g, {{{1, 2, 3}}})};
    out.push_back({"S3 <(1 2)>,<(1 3)>", g, std::move(ks), std::move(ns)});
  }
  {
    FiniteGroup g = perm_group(3, {{{1, 2}}, {{2, 3}}});
    std::vector<FiniteGroup> ks{perm_sub(g, {{{1, 2}}}), perm_sub(g, {{{2, 3}}}), perm_sub(g, {{{1, 3}}})};
    std::vector<FiniteGroup> ns{trivial(g), perm_sub(g, {{{1, 2, 3}}})};
    out.push_back({"S3 three transpositions", g, std::move(ks), std::move(ns)});
  }
  out.push_back(s4_coxeter());
  {
    FiniteGroup g = perm_group(4, {{{1, 2}}, {{2, 3}}, {{3, 4}}});
    std::vector<FiniteGroup> ks{perm_sub(g, {{{1, 2}}}), perm_sub(g, {{{3, 4}}})};
    std::vector<FiniteGroup> ns{perm_sub(g, {{{1, 2}, {3, 4}}, {{1, 3}, {2, 4}}})};
    out.push_back({"S4 <(1 2)>,<(3 4)>", g, std::move(ks), std::move(ns)});
  }
  out.push_back(b3_coxeter());
  {
    auto law = matrix_law(2, 3, 1);
    FiniteGroup g = special_linear(1, 3, 1, 1u << 10);
    auto mat = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
      MatElement m(2, 3, 1);
      m.set_entry(0, 0, TruncPoly::constant(3, 1, a));
      m.set_entry(0, 1, TruncPoly::constant(3, 1, b));
      m.set_entry(1, 0, TruncPoly::constant(3, 1, c));
      m.set_entry(1, 1, TruncPoly::constant(3, 1, d));
      return law->encode(m);
    };
    Code upper = mat(1, 1, 0, 1), lower = mat(1, 0, 1, 1), minus = mat(2, 0, 0, 2), quarter = mat(0, 1, 2, 0);
    FiniteGroup center = sub(g, {minus});
    FiniteGroup q8 = normal_closure(g, std::vector<Code>{quarter});
    out.push_back({"SL2(F3) unipotent pair", g, {sub(g, {upper}), sub(g, {lower})}, {trivial(g), center, q8}});
    out.push_back({"SL2(F3) Borel pair", g, {sub(g, {upper, minus}), sub(g, {lower, minus})}, {center}});
  }
  return out;
}

std::vector<FiniteGroup> ko_subgroups(std::uint32_t n, std::uint32_t p, std::uint32_t s, std::uint32_t d,
                                      std::uint64_t cap) {
  std::vector<FiniteGroup> out;
  for (std::uint32_t i = 0; i <= n; ++i) out.push_back(subgroup_K(n, p, s, d, i, cap));
  return out;
}

KoInstance ko_instance(std::uint32_t n, std::uint32_t p, std::uint32_t s, std::uint32_t d, std::uint64_t cap) {
  auto ks = ko_subgroups(n, p, s, d, cap);
  return {n, p, s, d, special_linear(n, p, s, cap), std::move(ks)};
}

CosetComplex vertex_link(const std::vector<FiniteGroup>& subgroups, std::size_t i) {
  if (subgroups.size() < 3) throw ParameterError("vertex links as coset complexes need at least three subgroups");
  std::vector<FiniteGroup> meets;
  for (std::size_t j = 0; j < subgroups.size(); ++j)
    if (j != i) meets.push_back(intersection(subgroups.at(i), subgroups[j]));
  return coset_complex(subgroups[i], meets);
}

} // namespace hdx
