#pragma once

// Reference computations on coset complexes, written directly from the
// definitions: vertices are explicit coset sets and faces are sets of cosets
// of distinct colors that pairwise intersect.

#include "hdx/complex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using hdx::Code;
using hdx::FiniteGroup;

/// A vertex named by its color and the sorted codes of its coset.
using NamedVertex = std::pair<int, std::vector<Code>>;
using NamedFace = std::set<NamedVertex>;

inline std::vector<NamedVertex> all_cosets(const FiniteGroup& g, const std::vector<FiniteGroup>& ks) {
  std::set<NamedVertex> out;
  for (std::size_t i = 0; i < ks.size(); ++i)
    for (Code x : g.codes()) {
      std::vector<Code> c;
      for (Code k : ks[i].codes()) c.push_back(g.law().multiply(x, k));
      std::sort(c.begin(), c.end());
      out.insert({static_cast<int>(i), c});
    }
  return {out.begin(), out.end()};
}

inline bool meet(const std::vector<Code>& a, const std::vector<Code>& b) {
  std::vector<Code> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  return !both.empty();
}

/// All faces with at least one vertex whose cosets pairwise intersect.
inline std::set<NamedFace> clique_faces(const FiniteGroup& g, const std::vector<FiniteGroup>& ks) {
  auto v = all_cosets(g, ks);
  std::set<NamedFace> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (!cur.empty()) {
      NamedFace f;
      for (auto q : cur) f.insert(v[q]);
      out.insert(f);
    }
    for (std::size_t q = from; q < v.size(); ++q) {
      bool ok = true;
      for (auto r : cur)
        if (v[r].first == v[q].first || !meet(v[r].second, v[q].second)) ok = false;
      if (!ok) continue;
      cur.push_back(q);
      self(self, q + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Faces of a library coset complex, named the same way.
inline std::set<NamedFace> named_faces(const hdx::CosetComplex& cc, const FiniteGroup& g,
                                       const std::vector<FiniteGroup>& ks) {
  std::map<hdx::Vertex, NamedVertex> name;
  for (std::size_t i = 0; i < ks.size(); ++i)
    for (hdx::Vertex c = 0; c < cc.partitions[i].count(); ++c) {
      std::vector<Code> s;
      Code x = g.code(cc.partitions[i].representatives[c]);
      for (Code k : ks[i].codes()) s.push_back(g.law().multiply(x, k));
      std::sort(s.begin(), s.end());
      name[cc.offsets[i] + c] = {static_cast<int>(i), s};
    }
  std::set<NamedFace> out;
  for (int k = 0; k <= cc.complex.dim(); ++k)
    for (std::size_t f = 0; f < cc.complex.faces(k).size(); ++f) {
      NamedFace nf;
      for (auto v : cc.complex.faces(k).face(f)) nf.insert(name.at(v));
      out.insert(nf);
    }
  return out;
}

/// Connected pure complexes of dimension 1 and 2 counted per (vertices,
/// dimension) by scanning every set of candidate faces and comparing all
/// vertex permutations.
inline std::map<std::pair<std::uint32_t, int>, std::size_t> brute_small_counts(std::uint32_t max_vertices,
                                                                               std::size_t max_edges) {
  std::map<std::pair<std::uint32_t, int>, std::size_t> out;
  for (std::uint32_t nv = 3; nv <= max_vertices; ++nv)
    for (int dim = 1; dim <= 2; ++dim) {
      std::vector<std::vector<hdx::Vertex>> cand;
      for (hdx::Vertex a = 0; a < nv; ++a)
        for (hdx::Vertex b = a + 1; b < nv; ++b) {
          if (dim == 1) cand.push_back({a, b});
          else
            for (hdx::Vertex c = b + 1; c < nv; ++c) cand.push_back({a, b, c});
        }
      std::set<std::vector<std::vector<hdx::Vertex>>> seen;
      std::vector<hdx::Vertex> perm(nv);
      for (std::uint64_t mask = 1; mask < (1ull << cand.size()); ++mask) {
        std::vector<std::vector<hdx::Vertex>> faces;
        for (std::size_t q = 0; q < cand.size(); ++q)
          if (mask >> q & 1) faces.push_back(cand[q]);
        hdx::SimplicialComplex x(dim, nv, {}, faces);
        if (!x.is_pure() || x.face_count(1) > max_edges || x.component_count() != 1) continue;
        std::vector<std::vector<hdx::Vertex>> best;
        for (hdx::Vertex v = 0; v < nv; ++v) perm[v] = v;
        do {
          std::vector<std::vector<hdx::Vertex>> img;
          for (const auto& f : faces) {
            std::vector<hdx::Vertex> g;
            for (hdx::Vertex v : f) g.push_back(perm[v]);
            std::sort(g.begin(), g.end());
            img.push_back(g);
          }
          std::sort(img.begin(), img.end());
          if (best.empty() || img < best) best = img;
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (seen.insert(best).second) ++out[{nv, dim}];
      }
    }
  return out;
}

} // namespace oracle
