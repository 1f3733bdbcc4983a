#pragma once

// Linear algebra over F_p and subset enumeration, used to check the group
// cochain code against the Abelian theory and the weighted Cheeger constant.

#include "hdx/complex.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<std::int64_t>>;

inline std::int64_t mod(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  for (std::int64_t b = 1; b < p; ++b)
    if (mod(a * b, p) == 1) return b;
  return 0;
}

/// Row reduction; returns the rank and leaves m in reduced echelon form.
inline std::size_t rank_mod(Matrix m, std::int64_t p, Matrix* reduced = nullptr) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && mod(m[piv][c], p) == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    std::int64_t s = inv_mod(mod(m[rank][c], p), p);
    for (auto& v : m[rank]) v = mod(v * s, p);
    for (std::size_t r = 0; r < m.size(); ++r)
      if (r != rank && mod(m[r][c], p)) {
        std::int64_t f = m[r][c];
        for (std::size_t k = 0; k < cols; ++k) m[r][k] = mod(m[r][k] - f * m[rank][k], p);
      }
    ++rank;
  }
  if (reduced) *reduced = m;
  return rank;
}

/// Edge list (u < v) and triangle list of a complex, from its maximal faces.
struct Skeleton {
  std::vector<std::pair<hdx::Vertex, hdx::Vertex>> edges;
  std::vector<std::vector<hdx::Vertex>> triangles;
};

inline Skeleton skeleton(const hdx::SimplicialComplex& x) {
  std::set<std::pair<hdx::Vertex, hdx::Vertex>> e;
  std::set<std::vector<hdx::Vertex>> t;
  for (std::size_t f = 0; f < x.max_face_count(); ++f) {
    auto s = x.max_face(f);
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = a + 1; b < s.size(); ++b) {
        e.insert({s[a], s[b]});
        for (std::size_t c = b + 1; c < s.size(); ++c) t.insert({s[a], s[b], s[c]});
      }
  }
  return {{e.begin(), e.end()}, {t.begin(), t.end()}};
}

/// Coboundary matrices of the cochain complex with Z coefficients.
inline Matrix delta0(const hdx::SimplicialComplex& x) {
  auto sk = skeleton(x);
  Matrix m(sk.edges.size(), std::vector<std::int64_t>(x.vertex_count(), 0));
  for (std::size_t i = 0; i < sk.edges.size(); ++i) {
    m[i][sk.edges[i].first] += 1;
    m[i][sk.edges[i].second] -= 1;
  }
  return m;
}

inline Matrix delta1(const hdx::SimplicialComplex& x) {
  auto sk = skeleton(x);
  std::map<std::pair<hdx::Vertex, hdx::Vertex>, std::size_t> idx;
  for (std::size_t i = 0; i < sk.edges.size(); ++i) idx[sk.edges[i]] = i;
  Matrix m(sk.triangles.size(), std::vector<std::int64_t>(sk.edges.size(), 0));
  for (std::size_t t = 0; t < sk.triangles.size(); ++t) {
    auto a = sk.triangles[t][0], b = sk.triangles[t][1], c = sk.triangles[t][2];
    m[t][idx[{a, b}]] += 1;
    m[t][idx[{b, c}]] += 1;
    m[t][idx[{a, c}]] -= 1;
  }
  return m;
}

/// |H^1(X, Z/p)| = p^(dim Z^1 - dim B^1) for prime p.
inline std::uint64_t h1_order_mod_p(const hdx::SimplicialComplex& x, std::int64_t p) {
  auto sk = skeleton(x);
  std::size_t z = sk.edges.size() - (sk.triangles.empty() ? 0 : rank_mod(delta1(x), p));
  std::size_t b = rank_mod(delta0(x), p);
  std::uint64_t r = 1;
  for (std::size_t k = b; k < z; ++k) r *= static_cast<std::uint64_t>(p);
  return r;
}

/// A vector in ker(delta1) outside im(delta0) over F_p, as edge values in
/// skeleton order, or nothing if H^1 vanishes.
inline std::optional<std::vector<std::int64_t>> nontrivial_cocycle_mod_p(const hdx::SimplicialComplex& x,
                                                                         std::int64_t p) {
  auto sk = skeleton(x);
  const std::size_t E = sk.edges.size();
  Matrix red;
  std::size_t rank = sk.triangles.empty() ? 0 : rank_mod(delta1(x), p, &red);
  std::vector<std::size_t> pivots;
  for (std::size_t r = 0; r < rank; ++r)
    for (std::size_t c = 0; c < E; ++c)
      if (red[r][c]) {
        pivots.push_back(c);
        break;
      }
  auto b0 = delta0(x);
  // Columns of delta0 span B^1.
  Matrix span;
  for (std::size_t v = 0; v < x.vertex_count(); ++v) {
    std::vector<std::int64_t> col(E);
    for (std::size_t e = 0; e < E; ++e) col[e] = b0[e][v];
    span.push_back(col);
  }
  const std::size_t base_rank = rank_mod(span, p);
  for (std::size_t freec = 0; freec < E; ++freec) {
    if (std::find(pivots.begin(), pivots.end(), freec) != pivots.end()) continue;
    std::vector<std::int64_t> z(E, 0);
    z[freec] = 1;
    for (std::size_t r = 0; r < rank; ++r) z[pivots[r]] = mod(-red[r][freec], p);
    auto with = span;
    with.push_back(z);
    if (rank_mod(with, p) > base_rank) return z;
  }
  return std::nullopt;
}

/// min over nonempty proper S of w(cut(S)) / min(w(S), w(complement)), with
/// weights recomputed from maximal faces.
inline hdx::Rational weighted_cheeger(const hdx::SimplicialComplex& x) {
  const std::size_t nv = x.vertex_count();
  const std::int64_t n = x.dim();
  std::vector<std::int64_t> wv(nv, 0);
  std::map<std::pair<hdx::Vertex, hdx::Vertex>, std::int64_t> we;
  for (std::size_t f = 0; f < x.max_face_count(); ++f) {
    auto s = x.max_face(f);
    for (std::size_t a = 0; a < s.size(); ++a) {
      ++wv[s[a]];
      for (std::size_t b = a + 1; b < s.size(); ++b) ++we[{s[a], s[b]}];
    }
  }
  const std::int64_t top = static_cast<std::int64_t>(x.max_face_count());
  const std::int64_t den0 = (n + 1) * top, den1 = (n + 1) * n / 2 * top;
  std::optional<hdx::Rational> best;
  std::int64_t total = 0;
  for (auto w : wv) total += w;
  for (std::uint64_t mask = 1; mask + 1 < (1ull << nv); ++mask) {
    std::int64_t in = 0, cut = 0;
    for (std::size_t v = 0; v < nv; ++v)
      if (mask >> v & 1) in += wv[v];
    for (auto [e, w] : we)
      if ((mask >> e.first & 1) != (mask >> e.second & 1)) cut += w;
    std::int64_t small = std::min(in, total - in);
    hdx::Rational r(cut * den0, den1 * small);
    if (!best || r < *best) best = r;
  }
  return *best;
}

} // namespace oracle
