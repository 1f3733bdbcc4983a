#include "hdx/complex.hpp"

#include "hdx/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <string>

namespace hdx {

namespace {

// Index subsets of {0..m-1} of size r, lexicographic.
std::vector<std::vector<int>> index_subsets(int m, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(r);
  std::iota(cur.begin(), cur.end(), 0);
  if (r > m) return out;
  for (;;) {
    out.push_back(cur);
    int k = r - 1;
    while (k >= 0 && cur[k] == m - r + k) --k;
    if (k < 0) break;
    ++cur[k];
    for (int q = k + 1; q < r; ++q) cur[q] = cur[q - 1] + 1;
  }
  return out;
}

// Sorts groups of `width` vertices lexicographically, merging duplicates
// and summing their multiplicities.
void sort_and_count(std::vector<Vertex>& flat, std::size_t width, std::size_t vertex_count,
                    std::vector<std::uint64_t>& counts) {
  const std::size_t n = width ? flat.size() / width : 0;
  const unsigned bits = std::max(1u, static_cast<unsigned>(std::bit_width(vertex_count)));
  counts.clear();
  if (width * bits <= 64) {
    std::vector<std::uint64_t> keys(n);
    for (std::size_t f = 0; f < n; ++f) {
      std::uint64_t key = 0;
      for (std::size_t q = 0; q < width; ++q) key = (key << bits) | flat[f * width + q];
      keys[f] = key;
    }
    std::sort(keys.begin(), keys.end());
    flat.clear();
    const std::uint64_t mask = bits == 64 ? ~0ull : ((1ull << bits) - 1);
    for (std::size_t f = 0; f < n;) {
      std::size_t g = f;
      while (g < n && keys[g] == keys[f]) ++g;
      for (std::size_t q = width; q-- > 0;) flat.push_back(static_cast<Vertex>((keys[f] >> (q * bits)) & mask));
      counts.push_back(g - f);
      f = g;
    }
    return;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(flat.begin() + a * width, flat.begin() + (a + 1) * width,
                                        flat.begin() + b * width, flat.begin() + (b + 1) * width);
  };
  auto equal = [&](std::size_t a, std::size_t b) {
    return std::equal(flat.begin() + a * width, flat.begin() + (a + 1) * width, flat.begin() + b * width);
  };
  std::sort(order.begin(), order.end(), less);
  std::vector<Vertex> out;
  for (std::size_t f = 0; f < n;) {
    std::size_t g = f;
    while (g < n && equal(order[g], order[f])) ++g;
    out.insert(out.end(), flat.begin() + order[f] * width, flat.begin() + (order[f] + 1) * width);
    counts.push_back(g - f);
    f = g;
  }
  flat = std::move(out);
}

struct UnionFind {
  std::vector<Vertex> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  Vertex find(Vertex v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

} // namespace

FaceTable::FaceTable(int k, std::vector<Vertex> flat, std::vector<std::uint64_t> containing)
    : k_(k), flat_(std::move(flat)), containing_(std::move(containing)) {}

std::optional<std::size_t> FaceTable::find(std::span<const Vertex> face) const {
  if (face.size() != static_cast<std::size_t>(k_ + 1)) return std::nullopt;
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    auto f = this->face(mid);
    if (std::lexicographical_compare(f.begin(), f.end(), face.begin(), face.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < size() && std::equal(face.begin(), face.end(), this->face(lo).begin())) return lo;
  return std::nullopt;
}

SimplicialComplex::SimplicialComplex(int dim, std::size_t vertex_count, std::vector<int> colors,
                                     std::vector<std::vector<Vertex>> max_faces)
    : dim_(dim), vertex_count_(vertex_count), colors_(std::move(colors)) {
  std::vector<Vertex> flat;
  for (const auto& f : max_faces) {
    if (f.size() != static_cast<std::size_t>(dim + 1))
      throw InputError("maximal face of size " + std::to_string(f.size()) + " in a complex of dimension " +
                       std::to_string(dim));
    flat.insert(flat.end(), f.begin(), f.end());
  }
  build(std::move(flat));
}

SimplicialComplex SimplicialComplex::from_flat(int dim, std::size_t vertex_count, std::vector<int> colors,
                                               std::vector<Vertex> flat_max_faces) {
  SimplicialComplex x(dim, vertex_count, std::move(colors));
  x.build(std::move(flat_max_faces));
  return x;
}

void SimplicialComplex::build(std::vector<Vertex> flat) {
  if (dim_ < 0) throw ParameterError("complex dimension must be non-negative");
  if (vertex_count_ >= 0xFFFFFFFFu) throw ParameterError("too many vertices");
  const std::size_t width = dim_ + 1;
  if (flat.size() % width) throw InputError("maximal face list is not a multiple of dim+1");
  if (!colors_.empty()) {
    if (colors_.size() != vertex_count_) throw InputError("color list does not match vertex count");
    for (int c : colors_)
      if (c < 0 || c > dim_) throw InputError("vertex color out of range");
  }
  for (std::size_t f = 0; f < flat.size(); f += width) {
    std::sort(flat.begin() + f, flat.begin() + f + width);
    for (std::size_t q = 0; q < width; ++q) {
      if (flat[f + q] >= vertex_count_) throw InputError("face vertex out of range");
      if (q && flat[f + q] == flat[f + q - 1]) throw InputError("face with a repeated vertex");
    }
  }
  std::vector<std::uint64_t> counts;
  sort_and_count(flat, width, vertex_count_, counts);
  std::fill(counts.begin(), counts.end(), 1);
  faces_.resize(width);
  const std::size_t nmax = counts.size();
  for (int k = 0; k < dim_; ++k) {
    auto subsets = index_subsets(dim_ + 1, k + 1);
    std::vector<Vertex> sub;
    sub.reserve(nmax * subsets.size() * (k + 1));
    for (std::size_t f = 0; f < nmax; ++f)
      for (const auto& s : subsets)
        for (int q : s) sub.push_back(flat[f * width + q]);
    std::vector<std::uint64_t> c;
    sort_and_count(sub, k + 1, vertex_count_, c);
    faces_[k] = FaceTable(k, std::move(sub), std::move(c));
  }
  faces_[dim_] = FaceTable(dim_, std::move(flat), std::move(counts));
}

const FaceTable& SimplicialComplex::faces(int k) const {
  if (k < 0 || k > dim_) throw ParameterError("face dimension out of range");
  return faces_[k];
}

bool SimplicialComplex::contains_face(std::span<const Vertex> f) const {
  if (f.empty()) return true;
  if (f.size() > static_cast<std::size_t>(dim_ + 1)) return false;
  return faces_[f.size() - 1].find(f).has_value();
}

bool SimplicialComplex::is_pure() const { return faces_[0].size() == vertex_count_; }

bool SimplicialComplex::is_partite() const {
  if (colors_.empty()) return false;
  std::vector<char> seen(dim_ + 1);
  for (std::size_t f = 0; f < max_face_count(); ++f) {
    std::fill(seen.begin(), seen.end(), 0);
    for (Vertex v : max_face(f)) {
      if (seen[colors_[v]]) return false;
      seen[colors_[v]] = 1;
    }
  }
  return true;
}

std::size_t SimplicialComplex::component_count() const {
  UnionFind uf(vertex_count_);
  if (dim_ >= 1)
    for (std::size_t e = 0; e < faces_[1].size(); ++e) uf.unite(faces_[1].face(e)[0], faces_[1].face(e)[1]);
  std::size_t c = 0;
  for (Vertex v = 0; v < vertex_count_; ++v) c += uf.find(v) == v;
  return c;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t q = 1; q <= k; ++q) r = r * (n - k + q) / q;
  return r;
}

WeightTable weights(const SimplicialComplex& x) {
  WeightTable w;
  const auto top = static_cast<std::int64_t>(x.max_face_count());
  for (int k = 0; k <= x.dim(); ++k) {
    const auto& t = x.faces(k);
    const auto den = static_cast<std::int64_t>(binomial(x.dim() + 1, k + 1)) * top;
    std::vector<Rational> row;
    row.reserve(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) row.emplace_back(static_cast<std::int64_t>(t.containing(i)), den);
    w.by_dim.push_back(std::move(row));
  }
  return w;
}

std::vector<Rational> weight_sums(const SimplicialComplex& x) {
  const auto top = static_cast<std::int64_t>(x.max_face_count());
  std::vector<Rational> out{Rational(top, top)};
  for (int k = 0; k <= x.dim(); ++k) {
    const auto& t = x.faces(k);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < t.size(); ++i) total += t.containing(i);
    out.emplace_back(static_cast<std::int64_t>(total),
                     static_cast<std::int64_t>(binomial(x.dim() + 1, k + 1)) * top);
  }
  return out;
}

Link link(const SimplicialComplex& x, std::vector<Vertex> tau) {
  std::sort(tau.begin(), tau.end());
  if (std::adjacent_find(tau.begin(), tau.end()) != tau.end()) throw InputError("face with a repeated vertex");
  if (!x.contains_face(tau)) throw InputError("link of a set that is not a face");
  if (tau.size() == static_cast<std::size_t>(x.dim() + 1))
    throw ParameterError("the link of a maximal face is the empty complex");
  std::vector<Vertex> rest;
  for (std::size_t f = 0; f < x.max_face_count(); ++f) {
    auto sigma = x.max_face(f);
    if (!std::includes(sigma.begin(), sigma.end(), tau.begin(), tau.end())) continue;
    std::set_difference(sigma.begin(), sigma.end(), tau.begin(), tau.end(), std::back_inserter(rest));
  }
  std::vector<Vertex> map = rest;
  std::sort(map.begin(), map.end());
  map.erase(std::unique(map.begin(), map.end()), map.end());
  for (auto& v : rest) v = static_cast<Vertex>(std::lower_bound(map.begin(), map.end(), v) - map.begin());
  std::vector<int> colors;
  if (x.colored())
    for (Vertex v : map) colors.push_back(x.color(v));
  const int dim = x.dim() - static_cast<int>(tau.size());
  // The colors missing from tau are renumbered to 0..dim in order.
  if (!colors.empty()) {
    std::vector<int> used(colors);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    for (auto& c : colors) c = static_cast<int>(std::lower_bound(used.begin(), used.end(), c) - used.begin());
  }
  return {SimplicialComplex::from_flat(dim, map.size(), std::move(colors), std::move(rest)), std::move(map)};
}

CosetComplex coset_complex(const FiniteGroup& g, const std::vector<FiniteGroup>& subgroups) {
  if (subgroups.size() < 2) throw ParameterError("a coset complex needs at least two subgroups");
  const int n = static_cast<int>(subgroups.size()) - 1;
  CosetComplex out{SimplicialComplex::from_flat(0, 1, {}, {0}), {}, {}};
  Vertex total = 0;
  for (const auto& k : subgroups) {
    out.partitions.push_back(cosets(g, k));
    out.offsets.push_back(total);
    total += static_cast<Vertex>(out.partitions.back().count());
  }
  std::vector<int> colors(total);
  for (int i = 0; i <= n; ++i)
    for (Vertex c = 0; c < out.partitions[i].count(); ++c) colors[out.offsets[i] + c] = i;
  std::vector<Vertex> flat;
  flat.reserve(g.size() * (n + 1));
  for (ElemIndex x = 0; x < g.size(); ++x)
    for (int i = 0; i <= n; ++i) flat.push_back(out.offsets[i] + out.partitions[i].coset_of[x]);
  out.complex = SimplicialComplex::from_flat(n, total, std::move(colors), std::move(flat));
  return out;
}

ProductSet::ProductSet(const FiniteGroup& a, const FiniteGroup& b) {
  if (!same_law(a, b)) throw StructuralError("product set of groups with different laws");
  for (Code x : a.codes())
    for (Code y : b.codes()) codes_.push_back(a.law().multiply(x, y));
  std::sort(codes_.begin(), codes_.end());
  codes_.erase(std::unique(codes_.begin(), codes_.end()), codes_.end());
}

bool ProductSet::contains(Code c) const { return std::binary_search(codes_.begin(), codes_.end(), c); }

bool cosets_meet(const GroupLaw& law, const ProductSet& kj_ki, Code g, Code h) {
  return kj_ki.contains(law.multiply(law.inverse(h), g));
}

QuotientComplex quotient_by_action(const SimplicialComplex& x,
                                   const std::vector<std::vector<Vertex>>& generators) {
  const std::size_t nv = x.vertex_count();
  if (!generators.empty() && !x.colored()) throw StructuralError("quotients need a colored complex");
  UnionFind uf(nv);
  std::vector<Vertex> image(x.dim() + 1);
  for (const auto& perm : generators) {
    if (perm.size() != nv) throw StructuralError("vertex map has the wrong size");
    std::vector<char> hit(nv, 0);
    for (Vertex v = 0; v < nv; ++v) {
      if (perm[v] >= nv || hit[perm[v]]) throw StructuralError("vertex map is not a bijection");
      hit[perm[v]] = 1;
      if (x.color(perm[v]) != x.color(v)) throw StructuralError("action is not color preserving");
    }
    for (std::size_t f = 0; f < x.max_face_count(); ++f) {
      auto face = x.max_face(f);
      for (std::size_t q = 0; q < face.size(); ++q) image[q] = perm[face[q]];
      std::sort(image.begin(), image.end());
      if (!x.faces(x.dim()).find(image)) throw StructuralError("action is not simplicial");
    }
    for (Vertex v = 0; v < nv; ++v) uf.unite(v, perm[v]);
  }
  std::vector<Vertex> proj(nv);
  std::vector<int> colors;
  Vertex next = 0;
  std::vector<Vertex> id_of_root(nv, 0xFFFFFFFFu);
  for (Vertex v = 0; v < nv; ++v) {
    Vertex r = uf.find(v);
    if (id_of_root[r] == 0xFFFFFFFFu) {
      id_of_root[r] = next++;
      if (x.colored()) colors.push_back(x.color(v));
    }
    proj[v] = id_of_root[r];
  }
  std::vector<Vertex> flat;
  flat.reserve(x.max_face_count() * (x.dim() + 1));
  for (std::size_t f = 0; f < x.max_face_count(); ++f) {
    std::size_t start = flat.size();
    for (Vertex v : x.max_face(f)) flat.push_back(proj[v]);
    std::sort(flat.begin() + start, flat.end());
    if (std::adjacent_find(flat.begin() + start, flat.end()) != flat.end())
      throw StructuralError("quotient map is not rigid on a maximal face");
  }
  return {SimplicialComplex::from_flat(x.dim(), next, std::move(colors), std::move(flat)), std::move(proj)};
}

std::vector<std::vector<Vertex>> left_action(const CosetComplex& x, const FiniteGroup& g,
                                             std::span<const Code> elements) {
  std::vector<std::vector<Vertex>> out;
  const GroupLaw& law = g.law();
  for (Code a : elements) {
    std::vector<Vertex> perm(x.complex.vertex_count());
    for (std::size_t i = 0; i < x.partitions.size(); ++i) {
      const auto& part = x.partitions[i];
      for (Vertex c = 0; c < part.count(); ++c) {
        ElemIndex y = g.index_of(law.multiply(a, g.code(part.representatives[c])));
        perm[x.offsets[i] + c] = x.offsets[i] + part.coset_of[y];
      }
    }
    out.push_back(std::move(perm));
  }
  return out;
}

std::vector<FiniteGroup> image_subgroups(const QuotientGroup& q, const FiniteGroup& g,
                                         const std::vector<FiniteGroup>& subgroups) {
  std::vector<FiniteGroup> out;
  for (const auto& k : subgroups) {
    std::vector<Code> img;
    for (Code c : k.codes()) img.push_back(q.group.code(q.projection[g.index_of(c)]));
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    out.emplace_back(q.group.law_ptr(), std::move(img), std::vector<Code>{});
  }
  return out;
}

bool verify_quotient_proposition(const FiniteGroup& g, const std::vector<FiniteGroup>& subgroups,
                                 const FiniteGroup& n) {
  QuotientGroup q = quotient(g, n);
  CosetComplex x = coset_complex(g, subgroups);
  auto gens = n.generator_codes();
  QuotientComplex lhs = quotient_by_action(x.complex, left_action(x, g, gens));
  CosetComplex rhs = coset_complex(q.group, image_subgroups(q, g, subgroups));
  return is_isomorphic_partite(lhs.complex, rhs.complex).has_value();
}

std::optional<std::vector<Vertex>> is_isomorphic_partite(const SimplicialComplex& x,
                                                         const SimplicialComplex& y,
                                                         std::size_t vertex_cap, std::uint64_t step_cap) {
  const std::size_t nv = x.vertex_count();
  if (nv > vertex_cap || y.vertex_count() > vertex_cap)
    throw ResourceError("isomorphism search above the vertex cap " + std::to_string(vertex_cap), nv);
  if (x.dim() != y.dim() || nv != y.vertex_count() || x.colored() != y.colored()) return std::nullopt;
  for (int k = 0; k <= x.dim(); ++k)
    if (x.face_count(k) != y.face_count(k)) return std::nullopt;

  struct Side {
    std::vector<std::vector<Vertex>> nbrs;
    std::vector<std::vector<std::size_t>> faces_at;
  };
  auto prepare = [](const SimplicialComplex& c) {
    Side s;
    s.nbrs.resize(c.vertex_count());
    s.faces_at.resize(c.vertex_count());
    if (c.dim() >= 1)
      for (std::size_t e = 0; e < c.faces(1).size(); ++e) {
        auto f = c.faces(1).face(e);
        s.nbrs[f[0]].push_back(f[1]);
        s.nbrs[f[1]].push_back(f[0]);
      }
    for (auto& v : s.nbrs) std::sort(v.begin(), v.end());
    for (std::size_t f = 0; f < c.max_face_count(); ++f)
      for (Vertex v : c.max_face(f)) s.faces_at[v].push_back(f);
    return s;
  };
  const Side sx = prepare(x), sy = prepare(y);
  using Key = std::tuple<int, std::size_t, std::size_t>;
  auto key = [](const SimplicialComplex& c, const Side& s, Vertex v) {
    return Key{c.color(v), s.nbrs[v].size(), s.faces_at[v].size()};
  };
  {
    std::vector<Key> kx, ky;
    for (Vertex v = 0; v < nv; ++v) {
      kx.push_back(key(x, sx, v));
      ky.push_back(key(y, sy, v));
    }
    std::sort(kx.begin(), kx.end());
    std::sort(ky.begin(), ky.end());
    if (kx != ky) return std::nullopt;
  }

  // BFS order over the 1-skeleton so each vertex after the first in its
  // component has an already placed neighbour.
  std::vector<Vertex> order, parent(nv, 0xFFFFFFFFu);
  std::vector<char> seen(nv, 0);
  for (Vertex r = 0; r < nv; ++r) {
    if (seen[r]) continue;
    seen[r] = 1;
    std::size_t head = order.size();
    order.push_back(r);
    while (head < order.size()) {
      Vertex v = order[head++];
      for (Vertex w : sx.nbrs[v])
        if (!seen[w]) {
          seen[w] = 1;
          parent[w] = v;
          order.push_back(w);
        }
    }
  }

  constexpr Vertex unmapped = 0xFFFFFFFFu;
  std::vector<Vertex> phi(nv, unmapped);
  std::vector<char> used(nv, 0);
  std::vector<std::vector<Vertex>> cands(nv);
  std::vector<std::size_t> pos(nv, 0);
  std::vector<Vertex> image(x.dim() + 1);

  auto fill = [&](std::size_t depth) {
    Vertex v = order[depth];
    cands[depth].clear();
    pos[depth] = 0;
    Key kv = key(x, sx, v);
    auto consider = [&](Vertex w) {
      if (!used[w] && key(y, sy, w) == kv) cands[depth].push_back(w);
    };
    if (parent[v] != unmapped)
      for (Vertex w : sy.nbrs[phi[parent[v]]]) consider(w);
    else
      for (Vertex w = 0; w < nv; ++w) consider(w);
  };
  auto fits = [&](Vertex v, Vertex w) {
    std::size_t mapped_x = 0, mapped_y = 0;
    for (Vertex u : sx.nbrs[v])
      if (phi[u] != unmapped) {
        ++mapped_x;
        if (!std::binary_search(sy.nbrs[w].begin(), sy.nbrs[w].end(), phi[u])) return false;
      }
    for (Vertex u : sy.nbrs[w]) mapped_y += used[u];
    if (mapped_x != mapped_y) return false;
    phi[v] = w;
    bool ok = true;
    for (std::size_t f : sx.faces_at[v]) {
      auto face = x.max_face(f);
      bool complete = true;
      for (std::size_t q = 0; q < face.size() && complete; ++q) {
        if (phi[face[q]] == unmapped) complete = false;
        else image[q] = phi[face[q]];
      }
      if (!complete) continue;
      std::sort(image.begin(), image.end());
      if (!y.faces(y.dim()).find(image)) {
        ok = false;
        break;
      }
    }
    phi[v] = unmapped;
    return ok;
  };

  if (nv == 0) return std::vector<Vertex>{};
  std::size_t depth = 0;
  std::uint64_t steps = 0;
  fill(0);
  for (;;) {
    if (++steps > step_cap) throw ResourceError("isomorphism search exceeded its step cap", steps);
    Vertex v = order[depth];
    if (pos[depth] < cands[depth].size()) {
      Vertex w = cands[depth][pos[depth]++];
      if (!fits(v, w)) continue;
      phi[v] = w;
      used[w] = 1;
      if (++depth == nv) return phi;
      fill(depth);
    } else {
      if (depth == 0) return std::nullopt;
      --depth;
      used[phi[order[depth]]] = 0;
      phi[order[depth]] = unmapped;
    }
  }
}

SimplicialComplex recolor(const SimplicialComplex& x, const std::vector<int>& perm) {
  if (perm.size() != static_cast<std::size_t>(x.dim() + 1)) throw ParameterError("color permutation has the wrong size");
  std::vector<int> colors;
  for (int c : x.colors()) colors.push_back(perm.at(c));
  std::vector<Vertex> flat;
  for (std::size_t f = 0; f < x.max_face_count(); ++f) {
    auto face = x.max_face(f);
    flat.insert(flat.end(), face.begin(), face.end());
  }
  return SimplicialComplex::from_flat(x.dim(), x.vertex_count(), std::move(colors), std::move(flat));
}

bool isomorphic_up_to_colors(const SimplicialComplex& x, const SimplicialComplex& y) {
  std::vector<int> perm(y.dim() + 1);
  std::iota(perm.begin(), perm.end(), 0);
  if (!y.colored()) return is_isomorphic_partite(x, y).has_value();
  do {
    if (is_isomorphic_partite(x, recolor(y, perm))) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

void write_complex(std::ostream& os, const SimplicialComplex& x) {
  nlohmann::json head;
  head["n"] = x.dim();
  head["vertex_count"] = x.vertex_count();
  head["colors"] = x.colored() ? nlohmann::json(x.colors()) : nlohmann::json(nullptr);
  os << head.dump() << '\n';
  for (std::size_t f = 0; f < x.max_face_count(); ++f) {
    auto face = x.max_face(f);
    os << nlohmann::json(std::vector<Vertex>(face.begin(), face.end())).dump() << '\n';
  }
}

SimplicialComplex read_complex(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InputError("complex file is empty");
  try {
    auto head = nlohmann::json::parse(line);
    int dim = head.at("n").get<int>();
    auto nv = head.at("vertex_count").get<std::size_t>();
    std::vector<int> colors;
    if (head.contains("colors") && !head["colors"].is_null()) colors = head["colors"].get<std::vector<int>>();
    std::vector<std::vector<Vertex>> faces;
    while (std::getline(is, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      faces.push_back(nlohmann::json::parse(line).get<std::vector<Vertex>>());
    }
    return SimplicialComplex(dim, nv, std::move(colors), std::move(faces));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed complex file: ") + e.what());
  }
}

} // namespace hdx
