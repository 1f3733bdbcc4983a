#pragma once

// Pure partite simplicial complexes, coset complexes, links, weights,
// quotients by vertex actions and color-preserving isomorphism.

#include "hdx/group.hpp"
#include "hdx/rational.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace hdx {

using Vertex = std::uint32_t;

/// Faces of one dimension k, sorted lexicographically, each with the number
/// of maximal faces containing it.
class FaceTable {
public:
  FaceTable() = default;
  FaceTable(int k, std::vector<Vertex> flat, std::vector<std::uint64_t> containing);

  int k() const noexcept { return k_; }
  std::size_t size() const noexcept { return containing_.size(); }
  std::span<const Vertex> face(std::size_t idx) const {
    return {flat_.data() + idx * (k_ + 1), static_cast<std::size_t>(k_ + 1)};
  }
  std::uint64_t containing(std::size_t idx) const { return containing_[idx]; }
  /// Index of a sorted face, if present.
  std::optional<std::size_t> find(std::span<const Vertex> face) const;

private:
  int k_ = 0;
  std::vector<Vertex> flat_;
  std::vector<std::uint64_t> containing_;
};

class SimplicialComplex {
public:
  /// max_faces: each of size dim+1 (sorted and deduplicated here). colors is
  /// empty or has one entry in [0, dim] per vertex.
  SimplicialComplex(int dim, std::size_t vertex_count, std::vector<int> colors,
                    std::vector<std::vector<Vertex>> max_faces);
  /// Flat form: consecutive groups of dim+1 vertices.
  static SimplicialComplex from_flat(int dim, std::size_t vertex_count, std::vector<int> colors,
                                     std::vector<Vertex> flat_max_faces);

  int dim() const noexcept { return dim_; }
  std::size_t vertex_count() const noexcept { return vertex_count_; }
  bool colored() const noexcept { return !colors_.empty(); }
  const std::vector<int>& colors() const noexcept { return colors_; }
  int color(Vertex v) const { return colors_.empty() ? 0 : colors_[v]; }

  std::size_t max_face_count() const noexcept { return faces_.back().size(); }
  std::span<const Vertex> max_face(std::size_t idx) const { return faces_.back().face(idx); }

  /// k in [0, dim].
  const FaceTable& faces(int k) const;
  std::size_t face_count(int k) const { return k < 0 ? 1 : faces(k).size(); }
  bool contains_face(std::span<const Vertex> sorted_face) const;

  /// Every vertex lies in a maximal face.
  bool is_pure() const;
  /// Colored, and every maximal face meets each color exactly once.
  bool is_partite() const;
  /// Connected components of the 1-skeleton (isolated vertices count).
  std::size_t component_count() const;

private:
  SimplicialComplex(int dim, std::size_t vertex_count, std::vector<int> colors)
      : dim_(dim), vertex_count_(vertex_count), colors_(std::move(colors)) {}
  void build(std::vector<Vertex> flat);

  int dim_;
  std::size_t vertex_count_;
  std::vector<int> colors_;
  std::vector<FaceTable> faces_;  // faces_[k] for k = 0..dim
};

/// w(tau) = #{maximal faces containing tau} / (C(dim+1, k+1) |X(dim)|).
struct WeightTable {
  std::vector<std::vector<Rational>> by_dim;  // aligned with faces(k)
  Rational of(int k, std::size_t idx) const { return by_dim.at(k).at(idx); }
};

WeightTable weights(const SimplicialComplex& x);
/// Sum of weights per dimension -1..dim, computed from integer counts.
std::vector<Rational> weight_sums(const SimplicialComplex& x);
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

struct Link {
  SimplicialComplex complex;
  std::vector<Vertex> vertex_map;  // link vertex -> original vertex
};

/// Faces eta with tau u eta in X and tau n eta empty. tau must be a
/// non-maximal face (InputError if it is not a face).
Link link(const SimplicialComplex& x, std::vector<Vertex> tau);

/// Coset complex: color-i vertices are the cosets gK_i, vertex id
/// offsets[i] + coset id; maximal faces are {gK_0, ..., gK_n} for g in G.
struct CosetComplex {
  SimplicialComplex complex;
  std::vector<CosetPartition> partitions;
  std::vector<Vertex> offsets;
};

CosetComplex coset_complex(const FiniteGroup& g, const std::vector<FiniteGroup>& subgroups);

/// Sorted codes of the product set A*B, for coset intersection tests:
/// gK_i meets hK_j iff h^-1 g lies in K_j K_i.
class ProductSet {
public:
  ProductSet(const FiniteGroup& a, const FiniteGroup& b);
  bool contains(Code c) const;
  std::size_t size() const noexcept { return codes_.size(); }

private:
  std::vector<Code> codes_;
};

bool cosets_meet(const GroupLaw& law, const ProductSet& kj_ki, Code g, Code h);

struct QuotientComplex {
  SimplicialComplex complex;
  std::vector<Vertex> projection;  // vertex -> orbit id
};

/// Quotient by the group generated by the given vertex permutations. Orbits
/// are numbered by least vertex. Throws StructuralError unless every
/// generator is a color-preserving simplicial automorphism.
QuotientComplex quotient_by_action(const SimplicialComplex& x,
                                   const std::vector<std::vector<Vertex>>& generators);

/// Vertex permutations of left multiplication by the given elements.
std::vector<std::vector<Vertex>> left_action(const CosetComplex& x, const FiniteGroup& g,
                                             std::span<const Code> elements);

/// Images N\(NK_i) of the subgroups in G/N.
std::vector<FiniteGroup> image_subgroups(const QuotientGroup& q, const FiniteGroup& g,
                                         const std::vector<FiniteGroup>& subgroups);

/// Builds N\CC(G, {K_i}) and CC(G/N, {N\(NK_i)}) and decides whether they are
/// isomorphic as colored complexes.
bool verify_quotient_proposition(const FiniteGroup& g, const std::vector<FiniteGroup>& subgroups,
                                 const FiniteGroup& n);

/// Color-preserving simplicial bijection x -> y, if one exists.
std::optional<std::vector<Vertex>> is_isomorphic_partite(const SimplicialComplex& x,
                                                         const SimplicialComplex& y,
                                                         std::size_t vertex_cap = 10000,
                                                         std::uint64_t step_cap = 100000000);

/// Same complex with color c replaced by perm[c].
SimplicialComplex recolor(const SimplicialComplex& x, const std::vector<int>& perm);
/// Isomorphism after some permutation of y's colors.
bool isomorphic_up_to_colors(const SimplicialComplex& x, const SimplicialComplex& y);

/// JSON lines: header {"n", "vertex_count", "colors"}, then one sorted
/// maximal face per line.
void write_complex(std::ostream& os, const SimplicialComplex& x);
SimplicialComplex read_complex(std::istream& is);

} // namespace hdx
