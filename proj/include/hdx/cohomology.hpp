#pragma once

// Cochains in degrees 0 and 1 with coefficients in a finite, possibly
// non-Abelian group, the H^1 decision, norms and expansion constants.

#include "hdx/complex.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hdx {

using LambdaElem = std::uint32_t;

/// A finite group stored as a Cayley table, relabeled so the identity is 0.
class CoefficientGroup {
public:
  CoefficientGroup(const FiniteGroup& g, std::string name);

  static CoefficientGroup zmod(std::uint32_t m);
  static CoefficientGroup symmetric(std::uint32_t k);
  /// Checks the group axioms exhaustively (InputError on failure).
  static CoefficientGroup from_table(const std::vector<std::vector<std::uint32_t>>& table, std::string name);
  /// First line the order m, then m rows of m indices.
  static CoefficientGroup read_table(std::istream& is, std::string name);
  /// "zmod:m", "sym:k" or "table:FILE".
  static CoefficientGroup parse(const std::string& spec);

  std::uint32_t order() const noexcept { return m_; }
  const std::string& name() const noexcept { return name_; }
  static constexpr LambdaElem identity() noexcept { return 0; }
  LambdaElem mul(LambdaElem a, LambdaElem b) const { return table_[a * m_ + b]; }
  LambdaElem inv(LambdaElem a) const { return inv_[a]; }
  std::uint32_t element_order(LambdaElem a) const;
  bool has_element_of_order(std::uint32_t q) const;
  bool is_abelian() const;

private:
  CoefficientGroup() = default;
  void init(const std::vector<std::vector<std::uint32_t>>& table);

  std::uint32_t m_ = 0;
  std::string name_;
  std::vector<LambdaElem> table_;
  std::vector<LambdaElem> inv_;
};

/// One value per vertex.
using Cochain0 = std::vector<LambdaElem>;
/// One value per edge (u, v) with u < v, aligned with faces(1); the reversed
/// orientation carries the inverse, so antisymmetry holds by construction.
using Cochain1 = std::vector<LambdaElem>;
/// One value per triangle (a, b, c), a < b < c, aligned with faces(2).
using Cochain2 = std::vector<LambdaElem>;

/// Oriented edge values; both orientations may be given, and must then be
/// mutually inverse (InputError otherwise, or for a missing edge).
struct OrientedValue {
  Vertex from, to;
  LambdaElem value;
};
Cochain1 cochain_from_oriented(const SimplicialComplex& x, const CoefficientGroup& lambda,
                               const std::vector<OrientedValue>& values);
/// phi((u, v)) for an edge in either orientation.
LambdaElem oriented_value(const SimplicialComplex& x, const CoefficientGroup& lambda, const Cochain1& phi,
                          Vertex u, Vertex v);

Cochain1 d0(const SimplicialComplex& x, const CoefficientGroup& lambda, const Cochain0& phi);
Cochain2 d1(const SimplicialComplex& x, const CoefficientGroup& lambda, const Cochain1& phi);
/// d1 phi on an ordered triangle phi(v0,v1) phi(v1,v2) phi(v2,v0).
LambdaElem d1_ordered(const SimplicialComplex& x, const CoefficientGroup& lambda, const Cochain1& phi,
                      Vertex v0, Vertex v1, Vertex v2);
bool is_cocycle(const SimplicialComplex& x, const CoefficientGroup& lambda, const Cochain1& phi);

/// psi.phi((u, v)) = psi(u) phi((u, v)) psi(v)^-1. InputError unless phi is a cocycle.
Cochain1 gauge_act(const SimplicialComplex& x, const CoefficientGroup& lambda, const Cochain0& psi,
                   const Cochain1& phi);

/// BFS spanning tree of the 1-skeleton rooted at vertex 0, neighbours in
/// increasing order. InputError if the 1-skeleton is disconnected.
struct SpanningTree {
  std::vector<Vertex> order;            // BFS order
  std::vector<Vertex> parent;           // parent[root] = root
  std::vector<std::size_t> parent_edge; // edge index into faces(1)
  std::vector<char> in_tree;            // per edge
};
SpanningTree bfs_tree(const SimplicialComplex& x);

/// Gauge-equivalent cocycle that is the identity on every tree edge.
Cochain1 tree_gauge_fix(const SimplicialComplex& x, const CoefficientGroup& lambda, const Cochain1& phi);

enum class H1Mode { gauge, brute };

struct H1Options {
  std::uint64_t cap = 1ull << 24;      // brute: |Lambda|^|edges| and |Lambda|^|vertices|
  std::uint64_t step_cap = 1ull << 32; // gauge: edge assignments tried
  bool count_all = false;              // gauge: enumerate every tree-trivial cocycle
  unsigned workers = 0;
};

struct H1Result {
  bool trivial = true;
  /// Least nontrivial tree-trivial cocycle found, when not trivial.
  std::optional<Cochain1> witness;
  /// Gauge: tree-trivial cocycles found (all of them when count_all or
  /// trivial). Brute: |Z^1|.
  std::uint64_t cocycles = 0;
  /// Brute: |B^1|.
  std::optional<std::uint64_t> coboundaries;
  /// Number of cohomology classes, including the trivial one, when known.
  std::optional<std::uint64_t> classes;
};

/// Decides B^1 = Z^1 for a connected complex.
H1Result h1_trivial(const SimplicialComplex& x, const CoefficientGroup& lambda, H1Mode mode,
                    const H1Options& opts = {});

/// Sums of weights over supports (faces with a non-identity value).
Rational norm0(const SimplicialComplex& x, const Cochain0& phi);
Rational norm1(const SimplicialComplex& x, const Cochain1& phi);
Rational norm2(const SimplicialComplex& x, const Cochain2& phi);
/// Weight of the edges on which a and b disagree.
Rational distance1(const SimplicialComplex& x, const Cochain1& a, const Cochain1& b);

/// min over phi outside B^0 of ||d0 phi|| / dist(phi, B^0) by enumeration of
/// C^0. ResourceError above cap cochains; ParameterError for trivial Lambda.
Rational expansion_h0(const SimplicialComplex& x, const CoefficientGroup& lambda,
                      std::uint64_t cap = 1ull << 24);

struct H1Expansion {
  std::optional<Rational> cobound;  // none when B^1 = C^1
  std::optional<Rational> cosys;    // none when Z^1 = C^1
  std::optional<Rational> systole;  // min norm over Z^1 \ B^1; none when H^1 is trivial
  std::uint64_t cochains = 0;
  std::uint64_t orbits = 0;
};

/// Exact constants by enumerating C^1 and its orbits under C^0.
H1Expansion expansion_h1_exact(const SimplicialComplex& x, const CoefficientGroup& lambda,
                               std::uint64_t cap = 1ull << 24);

struct H1Search {
  std::optional<Rational> upper_bound;  // least ratio seen; an upper bound on h^1_cobound
  Cochain1 best;
  std::uint64_t proposals = 0;
};

/// Random sparse proposals refined by single-edge local search. Each
/// proposal's distance to B^1 is exact (branch and bound over C^0).
H1Search expansion_h1_search(const SimplicialComplex& x, const CoefficientGroup& lambda,
                             std::uint64_t proposals, std::uint64_t seed,
                             std::uint64_t node_cap = 1ull << 26);

/// Exact min over psi of the weight of edges where phi and d0 psi disagree.
Rational distance_to_coboundaries(const SimplicialComplex& x, const CoefficientGroup& lambda,
                                  const Cochain1& phi, std::uint64_t node_cap = 1ull << 26);

/// (1 - lambda) beta / 24 - e lambda.
double dd_bound(double lambda, double beta);

} // namespace hdx
