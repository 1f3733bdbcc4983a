#pragma once

// Small named complexes and groups used by tests, the acceptance battery and
// the command line presets.

#include "hdx/complex.hpp"

#include <string>
#include <vector>

namespace hdx {

/// Seven-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
SimplicialComplex torus7();
SimplicialComplex tetrahedron_boundary();
SimplicialComplex single_triangle();
SimplicialComplex single_edge();
SimplicialComplex complete_graph(std::uint32_t m);
SimplicialComplex cycle_graph(std::uint32_t m);
SimplicialComplex path_graph(std::uint32_t m);
/// Graph with the given edges on m vertices, uncolored.
SimplicialComplex graph(std::uint32_t m, const std::vector<std::pair<Vertex, Vertex>>& edges);

/// Connected pure complexes of dimension 1 and 2 on 3..max_vertices vertices
/// with at most max_edges edges, one per isomorphism class.
std::vector<SimplicialComplex> small_complexes(std::uint32_t max_vertices, std::size_t max_edges);

/// A group, subgroups K_0..K_n and normal subgroups for quotient checks.
struct CosetInstance {
  std::string name;
  FiniteGroup group;
  std::vector<FiniteGroup> subgroups;
  std::vector<FiniteGroup> normals;
};

/// S_3 with K_0 = <(1 2)>, K_1 = <(2 3)>; a 6-cycle.
CosetInstance s3_hexagon();
/// Coxeter complex of S_4 (a triangulated 2-sphere with 24 triangles).
CosetInstance s4_coxeter();
/// Coxeter complex of the signed permutation group B_3 (48 triangles); its
/// normal subgroup is the center {1, -1}.
CosetInstance b3_coxeter();
/// Every small instance: S_3, S_4 and SL_2(F_3) with assorted subgroups.
std::vector<CosetInstance> coset_zoo();

/// The group SL_{n+1}(F_p[t]/t^s) and its subgroups K_0..K_n.
struct KoInstance {
  std::uint32_t n, p, s, d;
  FiniteGroup group;
  std::vector<FiniteGroup> subgroups;
};

KoInstance ko_instance(std::uint32_t n, std::uint32_t p, std::uint32_t s, std::uint32_t d,
                       std::uint64_t cap);
std::vector<FiniteGroup> ko_subgroups(std::uint32_t n, std::uint32_t p, std::uint32_t s, std::uint32_t d,
                                      std::uint64_t cap);
/// CC(K_i, {K_i n K_j : j != i}), the link of the vertex K_i.
CosetComplex vertex_link(const std::vector<FiniteGroup>& subgroups, std::size_t i);

} // namespace hdx
