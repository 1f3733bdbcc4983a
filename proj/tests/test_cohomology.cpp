#include "doctest.h"

#include "cohomology_oracles.hpp"
#include "hdx/cohomology.hpp"
#include "hdx/error.hpp"
#include "hdx/fixtures.hpp"

#include <random>
#include <set>
#include <sstream>

using namespace hdx;

namespace {

Cochain1 random_cochain(std::mt19937_64& rng, std::size_t n, std::uint32_t m) {
  Cochain1 c(n);
  for (auto& v : c) v = static_cast<LambdaElem>(rng() % m);
  return c;
}

bool all_identity(const std::vector<LambdaElem>& v) {
  return std::all_of(v.begin(), v.end(), [](LambdaElem a) { return a == 0; });
}

template <class Fn>
void for_each_cochain(std::size_t len, std::uint32_t m, Fn&& fn) {
  std::vector<LambdaElem> d(len, 0);
  for (;;) {
    fn(d);
    std::size_t k = 0;
    while (k < len && ++d[k] == m) d[k++] = 0;
    if (k == len) break;
  }
}

// h^1 constants straight from the definitions: distances are minima over
// explicit lists of coboundaries and cocycles.
struct DirectH1 {
  std::optional<Rational> cobound, cosys;
};

DirectH1 direct_h1(const SimplicialComplex& x, const CoefficientGroup& L) {
  auto sk = oracle::skeleton(x);
  const std::size_t E = sk.edges.size();
  std::map<std::pair<Vertex, Vertex>, std::size_t> idx;
  for (std::size_t i = 0; i < E; ++i) idx[sk.edges[i]] = i;
  std::vector<std::int64_t> we(E, 0), wt(sk.triangles.size(), 0);
  for (std::size_t f = 0; f < x.max_face_count(); ++f) {
    auto s = x.max_face(f);
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = a + 1; b < s.size(); ++b) ++we[idx[{s[a], s[b]}]];
  }
  std::fill(wt.begin(), wt.end(), 1);
  const std::int64_t den1 = 3 * static_cast<std::int64_t>(x.max_face_count()), den2 = static_cast<std::int64_t>(x.max_face_count());
  auto value = [&](const std::vector<LambdaElem>& c, Vertex u, Vertex v) {
    return u < v ? c[idx[{u, v}]] : L.inv(c[idx[{v, u}]]);
  };
  auto dnorm = [&](const std::vector<LambdaElem>& c) {
    std::int64_t s = 0;
    for (std::size_t t = 0; t < sk.triangles.size(); ++t) {
      auto a = sk.triangles[t][0], b = sk.triangles[t][1], cc = sk.triangles[t][2];
      if (L.mul(L.mul(value(c, a, b), value(c, b, cc)), value(c, cc, a)) != 0) s += wt[t];
    }
    return s;
  };
  std::set<std::vector<LambdaElem>> b1, z1;
  for_each_cochain(x.vertex_count(), L.order(), [&](const std::vector<LambdaElem>& psi) {
    std::vector<LambdaElem> c(E);
    for (std::size_t e = 0; e < E; ++e) c[e] = L.mul(psi[sk.edges[e].first], L.inv(psi[sk.edges[e].second]));
    b1.insert(c);
  });
  for_each_cochain(E, L.order(), [&](const std::vector<LambdaElem>& c) {
    if (dnorm(c) == 0) z1.insert(c);
  });
  auto dist = [&](const std::vector<LambdaElem>& c, const std::set<std::vector<LambdaElem>>& to) {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (const auto& b : to) {
      std::int64_t s = 0;
      for (std::size_t e = 0; e < E; ++e)
        if (c[e] != b[e]) s += we[e];
      best = std::min(best, s);
    }
    return best;
  };
  DirectH1 out;
  for_each_cochain(E, L.order(), [&](const std::vector<LambdaElem>& c) {
    std::int64_t dn = dnorm(c);
    if (!b1.count(c)) {
      Rational r(dn * den1, den2 * dist(c, b1));
      if (!out.cobound || r < *out.cobound) out.cobound = r;
    }
    if (!z1.count(c)) {
      Rational r(dn * den1, den2 * dist(c, z1));
      if (!out.cosys || r < *out.cosys) out.cosys = r;
    }
  });
  return out;
}

SimplicialComplex two_triangles() { return graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}); }

SimplicialComplex petersen() {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(i + 5, (i + 2) % 5 + 5);
  }
  return graph(10, e);
}

SimplicialComplex grid(std::uint32_t r, std::uint32_t c) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 0; i < r; ++i)
    for (Vertex j = 0; j < c; ++j) {
      if (j + 1 < c) e.emplace_back(i * c + j, i * c + j + 1);
      if (i + 1 < r) e.emplace_back(i * c + j, (i + 1) * c + j);
    }
  return graph(r * c, e);
}

} // namespace

TEST_CASE("coefficient groups") {
  auto z3 = CoefficientGroup::zmod(3);
  CHECK(z3.order() == 3);
  CHECK(z3.is_abelian());
  CHECK(z3.element_order(1) == 3);
  CHECK_FALSE(z3.has_element_of_order(2));
  auto s3 = CoefficientGroup::symmetric(3);
  CHECK(s3.order() == 6);
  CHECK_FALSE(s3.is_abelian());
  CHECK(s3.has_element_of_order(2));
  CHECK(s3.has_element_of_order(3));
  for (LambdaElem a = 0; a < 6; ++a) {
    CHECK(s3.mul(a, s3.inv(a)) == 0);
    CHECK(s3.mul(0, a) == a);
  }
  CHECK(CoefficientGroup::parse("zmod:4").order() == 4);
  CHECK(CoefficientGroup::parse("sym:3").order() == 6);
  CHECK_THROWS_AS(CoefficientGroup::parse("zmod"), ParameterError);
  CHECK_THROWS_AS(CoefficientGroup::parse("zmod:x"), ParameterError);
  CHECK_THROWS_AS(CoefficientGroup::parse("free:2"), ParameterError);
  CHECK_THROWS_AS(CoefficientGroup::parse("table:/nonexistent/file"), InputError);
  std::stringstream klein("4\n1 0 3 2\n0 1 2 3\n3 2 1 0\n2 3 0 1\n");
  auto v4 = CoefficientGroup::read_table(klein, "V4");
  CHECK(v4.order() == 4);
  CHECK(v4.is_abelian());
  CHECK_FALSE(v4.has_element_of_order(4));
  // A Latin square with identity and inverses that is not associative.
  std::stringstream loop("5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n");
  CHECK_THROWS_AS(CoefficientGroup::read_table(loop, "loop"), InputError);
  std::stringstream short_table("3\n0 1 2\n1 2\n");
  CHECK_THROWS_AS(CoefficientGroup::read_table(short_table, "bad"), InputError);
}

TEST_CASE("d0 and d1 formulas") {
  auto s3 = CoefficientGroup::symmetric(3);
  auto edge = single_edge();
  for (LambdaElem a = 0; a < 6; ++a)
    for (LambdaElem b = 0; b < 6; ++b) {
      auto c = d0(edge, s3, {a, b});
      CHECK(c == Cochain1{s3.mul(a, s3.inv(b))});
      CHECK(oriented_value(edge, s3, c, 1, 0) == s3.mul(b, s3.inv(a)));
    }
  auto tri = single_triangle();
  CHECK(all_identity(d0(tri, s3, {4, 4, 4})));
  CHECK(all_identity(d1(tri, s3, {0, 0, 0})));
  CHECK_THROWS_AS(d0(tri, s3, {0, 1}), InputError);
  CHECK_THROWS_AS(d1(tri, s3, {0, 9, 0}), InputError);
}

TEST_CASE("d1 after d0 is the identity") {
  for (const auto& L : {CoefficientGroup::zmod(2), CoefficientGroup::zmod(3), CoefficientGroup::symmetric(3)})
    for (const auto& x : {single_triangle(), tetrahedron_boundary()})
      for_each_cochain(x.vertex_count(), L.order(), [&](const std::vector<LambdaElem>& psi) {
        CHECK(all_identity(d1(x, L, d0(x, L, psi))));
      });
  std::mt19937_64 rng(7);
  auto s4 = CoefficientGroup::symmetric(4);
  auto t = torus7();
  for (int trial = 0; trial < 200; ++trial) {
    Cochain0 psi(7);
    for (auto& v : psi) v = static_cast<LambdaElem>(rng() % 24);
    CHECK(all_identity(d1(t, s4, d0(t, s4, psi))));
  }
}

TEST_CASE("orientation and antisymmetry") {
  auto s3 = CoefficientGroup::symmetric(3);
  auto tri = single_triangle();
  LambdaElem a = 1, b = 3;
  auto phi = cochain_from_oriented(tri, s3, {{1, 0, a}, {1, 2, b}, {0, 2, 0}});
  CHECK(oriented_value(tri, s3, phi, 0, 1) == s3.inv(a));
  CHECK(oriented_value(tri, s3, phi, 1, 0) == a);
  CHECK_THROWS_AS(cochain_from_oriented(tri, s3, {{0, 1, a}, {1, 0, a}, {1, 2, 0}, {0, 2, 0}}), InputError);
  CHECK_NOTHROW(cochain_from_oriented(tri, s3, {{0, 1, a}, {1, 0, s3.inv(a)}, {1, 2, 0}, {0, 2, 0}}));
  CHECK_THROWS_AS(cochain_from_oriented(tri, s3, {{0, 1, a}}), InputError);
  CHECK_THROWS_AS(cochain_from_oriented(tri, s3, {{0, 5, a}}), InputError);
  // Triviality of d1 does not depend on the vertex order of the triangle.
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    auto c = random_cochain(rng, 3, 6);
    bool trivial = d1_ordered(tri, s3, c, 0, 1, 2) == 0;
    std::vector<Vertex> p{0, 1, 2};
    do {
      CHECK((d1_ordered(tri, s3, c, p[0], p[1], p[2]) == 0) == trivial);
    } while (std::next_permutation(p.begin(), p.end()));
    CHECK((d1(tri, s3, c)[0] == 0) == trivial);
  }
}

TEST_CASE("gauge action") {
  auto s3 = CoefficientGroup::symmetric(3);
  auto x = tetrahedron_boundary();
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Cochain0 psi1(4), psi2(4), base(4);
    for (auto* c : {&psi1, &psi2, &base})
      for (auto& v : *c) v = static_cast<LambdaElem>(rng() % 6);
    auto phi = d0(x, s3, base);
    auto once = gauge_act(x, s3, psi2, gauge_act(x, s3, psi1, phi));
    Cochain0 prod(4);
    for (int v = 0; v < 4; ++v) prod[v] = s3.mul(psi2[v], psi1[v]);
    CHECK(once == gauge_act(x, s3, prod, phi));
    CHECK(is_cocycle(x, s3, once));
    LambdaElem g = psi1[0];
    auto conj = gauge_act(x, s3, Cochain0(4, g), phi);
    for (std::size_t e = 0; e < phi.size(); ++e) CHECK(conj[e] == s3.mul(s3.mul(g, phi[e]), s3.inv(g)));
  }
  CHECK_THROWS_AS(gauge_act(single_triangle(), s3, {0, 0, 0}, {1, 0, 0}), InputError);
}

TEST_CASE("tree gauge fixing") {
  auto s3 = CoefficientGroup::symmetric(3);
  auto x = tetrahedron_boundary();
  auto tree = bfs_tree(x);
  CHECK(tree.order == std::vector<Vertex>{0, 1, 2, 3});
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    Cochain0 psi(4);
    for (auto& v : psi) v = static_cast<LambdaElem>(rng() % 6);
    auto fixed = tree_gauge_fix(x, s3, d0(x, s3, psi));
    CHECK(all_identity(fixed));
  }
  Cochain1 id(6, 0);
  CHECK(tree_gauge_fix(x, s3, id) == id);
  CHECK_THROWS_AS(bfs_tree(two_triangles()), InputError);

  auto t = torus7();
  auto z2 = CoefficientGroup::zmod(2);
  auto z = oracle::nontrivial_cocycle_mod_p(t, 2);
  REQUIRE(z.has_value());
  Cochain1 phi(z->begin(), z->end());
  CHECK(all_identity(d1(t, z2, phi)));
  auto fixed = tree_gauge_fix(t, z2, phi);
  auto ttree = bfs_tree(t);
  for (std::size_t e = 0; e < fixed.size(); ++e)
    if (ttree.in_tree[e]) CHECK(fixed[e] == 0);
  CHECK_FALSE(all_identity(fixed));
  CHECK(is_cocycle(t, z2, fixed));
}

TEST_CASE("H1 of the sphere and the torus") {
  auto sphere = tetrahedron_boundary();
  for (const auto& L : {CoefficientGroup::zmod(2), CoefficientGroup::zmod(3), CoefficientGroup::symmetric(3)})
    for (auto mode : {H1Mode::gauge, H1Mode::brute}) {
      auto r = h1_trivial(sphere, L, mode);
      CHECK(r.trivial);
      CHECK_FALSE(r.witness.has_value());
    }
  auto t = torus7();
  auto z2 = CoefficientGroup::zmod(2);
  auto brute = h1_trivial(t, z2, H1Mode::brute);
  CHECK_FALSE(brute.trivial);
  REQUIRE(brute.classes.has_value());
  CHECK(*brute.classes == 4);
  CHECK(brute.cocycles == 256);
  CHECK(*brute.coboundaries == 64);
  CHECK(oracle::h1_order_mod_p(t, 2) == 4);
  H1Options all;
  all.count_all = true;
  auto gauge = h1_trivial(t, z2, H1Mode::gauge, all);
  CHECK_FALSE(gauge.trivial);
  CHECK(gauge.cocycles == 4);
  CHECK(*gauge.classes == 4);
  REQUIRE(gauge.witness.has_value());
  CHECK(is_cocycle(t, z2, *gauge.witness));
  auto z3 = CoefficientGroup::zmod(3);
  CHECK(*h1_trivial(t, z3, H1Mode::gauge, all).classes == oracle::h1_order_mod_p(t, 3));
  auto s3 = CoefficientGroup::symmetric(3);
  // Hom(Z^2, S_3) up to conjugation: commuting pairs of S_3 modulo conjugacy.
  auto gs3 = h1_trivial(t, s3, H1Mode::gauge, all);
  CHECK(gs3.cocycles == 18);
  CHECK(*gs3.classes == 8);
  CHECK_THROWS_AS(h1_trivial(two_triangles(), z2, H1Mode::gauge), InputError);
  CHECK_THROWS_AS(h1_trivial(two_triangles(), z2, H1Mode::brute), InputError);
  H1Options tiny;
  tiny.cap = 1000;
  CHECK_THROWS_AS(h1_trivial(t, z2, H1Mode::brute, tiny), ResourceError);
}

TEST_CASE("gauge and brute modes agree on small complexes") {
  auto zoo = small_complexes(5, 8);
  CHECK(zoo.size() > 20);
  std::size_t nontrivial = 0;
  for (const auto& x : zoo)
    for (std::uint32_t m : {1u, 2u, 3u}) {
      auto L = CoefficientGroup::zmod(m);
      H1Options all;
      all.count_all = true;
      auto g = h1_trivial(x, L, H1Mode::gauge, all);
      auto b = h1_trivial(x, L, H1Mode::brute);
      CHECK(g.trivial == b.trivial);
      CHECK(g.classes == b.classes);
      if (m > 1) CHECK(*b.classes == oracle::h1_order_mod_p(x, m));
      nontrivial += !b.trivial;
    }
  CHECK(nontrivial > 0);
  auto s3 = CoefficientGroup::symmetric(3);
  for (const auto& x : small_complexes(4, 6)) {
    H1Options all;
    all.count_all = true;
    auto g = h1_trivial(x, s3, H1Mode::gauge, all);
    auto b = h1_trivial(x, s3, H1Mode::brute);
    CHECK(g.trivial == b.trivial);
    CHECK(g.classes == b.classes);
  }
}

TEST_CASE("norms") {
  auto tri = single_triangle();
  CHECK(norm1(tri, {0, 0, 0}) == Rational(0));
  CHECK(norm1(tri, {0, 1, 0}) == Rational(1, 3));
  CHECK(norm0(tri, {1, 2, 1}) == Rational(1));
  CHECK(norm0(torus7(), {1, 1, 1, 1, 1, 1, 1}) == Rational(1));
  CHECK(norm2(tri, {1}) == Rational(1));
  CHECK(distance1(tri, {1, 2, 0}, {1, 0, 0}) == Rational(1, 3));
  CHECK(norm0(cycle_graph(4), {1, 0, 0, 0}) == Rational(1, 4));
}

TEST_CASE("h0 against the weighted Cheeger constant") {
  auto z2 = CoefficientGroup::zmod(2);
  CHECK(expansion_h0(single_triangle(), z2) == Rational(2));
  CHECK(expansion_h0(two_triangles(), z2) == Rational(0));
  std::vector<SimplicialComplex> graphs{cycle_graph(5),    cycle_graph(6),     cycle_graph(20), complete_graph(4),
                                        complete_graph(7), path_graph(8),      petersen(),      grid(4, 5),
                                        grid(3, 3),        torus7(),           tetrahedron_boundary(),
                                        coset_complex(s3_hexagon().group, s3_hexagon().subgroups).complex};
  std::mt19937_64 rng(13);
  while (graphs.size() < 16) {
    std::vector<std::pair<Vertex, Vertex>> e;
    std::uint32_t n = 6 + rng() % 8;
    for (Vertex a = 0; a + 1 < n; ++a) e.emplace_back(a, a + 1);
    for (int k = 0; k < 6; ++k) {
      Vertex a = rng() % n, b = rng() % n;
      if (a != b) e.emplace_back(std::min(a, b), std::max(a, b));
    }
    graphs.push_back(graph(n, e));
  }
  for (const auto& x : graphs) {
    CHECK(x.vertex_count() <= 20);
    CHECK(expansion_h0(x, z2) == oracle::weighted_cheeger(x));
  }
  // With three coefficients the constant is at least the two-valued one.
  auto z3 = CoefficientGroup::zmod(3);
  CHECK(expansion_h0(cycle_graph(6), z3) <= expansion_h0(cycle_graph(6), z2));
  CHECK_THROWS_AS(expansion_h0(cycle_graph(6), CoefficientGroup::zmod(1)), ParameterError);
  CHECK_THROWS_AS(expansion_h0(cycle_graph(30), z2, 1u << 20), ResourceError);
}

TEST_CASE("h1 constants") {
  auto z2 = CoefficientGroup::zmod(2);
  auto tri = expansion_h1_exact(single_triangle(), z2);
  CHECK(*tri.cobound == Rational(3));
  CHECK(*tri.cosys == Rational(3));
  CHECK_FALSE(tri.systole.has_value());
  auto direct = direct_h1(single_triangle(), z2);
  CHECK(*direct.cobound == Rational(3));
  for (const auto& L : {z2, CoefficientGroup::zmod(3), CoefficientGroup::symmetric(3)}) {
    auto ex = expansion_h1_exact(tetrahedron_boundary(), L);
    auto dr = direct_h1(tetrahedron_boundary(), L);
    CHECK(ex.cobound == dr.cobound);
    CHECK(ex.cosys == dr.cosys);
    CHECK(ex.cobound == ex.cosys);
    CHECK_FALSE(ex.systole.has_value());
  }
  auto torus = expansion_h1_exact(torus7(), z2);
  CHECK(*torus.cobound == Rational(0));
  REQUIRE(torus.systole.has_value());
  CHECK(*torus.systole > Rational(0));
  {
    // Least support of a cocycle outside B^1, by listing Z^1 and B^1.
    auto x = torus7();
    std::set<Cochain1> b1;
    for_each_cochain(7, 2, [&](const std::vector<LambdaElem>& psi) { b1.insert(d0(x, z2, psi)); });
    std::size_t least = 99;
    for_each_cochain(21, 2, [&](const std::vector<LambdaElem>& c) {
      std::size_t w = std::count(c.begin(), c.end(), 1u);
      if (w < least && is_cocycle(x, z2, c) && !b1.count(c)) least = w;
    });
    // Every torus edge lies in two of the 14 triangles.
    CHECK(*torus.systole == Rational(static_cast<std::int64_t>(least) * 2, 42));
  }
  CHECK(*torus.cosys > Rational(0));
  auto graph_only = expansion_h1_exact(cycle_graph(5), z2);
  CHECK(*graph_only.cobound == Rational(0));
  CHECK_FALSE(graph_only.cosys.has_value());
  CHECK_THROWS_AS(expansion_h1_exact(torus7(), CoefficientGroup::zmod(3), 1u << 20), ResourceError);
}

TEST_CASE("h1 search mode bounds the exact constant") {
  auto z2 = CoefficientGroup::zmod(2);
  auto s3 = CoefficientGroup::symmetric(3);
  for (const auto& L : {z2, s3}) {
    auto x = tetrahedron_boundary();
    auto exact = expansion_h1_exact(x, L);
    auto search = expansion_h1_search(x, L, 200, 1);
    REQUIRE(search.upper_bound.has_value());
    CHECK(*search.upper_bound >= *exact.cobound);
    CHECK(*search.upper_bound == norm2(x, d1(x, L, search.best)) / distance_to_coboundaries(x, L, search.best));
  }
  auto again = expansion_h1_search(torus7(), z2, 50, 3);
  CHECK(again.upper_bound == expansion_h1_search(torus7(), z2, 50, 3).upper_bound);
  // Exact distance to B^1 against a list of all coboundaries.
  auto x = torus7();
  std::set<Cochain1> b1;
  for_each_cochain(7, 2, [&](const std::vector<LambdaElem>& psi) { b1.insert(d0(x, z2, psi)); });
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    auto phi = random_cochain(rng, 21, 2);
    Rational best(1000);
    for (const auto& b : b1) best = std::min(best, distance1(x, phi, b));
    CHECK(distance_to_coboundaries(x, z2, phi) == best);
  }
}

TEST_CASE("dd bound arithmetic") {
  CHECK(dd_bound(0.0, 24.0) == doctest::Approx(1.0));
  CHECK(dd_bound(0.0, 1.0) == doctest::Approx(1.0 / 24.0));
  CHECK(dd_bound(0.1, 1.0) == doctest::Approx(0.9 / 24.0 - 0.1 * std::exp(1.0)));
  CHECK(dd_bound(0.1, 1.0) < 0.0);
  CHECK_THROWS_AS(dd_bound(1.0, 1.0), ParameterError);
  CHECK_THROWS_AS(dd_bound(0.5, 0.0), ParameterError);
}
