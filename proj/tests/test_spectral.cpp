#include "doctest.h"

#include "hdx/error.hpp"
#include "hdx/fixtures.hpp"
#include "hdx/spectral.hpp"

#include <cmath>
#include <numbers>

using namespace hdx;

namespace {

SimplicialComplex bowtie() { return SimplicialComplex(2, 5, {}, {{0, 1, 2}, {0, 3, 4}}); }

} // namespace

TEST_CASE("walk matrices of fixtures") {
  WalkMatrix tri(single_triangle());
  auto p = tri.transition();
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v) CHECK(p(u, v) == doctest::Approx(u == v ? 0.0 : 0.5));
  for (std::uint32_t m = 3; m <= 8; ++m) {
    WalkMatrix k(complete_graph(m));
    auto pk = k.transition();
    for (std::uint32_t u = 0; u < m; ++u)
      for (std::uint32_t v = 0; v < m; ++v) CHECK(pk(u, v) == doctest::Approx(u == v ? 0.0 : 1.0 / (m - 1)));
    CHECK(std::abs(second_eigenvalue(k).value + 1.0 / (m - 1)) < 1e-9);
  }
  WalkMatrix c6(cycle_graph(6));
  auto pc = c6.transition();
  CHECK(pc(0, 1) == doctest::Approx(0.5));
  CHECK(pc(0, 5) == doctest::Approx(0.5));
  CHECK(pc(0, 3) == 0.0);
  CHECK(std::abs(second_eigenvalue(c6).value - 0.5) < 1e-9);
  auto hex = coset_complex(s3_hexagon().group, s3_hexagon().subgroups).complex;
  CHECK(std::abs(second_eigenvalue(WalkMatrix(hex)).value - 0.5) < 1e-9);
  CHECK(std::abs(second_eigenvalue(tri).value + 0.5) < 1e-9);
  CHECK_THROWS_AS(WalkMatrix(graph(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}})), StructuralError);
}

TEST_CASE("walk invariants") {
  std::vector<SimplicialComplex> xs{torus7(), tetrahedron_boundary(), cycle_graph(9),
                                    coset_complex(s4_coxeter().group, s4_coxeter().subgroups).complex,
                                    coset_complex(b3_coxeter().group, b3_coxeter().subgroups).complex};
  for (const auto& x : xs) {
    WalkMatrix w(x);
    auto p = w.transition();
    for (Eigen::Index u = 0; u < p.rows(); ++u) CHECK(std::abs(p.row(u).sum() - 1.0) < 1e-12);
    // Stationary measure: degrees over their total equal the vertex weights.
    std::uint64_t total = 0;
    for (Vertex v = 0; v < w.size(); ++v) total += w.degree(v);
    auto wt = weights(x);
    for (Vertex v = 0; v < w.size(); ++v) {
      CHECK(Rational(static_cast<std::int64_t>(w.degree(v)), static_cast<std::int64_t>(total)) == wt.of(0, v));
      for (Vertex u = 0; u < w.size(); ++u)
        CHECK(std::abs(double(w.degree(v)) * p(v, u) - double(w.degree(u)) * p(u, v)) < 1e-9);
    }
    for (double ev : walk_spectrum(w)) {
      CHECK(ev >= -1.0 - 1e-9);
      CHECK(ev <= 1.0 + 1e-9);
    }
    CHECK(std::abs(walk_spectrum(w).back() - 1.0) < 1e-9);
  }
}

TEST_CASE("dense and iterative solvers agree") {
  std::vector<SimplicialComplex> xs{cycle_graph(20), cycle_graph(101), complete_graph(30), torus7(),
                                    coset_complex(s4_coxeter().group, s4_coxeter().subgroups).complex};
  auto ko = ko_instance(2, 3, 1, 0, 1u << 14);
  xs.push_back(coset_complex(ko.group, ko.subgroups).complex);
  xs.push_back(vertex_link(ko_subgroups(2, 2, 3, 1, 1u << 12), 0).complex);
  for (const auto& x : xs) {
    WalkMatrix w(x);
    auto dense = second_eigenvalue(w, EigenMethod::dense);
    auto iter = second_eigenvalue(w, EigenMethod::iterative);
    CHECK(iter.method == EigenMethod::iterative);
    CHECK(std::abs(dense.value - iter.value) < 1e-6);
  }
  CHECK(std::abs(second_eigenvalue(WalkMatrix(cycle_graph(101)), EigenMethod::iterative).value -
                 std::cos(2 * std::numbers::pi / 101)) < 1e-6);
}

TEST_CASE("local spectral reports") {
  auto tri = local_spectral_report(single_triangle(), 1.0);
  REQUIRE(tri.links.size() == 4);
  CHECK(tri.links[0].face.empty());
  CHECK(std::abs(*tri.links[0].second + 0.5) < 1e-9);
  for (std::size_t i = 1; i < 4; ++i) CHECK(std::abs(*tri.links[i].second + 1.0) < 1e-9);
  CHECK(tri.pass);
  auto strict = local_spectral_report(single_triangle(), -0.75);
  CHECK_FALSE(strict.pass);
  auto bow = local_spectral_report(bowtie(), 1.0);
  CHECK_FALSE(bow.pass);
  bool found = false;
  for (const auto& l : bow.links)
    if (l.face == std::vector<Vertex>{0}) {
      found = true;
      CHECK(l.components == 2);
      CHECK_FALSE(l.second.has_value());
    }
  CHECK(found);
}

TEST_CASE("KO link report matches links scanned in the complex") {
  auto ko = ko_instance(2, 3, 1, 0, 1u << 14);
  auto cc = coset_complex(ko.group, ko.subgroups);
  auto report = ko_link_report(2, 3, 1, 0, 1.0);
  REQUIRE(report.links.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    Vertex v = cc.offsets[i] + cc.partitions[i].coset_of[ko.group.identity()];
    auto l = link(cc.complex, {v});
    CHECK(std::abs(second_eigenvalue(WalkMatrix(l.complex)).value - *report.links[i].second) < 1e-9);
  }
  double dense_max = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    auto spec = walk_spectrum(WalkMatrix(vertex_link(ko.subgroups, i).complex));
    dense_max = std::max(dense_max, spec[spec.size() - 2]);
  }
  CHECK(std::abs(*report.max_second - dense_max) < 1e-12);
  CHECK(report.pass);
}
