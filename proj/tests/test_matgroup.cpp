#include "doctest.h"

#include "hdx/error.hpp"
#include "hdx/matgroup.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

using namespace hdx;

namespace {

MatElement random_matrix(std::mt19937_64& rng, std::uint32_t dim, std::uint32_t p, std::uint32_t s) {
  MatElement m(dim, p, s);
  for (auto& c : m.raw()) c = static_cast<std::uint32_t>(rng() % p);
  return m;
}

std::set<Code> code_set(const FiniteGroup& g) { return {g.codes().begin(), g.codes().end()}; }

TruncPoly t_pow(std::uint32_t p, std::uint32_t s, std::uint32_t k) { return TruncPoly::monomial(p, s, k); }

} // namespace

TEST_CASE("elementary matrices") {
  CHECK(elementary(3, 1, 2, TruncPoly(2, 3)).is_identity());
  CHECK_THROWS_AS(elementary(3, 2, 2, TruncPoly(2, 3, {1})), ParameterError);
  auto a = elementary(2, 1, 2, t_pow(2, 4, 1)) * elementary(2, 1, 2, t_pow(2, 4, 2));
  CHECK(a == elementary(2, 1, 2, TruncPoly(2, 4, {0, 1, 1})));
  auto c = commutator(elementary(3, 1, 2, t_pow(3, 5, 1)), elementary(3, 2, 3, t_pow(3, 5, 2)));
  CHECK(c == elementary(3, 1, 3, t_pow(3, 5, 3)));
  CHECK(elementary(3, 2, 4, TruncPoly(5, 3, {1, 2})).det() == TruncPoly::constant(5, 3, 1));
}

TEST_CASE("determinant and inverse against cofactor expansion") {
  std::mt19937_64 rng(3);
  for (std::uint32_t dim : {1u, 2u, 3u, 4u}) {
    for (int k = 0; k < 40; ++k) {
      auto m = random_matrix(rng, dim, 5, 3);
      auto d = m.det();
      CHECK(d == oracle::cofactor_det(oracle::entries(m)));
      if (d.is_unit()) {
        CHECK((m * m.inverse()).is_identity());
        CHECK((m.inverse() * m).is_identity());
      } else {
        CHECK_THROWS_AS(m.inverse(), ParameterError);
      }
    }
  }
  MatElement diag = MatElement::identity(3, 2, 3);
  diag.set_entry(0, 0, TruncPoly(2, 3, {1, 1}));
  CHECK(diag.det() == TruncPoly(2, 3, {1, 1}));
}

TEST_CASE("codec round trip and multiplication") {
  std::mt19937_64 rng(5);
  for (auto [dim, p, s] : std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>{
           {3, 2, 3}, {3, 5, 3}, {2, 3, 4}, {4, 2, 4}, {3, 3, 2}}) {
    REQUIRE(MatCodec::fits(dim, p, s));
    MatCodec codec(dim, p, s);
    MatrixLaw law(dim, p, s);
    for (int k = 0; k < 200; ++k) {
      auto a = random_matrix(rng, dim, p, s), b = random_matrix(rng, dim, p, s);
      CHECK(codec.decode(codec.encode(a)) == a);
      CHECK(law.multiply(codec.encode(a), codec.encode(b)) == codec.encode(a * b));
    }
  }
  CHECK_FALSE(MatCodec::fits(4, 5, 4));
  CHECK_THROWS_AS(MatCodec(4, 5, 4), ParameterError);
}

TEST_CASE("closure of SL_2(F_3) matches exhaustive count") {
  auto g = special_linear(1, 3, 1, 1000);
  CHECK(g.size() == 24);
  auto brute = oracle::brute_special_linear(2, 3, 1);
  CHECK(brute.size() == 24);
  std::set<Code> want;
  for (const auto& m : brute) want.insert(matrix_law(2, 3, 1)->encode(m));
  CHECK(code_set(g) == want);
  CHECK(g.identity() == 0);
  CHECK(verify_axioms(g).ok);
}

TEST_CASE("closure of SL_2(F_2[t]/t^2) matches exhaustive count") {
  auto g = special_linear(1, 2, 2, 1000);
  auto brute = oracle::brute_special_linear(2, 2, 2);
  CHECK(brute.size() == 48);
  CHECK(g.size() == brute.size());
}

TEST_CASE("closure numbering is deterministic and capped") {
  auto a = special_linear(1, 3, 2, 10000);
  auto b = special_linear(1, 3, 2, 10000);
  CHECK(std::equal(a.codes().begin(), a.codes().end(), b.codes().begin(), b.codes().end()));
  CHECK(a.size() == 24 * 27);
  try {
    special_linear(1, 3, 2, 100);
    FAIL("expected cap failure");
  } catch (const ResourceError& e) {
    CHECK(e.partial() > 100);
  }
  auto trivial = bfs_closure(matrix_law(2, 3, 1), std::vector<Code>{}, 1);
  CHECK(trivial.size() == 1);
}

TEST_CASE("K_i subgroups") {
  const std::uint32_t n = 2, p = 2, s = 3, d = 1;
  auto k0 = subgroup_K(n, p, s, d, 0);
  auto k1 = subgroup_K(n, p, s, d, 1);
  auto k2 = subgroup_K(n, p, s, d, 2);
  CHECK(k0.size() == 128);
  CHECK(k1.size() == 128);
  CHECK(k2.size() == 128);
  // unitriangular matrices with deg r_12, r_23 <= 1 and deg r_13 <= 2
  std::set<Code> want;
  auto law = matrix_law(3, p, s);
  for (const auto& a : enumerate_polys(p, s, 1))
    for (const auto& b : enumerate_polys(p, s, 1))
      for (const auto& c : enumerate_polys(p, s, 2)) {
        MatElement m = MatElement::identity(3, p, s);
        m.set_entry(0, 1, a);
        m.set_entry(1, 2, b);
        m.set_entry(0, 2, c);
        want.insert(law->encode(m));
      }
  CHECK(code_set(k0) == want);
  // K_i is K_0 conjugated by the permutation matrix of gamma_0^i
  for (std::uint32_t i = 1; i <= n; ++i) {
    auto perm = gamma0_power(n, i);
    auto pm = MatElement::permutation(perm, p, s);
    auto pinv = pm.inverse();
    std::set<Code> conj;
    for (Code c : k0.codes()) conj.insert(law->encode(pm * law->decode(c) * pinv));
    CHECK(conj == code_set(i == 1 ? k1 : k2));
  }
  CHECK(k1.contains(law->identity()));
  for (Code g : k1.generator_codes()) CHECK(k1.contains(g));
  CHECK_THROWS_AS(subgroup_K(2, 2, 2, 1, 0), ParameterError);
  CHECK_THROWS_AS(subgroup_K(2, 2, 3, 1, 3), ParameterError);
}

TEST_CASE("cosets") {
  auto s3 = symmetric_group(3);
  auto law = std::dynamic_pointer_cast<const PermutationLaw>(s3.law_ptr());
  REQUIRE(law);
  std::vector<Code> t{law->from_cycles({{1, 2}})};
  auto h = subgroup(s3, t);
  auto part = cosets(s3, h);
  CHECK(part.count() == 3);
  for (ElemIndex c = 0; c < part.count(); ++c)
    CHECK(std::count(part.coset_of.begin(), part.coset_of.end(), c) == 2);
  CHECK(cosets(s3, s3).count() == 1);

  auto sl = special_linear(1, 3, 1, 100);
  MatElement neg(2, 3, 1);
  neg.set_entry(0, 0, TruncPoly::constant(3, 1, -1));
  neg.set_entry(1, 1, TruncPoly::constant(3, 1, -1));
  std::vector<Code> z{matrix_law(2, 3, 1)->encode(neg)};
  auto center = subgroup(sl, z);
  CHECK(center.size() == 2);
  CHECK(cosets(sl, center).count() == 12);
  CHECK_THROWS_AS(cosets(s3, sl), StructuralError);
  CHECK_THROWS_AS(cosets(center, sl), StructuralError);
}

TEST_CASE("normal closure") {
  auto s3 = symmetric_group(3);
  auto law = std::dynamic_pointer_cast<const PermutationLaw>(s3.law_ptr());
  std::vector<Code> e{law->identity()};
  CHECK(normal_closure(s3, e).size() == 1);
  std::vector<Code> c3{law->from_cycles({{1, 2, 3}})};
  auto a3 = normal_closure(s3, c3);
  CHECK(a3.size() == 3);
  CHECK(is_normal(s3, a3));
  std::vector<Code> t{law->from_cycles({{1, 2}})};
  CHECK(normal_closure(s3, t).size() == 6);
  CHECK_FALSE(is_normal(s3, subgroup(s3, t)));

  auto sl = special_linear(1, 3, 1, 100);
  MatElement neg(2, 3, 1);
  neg.set_entry(0, 0, TruncPoly::constant(3, 1, 2));
  neg.set_entry(1, 1, TruncPoly::constant(3, 1, 2));
  std::vector<Code> z{matrix_law(2, 3, 1)->encode(neg)};
  CHECK(normal_closure(sl, z).size() == 2);
}

TEST_CASE("quotients") {
  auto sl = special_linear(1, 3, 1, 100);
  MatElement neg(2, 3, 1);
  neg.set_entry(0, 0, TruncPoly::constant(3, 1, 2));
  neg.set_entry(1, 1, TruncPoly::constant(3, 1, 2));
  std::vector<Code> z{matrix_law(2, 3, 1)->encode(neg)};
  auto center = normal_closure(sl, z);
  auto q = quotient(sl, center);
  CHECK(q.group.size() == 12);
  CHECK(verify_axioms(q.group).ok);
  for (ElemIndex a = 0; a < sl.size(); ++a)
    for (ElemIndex b = 0; b < sl.size(); ++b)
      REQUIRE(q.projection[sl.mul(a, b)] == q.group.mul(q.projection[a], q.projection[b]));

  std::vector<Code> none;
  auto triv = bfs_closure(sl.law_ptr(), none, 1);
  CHECK(quotient(sl, triv).group.size() == 24);
  CHECK(quotient(sl, sl).group.size() == 1);

  auto s3 = symmetric_group(3);
  auto law = std::dynamic_pointer_cast<const PermutationLaw>(s3.law_ptr());
  std::vector<Code> t{law->from_cycles({{1, 2}})};
  CHECK_THROWS_AS(quotient(s3, subgroup(s3, t)), StructuralError);
}

TEST_CASE("reduction kernel") {
  auto k = reduction_kernel(1, 2, 2, 1, 1000);
  CHECK(k.size() == 8);
  CHECK(verify_axioms(k).ok);
  auto law = matrix_law(2, 2, 2);
  for (Code c : k.codes()) CHECK(law->decode(c).with_precision(1).is_identity());
  CHECK(k.contains(law->encode(elementary(1, 1, 2, t_pow(2, 2, 1)))));

  // Agrees with the truncation definition applied to the enumerated ambient group.
  for (auto [n, p, hi, lo] : std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, std::uint32_t>>{
           {1, 2, 3, 1}, {1, 3, 2, 1}, {1, 2, 3, 2}, {2, 2, 2, 1}, {1, 5, 2, 1}}) {
    CAPTURE(n);
    CAPTURE(p);
    CAPTURE(hi);
    CAPTURE(lo);
    auto ker = reduction_kernel(n, p, hi, lo, 1u << 20);
    auto amb = special_linear(n, p, hi, 1u << 22);
    auto lw = matrix_law(n + 1, p, hi);
    std::set<Code> want;
    for (Code c : amb.codes())
      if (lw->decode(c).with_precision(lo).is_identity()) want.insert(c);
    CHECK(code_set(ker) == want);
    CHECK(ker.size() == *reduction_kernel_order(n, p, hi, lo));
    // the stored generators generate the kernel
    CHECK(bfs_closure(lw, ker.generator_codes(), 1u << 22).size() == ker.size());
    CHECK(is_normal(amb, ker));
  }
  CHECK_THROWS_AS(reduction_kernel(1, 2, 2, 2, 100), ParameterError);
  CHECK_THROWS_AS(reduction_kernel(2, 3, 4, 1, 1000), ResourceError);
}

TEST_CASE("kernel element orders in characteristic p") {
  // (I + N)^p = I + N^p, so orders are p exactly when p * s_lo >= s_hi.
  for (auto [n, p, hi, lo] : std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, std::uint32_t>>{
           {1, 2, 2, 1}, {1, 3, 3, 1}, {1, 2, 4, 2}, {2, 3, 2, 1}, {1, 5, 4, 1}, {2, 2, 3, 2}}) {
    auto ker = reduction_kernel(n, p, hi, lo, 1u << 22);
    for (ElemIndex x = 0; x < ker.size(); ++x)
      if (x != ker.identity()) REQUIRE(element_order(ker, x) == p);
  }
  auto ker = reduction_kernel(1, 2, 3, 1, 1000);
  std::uint64_t max_order = 0;
  for (ElemIndex x = 0; x < ker.size(); ++x) max_order = std::max(max_order, element_order(ker, x));
  CHECK(max_order == 4);
}

TEST_CASE("element orders") {
  auto e = elementary(3, 1, 2, t_pow(5, 7, 3));
  CHECK(matrix_order(e) == 5);
  CHECK(matrix_order(MatElement::identity(4, 5, 7)) == 1);
  auto s3 = symmetric_group(3);
  auto law = std::dynamic_pointer_cast<const PermutationLaw>(s3.law_ptr());
  CHECK(element_order(s3, s3.index_of(law->from_cycles({{1, 2, 3}}))) == 3);
  CHECK(element_order(s3, s3.identity()) == 1);
}

TEST_CASE("commutator power identity on elementary pairs") {
  std::mt19937_64 rng(17);
  const std::uint32_t p = 3, s = 5, dim = 4;
  int checked = 0;
  while (checked < 200) {
    std::uint32_t i = rng() % dim + 1, j = rng() % dim + 1, k = rng() % dim + 1, l = rng() % dim + 1;
    if (i == j || k == l) continue;
    std::vector<std::int64_t> a(s), b(s);
    for (auto& c : a) c = rng() % p;
    for (auto& c : b) c = rng() % p;
    auto x = MatElement::elementary(dim, i, j, TruncPoly(p, s, a));
    auto y = MatElement::elementary(dim, k, l, TruncPoly(p, s, b));
    auto xy = commutator(x, y);
    if (!commutator(x, xy).is_identity()) continue;
    CHECK(xy.pow(p) == commutator(x.pow(p), y));
    ++checked;
  }
}

TEST_CASE("abstract groups and axioms") {
  auto z4 = cyclic_group(4);
  CHECK(z4.size() == 4);
  CHECK(verify_axioms(z4).ok);
  auto s4 = symmetric_group(4);
  CHECK(s4.size() == 24);
  CHECK(verify_axioms(s4).ok);
  auto t = group_from_table(cayley_table(s4));
  CHECK(t.size() == 24);
  CHECK(verify_axioms(t).ok);
  CHECK_THROWS_AS(group_from_table({{0, 1}, {1, 1}}), InputError);
  // a non-associative loop: Latin square with identity but broken associativity
  std::vector<std::vector<std::uint32_t>> loop = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  auto bad = group_from_table(loop);
  CHECK_FALSE(verify_axioms(bad).ok);
}

TEST_CASE("group dump") {
  auto k = reduction_kernel(1, 2, 2, 1, 100);
  std::ostringstream os;
  write_group_dump(os, k, 1, 2, 2);
  std::istringstream is(os.str());
  std::uint32_t n, p, s;
  std::size_t count;
  is >> n >> p >> s >> count;
  CHECK(n == 1);
  CHECK(count == 8);
  std::string line;
  std::size_t lines = 0;
  while (is >> line) ++lines;
  CHECK(lines == 8);
}
