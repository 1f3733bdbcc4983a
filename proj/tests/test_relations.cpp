#include "doctest.h"

#include "hdx/matgroup.hpp"
#include "hdx/relations.hpp"

#include <algorithm>
#include <set>

using namespace hdx;

namespace {

std::size_t count_kind(const std::vector<RelationInstance>& rels, RelationKind k) {
  return std::count_if(rels.begin(), rels.end(), [&](const auto& r) { return r.kind == k; });
}

auto matrix_assign(int n, std::uint32_t s) {
  return [n, s](const GeneratorSymbol& g) { return elementary_image(n, s, g); };
}

bool same_relations(const std::vector<RelationInstance>& a, const std::vector<RelationInstance>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k].kind != b[k].kind || a[k].lhs != b[k].lhs || a[k].rhs != b[k].rhs || a[k].source != b[k].source)
      return false;
  return true;
}

} // namespace

TEST_CASE("words") {
  GeneratorSymbol x{{1, 2}, TruncPoly(2, 3, {1})}, y{{2, 3}, TruncPoly(2, 3, {0, 1})};
  Word wx{{x, 1}}, wy{{y, 1}};
  CHECK(commutator_word(wx, wy).size() == 4);
  CHECK(concat(wx, inverse_word(wx)).empty());
  CHECK(commutator_word(wx, wx).empty());
  CHECK(word_to_string({}) == "e");
}

TEST_CASE("pair relation families") {
  auto eq = pair_relations({1, 2}, {1, 2}, 2, 1);
  CHECK(count_kind(eq, RelationKind::zero) == 1);
  CHECK(count_kind(eq, RelationKind::additive) == 16);
  CHECK(eq.size() == 17);

  auto disj = pair_relations({1, 2}, {3, 4}, 2, 1);
  CHECK(disj.size() == 16);
  CHECK(count_kind(disj, RelationKind::commuting) == 16);

  auto comp = pair_relations({1, 2}, {2, 3}, 2, 1);
  auto params = symbol_parameters(2, 1);
  std::size_t want = 0;
  for (const auto& a : params)
    for (const auto& b : params) want += poly_deg(a * b) <= 1;
  CHECK(count_kind(comp, RelationKind::steinberg_product) == want);
  CHECK(want == 12);
  for (const auto& r : comp)
    for (const auto& l : r.lhs) CHECK(poly_deg(l.symbol.r) <= 1);

  CHECK_THROWS_AS(pair_relations({1, 2}, {2, 1}, 2, 1), ParameterError);
}

TEST_CASE("pair relations are symmetric") {
  for (Root a : all_roots(3))
    for (Root b : all_roots(3)) {
      if (a == b.opposite()) continue;
      REQUIRE(same_relations(pair_relations(a, b, 2, 1), pair_relations(b, a, 2, 1)));
    }
}

TEST_CASE("steinberg relations hold in matrices") {
  // every composable pair, exhaustive parameters at p=2, d=1
  std::vector<RelationInstance> rels;
  for (Root a : all_roots(3))
    for (Root b : all_roots(3))
      if (a.j == b.i && a.i != b.j)
        for (auto& r : pair_relations(a, b, 2, 1)) rels.push_back(r);
  CHECK(count_kind(rels, RelationKind::steinberg_equality) > 0);
  auto rep = verify_relations(rels, matrix_assign(3, 4), MatrixOps{4, 2, 4});
  CHECK(rep.checked == rels.size());
  CHECK(rep.ok());
}

TEST_CASE("SL presentation") {
  auto pres = presentation_SL(3, 2, 1);
  CHECK(pres.generators.size() == 48);
  auto pairs = pres.relation_pairs();
  CHECK(pairs.size() == 72);
  for (const auto& [a, b] : pairs) CHECK(a != b.opposite());
  std::set<RootPair> want;
  for (const auto& [a, b] : non_opposite_pairs(3)) want.insert(canonical_pair(a, b));
  CHECK(pairs == want);
  // relation list is the concatenation of the pair families
  std::size_t total = 0;
  for (const auto& [a, b] : non_opposite_pairs(3)) total += pair_relations(a, b, 2, 1).size();
  CHECK(pres.relations.size() == total);
  CHECK_THROWS_AS(presentation_SL(2, 2, 1), ParameterError);
}

TEST_CASE("SL presentation holds in SL_4(F_3[t]/t^4)") {
  auto pres = presentation_SL(3, 3, 1);
  auto rep = verify_relations(pres, matrix_assign(3, 4), MatrixOps{4, 3, 4});
  CHECK(rep.checked == pres.relations.size());
  CHECK(rep.ok());
}

TEST_CASE("corrupted assignment is detected") {
  auto pres = presentation_SL(3, 2, 1);
  auto swapped = [](const GeneratorSymbol& g) {
    GeneratorSymbol h = g;
    if (g.root == Root{1, 2}) h.root = {1, 3};
    else if (g.root == Root{1, 3}) h.root = {1, 2};
    return elementary_image(3, 4, h);
  };
  auto rep = verify_relations(pres, swapped, MatrixOps{4, 2, 4});
  CHECK_FALSE(rep.ok());
  auto partial = [](const GeneratorSymbol& g) -> std::optional<MatElement> {
    if (g.root == Root{4, 1}) return std::nullopt;
    return elementary_image(3, 4, g);
  };
  CHECK_THROWS_AS(verify_relations(pres, partial, MatrixOps{4, 2, 4}), InputError);
  std::vector<RelationInstance> none;
  CHECK(verify_relations(none, partial, MatrixOps{4, 2, 4}).ok());
}

TEST_CASE("unipotent presentation") {
  auto pres = presentation_unipotent(5, 3, 1);
  CHECK(pres.generators.size() == 4 * 9);
  for (const auto& g : pres.generators) CHECK(g.root.j == g.root.i + 1);
  for (const auto& r : pres.relations)
    if (r.kind == RelationKind::commuting) CHECK(r.source.first.i + 1 < r.source.second.i);
  // the double commutator [[x12(r1), x23(r2)], x12(r3)] is present
  const auto params = symbol_parameters(3, 1);
  Word c = commutator_word({{{{1, 2}, params[1]}, 1}}, {{{{2, 3}, params[2]}, 1}});
  Word dc = commutator_word(c, {{{{1, 2}, params[4]}, 1}});
  CHECK(std::any_of(pres.relations.begin(), pres.relations.end(), [&](const auto& r) {
    return r.kind == RelationKind::double_commutator && r.lhs == dc;
  }));
  auto rep = verify_relations(pres, matrix_assign(4, 5), MatrixOps{5, 3, 5});
  CHECK(rep.ok());
  CHECK_THROWS_AS(presentation_unipotent(3, 3, 1), ParameterError);
}

TEST_CASE("unipotent relations hold in the enumerated K_0") {
  auto k0 = subgroup_K(3, 2, 4, 1, 0);
  auto law = matrix_law(4, 2, 4);
  auto pres = presentation_unipotent(4, 2, 1);
  auto assign = [&](const GeneratorSymbol& g) -> std::optional<Code> {
    auto m = elementary_image(3, 4, g);
    if (!m) return std::nullopt;
    Code c = law->encode(*m);
    if (!k0.contains(c)) return std::nullopt;
    return c;
  };
  CHECK(verify_relations(pres, assign, GroupOps{law.get()}).ok());
}

TEST_CASE("chamber and pre-chamber relation sets") {
  for (int n = 2; n <= 5; ++n) {
    auto pre = pre_chamber_pairs(n);
    auto full = chamber_pairs(n);
    CHECK(std::includes(full.begin(), full.end(), pre.begin(), pre.end()));
    if (n == 2) CHECK(pre == full);
    else CHECK(pre.size() < full.size());
    // structural description
    auto pos = chamber_roots(identity_permutation(n));
    auto bd = chamber_boundary(identity_permutation(n));
    std::set<RootPair> want;
    for (Root a : pos)
      for (Root b : pos)
        if (a.i == b.i || a.j == b.j) want.insert(canonical_pair(a, b));
    for (Root a : bd)
      for (Root b : bd) want.insert(canonical_pair(a, b));
    CHECK(std::set<RootPair>(pre.begin(), pre.end()) == want);
  }
  auto full3 = chamber_pairs(3);
  auto pre3 = pre_chamber_pairs(3);
  RootPair missing = canonical_pair({1, 3}, {2, 4});
  CHECK(std::binary_search(full3.begin(), full3.end(), missing));
  CHECK_FALSE(std::binary_search(pre3.begin(), pre3.end(), missing));

  auto sets = chamber_relation_sets(3, 2, 1);
  CHECK(sets.pre_chamber.relations.size() < sets.chamber.relations.size());
  auto pp = sets.pre_chamber.relation_pairs();
  for (Root a : chamber_boundary(identity_permutation(3)))
    for (Root b : chamber_boundary(identity_permutation(3))) CHECK(pp.count(canonical_pair(a, b)));
}

TEST_CASE("tilde presentation") {
  auto tilde = tilde_gamma_presentation(3, 3, 1);
  auto sl = presentation_SL(3, 3, 1);
  auto tp = tilde.relation_pairs(), sp = sl.relation_pairs();
  CHECK(std::includes(sp.begin(), sp.end(), tp.begin(), tp.end()));
  CHECK(tp.size() < sp.size());
  CHECK_FALSE(tp.count(canonical_pair({3, 1}, {1, 4})));
  CHECK(verify_relations(tilde, matrix_assign(3, 4), MatrixOps{4, 3, 4}).ok());
  // every relation uses roots of a single rotated chamber
  std::vector<std::vector<Root>> chambers;
  for (int i = 0; i <= 3; ++i) chambers.push_back(chamber_roots(power(gamma0(3), i)));
  for (const auto& r : tilde.relations) {
    bool inside = false;
    for (const auto& c : chambers) {
      bool all = true;
      for (const Word* w : {&r.lhs, &r.rhs})
        for (const auto& l : *w) all = all && std::binary_search(c.begin(), c.end(), l.symbol.root);
      inside = inside || all;
    }
    REQUIRE(inside);
  }
}
