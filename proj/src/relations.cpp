#include "hdx/relations.hpp"

#include "hdx/matgroup.hpp"

#include <algorithm>

namespace hdx {

namespace {

Word single(Root root, const TruncPoly& r) { return {Letter{{root, r}, 1}}; }

void check_root(Root r) {
  if (r.i < 1 || r.j < 1 || r.i == r.j) throw ParameterError("invalid root " + r.to_string());
}

std::vector<GeneratorSymbol> symbols_over(const std::vector<Root>& roots, std::uint32_t p, std::uint32_t d) {
  std::vector<GeneratorSymbol> out;
  auto params = symbol_parameters(p, d);
  for (Root r : roots)
    for (const auto& x : params) out.push_back({r, x});
  return out;
}

Presentation assemble(std::string name, int n, std::uint32_t p, std::uint32_t d,
                      std::vector<GeneratorSymbol> gens, const std::vector<RootPair>& pairs) {
  Presentation pres{std::move(name), n, p, d, std::move(gens), {}};
  for (const auto& [a, b] : pairs) {
    auto rels = pair_relations(a, b, p, d);
    pres.relations.insert(pres.relations.end(), std::make_move_iterator(rels.begin()),
                          std::make_move_iterator(rels.end()));
  }
  return pres;
}

std::vector<Root> positive_roots(int n) { return chamber_roots(identity_permutation(n)); }

} // namespace

std::string GeneratorSymbol::to_string() const {
  return "x" + std::to_string(root.i) + "," + std::to_string(root.j) + "(" + r.to_string() + ")";
}

Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l.exponent = -l.exponent;
  return out;
}

Word free_reduce(Word w) {
  Word out;
  for (auto& l : w) {
    if (!out.empty() && out.back().symbol == l.symbol && out.back().exponent == -l.exponent)
      out.pop_back();
    else
      out.push_back(std::move(l));
  }
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return free_reduce(std::move(w));
}

Word commutator_word(const Word& x, const Word& y) {
  return concat(concat(x, y), concat(inverse_word(x), inverse_word(y)));
}

std::string word_to_string(const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += ' ';
    out += l.symbol.to_string();
    if (l.exponent < 0) out += "^-1";
  }
  return out;
}

std::string to_string(RelationKind k) {
  switch (k) {
    case RelationKind::zero: return "zero";
    case RelationKind::additive: return "additive";
    case RelationKind::commuting: return "commuting";
    case RelationKind::steinberg_product: return "steinberg-product";
    case RelationKind::steinberg_equality: return "steinberg-equality";
    case RelationKind::double_commutator: return "double-commutator";
  }
  return "?";
}

std::vector<TruncPoly> symbol_parameters(std::uint32_t p, std::uint32_t d) {
  return enumerate_polys(p, 2 * d + 1, static_cast<int>(d));
}

RootPair canonical_pair(Root a, Root b) {
  check_root(a);
  check_root(b);
  if (a == b.opposite()) throw ParameterError("opposite roots " + a.to_string() + ", " + b.to_string());
  if (a != b && b.j == a.i) std::swap(a, b);  // composable as (i,j),(j,k)
  else if (a != b && a.j != b.i && b < a) std::swap(a, b);
  return {a, b};
}

std::vector<RelationInstance> pair_relations(Root a0, Root b0, std::uint32_t p, std::uint32_t d) {
  auto [a, b] = canonical_pair(a0, b0);
  const RootPair src{a, b};
  const auto params = symbol_parameters(p, d);
  const std::uint32_t s = 2 * d + 1;
  std::vector<RelationInstance> out;
  if (a == b) {
    out.push_back({RelationKind::zero, single(a, TruncPoly(p, s)), {}, src});
    for (const auto& r1 : params)
      for (const auto& r2 : params)
        out.push_back({RelationKind::additive, concat(single(a, r1), single(a, r2)), single(a, r1 + r2), src});
    return out;
  }
  if (a.j != b.i) {
    for (const auto& r1 : params)
      for (const auto& r2 : params)
        out.push_back({RelationKind::commuting, commutator_word(single(a, r1), single(b, r2)), {}, src});
    return out;
  }
  // composable: a = (i,j), b = (j,k)
  const Root ik{a.i, b.j};
  std::map<TruncPoly, std::vector<std::pair<std::size_t, std::size_t>>> by_product;
  for (std::size_t u = 0; u < params.size(); ++u)
    for (std::size_t v = 0; v < params.size(); ++v) {
      TruncPoly prod = params[u] * params[v];
      if (poly_deg(prod) <= static_cast<int>(d))
        out.push_back({RelationKind::steinberg_product,
                       commutator_word(single(a, params[u]), single(b, params[v])), single(ik, prod), src});
      by_product[prod].emplace_back(u, v);
    }
  for (const auto& [prod, group] : by_product)
    for (std::size_t x = 0; x < group.size(); ++x)
      for (std::size_t y = x + 1; y < group.size(); ++y) {
        auto [u, v] = group[x];
        auto [u2, v2] = group[y];
        out.push_back({RelationKind::steinberg_equality,
                       commutator_word(single(a, params[u]), single(b, params[v])),
                       commutator_word(single(a, params[u2]), single(b, params[v2])), src});
      }
  return out;
}

std::set<RootPair> Presentation::relation_pairs() const {
  std::set<RootPair> out;
  for (const auto& r : relations) out.insert(r.source);
  return out;
}

Presentation presentation_SL(int n, std::uint32_t p, std::uint32_t d) {
  if (n < 3) throw ParameterError("the SL presentation needs n >= 3");
  return assemble("sl", n, p, d, symbols_over(all_roots(n), p, d), non_opposite_pairs(n));
}

Presentation presentation_unipotent(int dim, std::uint32_t p, std::uint32_t d) {
  if (dim < 4) throw ParameterError("the unipotent presentation needs matrix dimension >= 4");
  const auto params = symbol_parameters(p, d);
  const std::uint32_t s = 2 * d + 1;
  std::vector<Root> simple;
  for (int i = 1; i <= dim - 1; ++i) simple.push_back({i, i + 1});
  Presentation pres{"unip", dim, p, d, symbols_over(simple, p, d), {}};
  auto& rel = pres.relations;
  for (Root a : simple) {
    rel.push_back({RelationKind::zero, single(a, TruncPoly(p, s)), {}, {a, a}});
    for (const auto& r1 : params)
      for (const auto& r2 : params)
        rel.push_back({RelationKind::additive, concat(single(a, r1), single(a, r2)), single(a, r1 + r2), {a, a}});
  }
  for (Root a : simple)
    for (Root b : simple)
      if (a.i + 1 < b.i)
        for (const auto& r1 : params)
          for (const auto& r2 : params)
            rel.push_back({RelationKind::commuting, commutator_word(single(a, r1), single(b, r2)), {}, {a, b}});
  for (int i = 1; i + 1 <= dim - 1; ++i) {
    Root a{i, i + 1}, b{i + 1, i + 2};
    for (const auto& r1 : params)
      for (const auto& r2 : params) {
        Word c = commutator_word(single(a, r1), single(b, r2));
        for (const auto& r3 : params) {
          rel.push_back({RelationKind::double_commutator, commutator_word(c, single(a, r3)), {}, {a, b}});
          rel.push_back({RelationKind::double_commutator, commutator_word(c, single(b, r3)), {}, {a, b}});
        }
      }
    for (auto& r : pair_relations(a, b, p, d))
      if (r.kind == RelationKind::steinberg_equality) rel.push_back(std::move(r));
  }
  return pres;
}

std::vector<RootPair> chamber_pairs(int n) {
  auto pos = positive_roots(n);
  std::vector<RootPair> out;
  for (std::size_t x = 0; x < pos.size(); ++x)
    for (std::size_t y = x; y < pos.size(); ++y) out.push_back(canonical_pair(pos[x], pos[y]));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RootPair> pre_chamber_pairs(int n) {
  auto pos = positive_roots(n);
  auto bd = chamber_boundary(identity_permutation(n));
  auto in_boundary = [&](Root r) { return std::find(bd.begin(), bd.end(), r) != bd.end(); };
  std::vector<RootPair> out;
  for (std::size_t x = 0; x < pos.size(); ++x)
    for (std::size_t y = x; y < pos.size(); ++y) {
      Root a = pos[x], b = pos[y];
      if (a.i == b.i || a.j == b.j || (in_boundary(a) && in_boundary(b)))
        out.push_back(canonical_pair(a, b));
    }
  std::sort(out.begin(), out.end());
  return out;
}

ChamberRelationSets chamber_relation_sets(int n, std::uint32_t p, std::uint32_t d) {
  if (n < 2) throw ParameterError("chamber relation sets need n >= 2");
  auto gens = symbols_over(positive_roots(n), p, d);
  return {assemble("prechamber", n, p, d, gens, pre_chamber_pairs(n)),
          assemble("chamber", n, p, d, gens, chamber_pairs(n))};
}

Presentation tilde_gamma_presentation(int n, std::uint32_t p, std::uint32_t d) {
  if (n < 3) throw ParameterError("the tilde presentation needs n >= 3");
  ChamberSet c0 = initial_chambers(n);
  std::vector<RootPair> pairs;
  for (const auto& [a, b] : non_opposite_pairs(n))
    if (c0.pair_covered(a, b)) pairs.emplace_back(a, b);
  return assemble("tilde", n, p, d, symbols_over(all_roots(n), p, d), pairs);
}

std::optional<MatElement> elementary_image(int n, std::uint32_t s, const GeneratorSymbol& g) {
  if (g.root.i < 1 || g.root.j < 1 || g.root.i > n + 1 || g.root.j > n + 1 || g.root.i == g.root.j)
    return std::nullopt;
  return elementary(static_cast<std::uint32_t>(n), g.root.i, g.root.j, g.r.with_precision(s));
}

} // namespace hdx
