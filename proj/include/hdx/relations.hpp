#pragma once

// Root-pair relation families over symbols x_{i,j}(r), assembled
// presentations, and evaluation of relation words in concrete groups.

#include "hdx/error.hpp"
#include "hdx/group.hpp"
#include "hdx/parallel.hpp"
#include "hdx/polyring.hpp"
#include "hdx/rootsys.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace hdx {

/// x_{i,j}(r). The polynomial lives in F_p[t]/t^(2d+1) so that products of
/// two degree-d parameters are exact.
struct GeneratorSymbol {
  Root root;
  TruncPoly r;

  std::string to_string() const;
  friend bool operator==(const GeneratorSymbol&, const GeneratorSymbol&) = default;
  friend auto operator<=>(const GeneratorSymbol& a, const GeneratorSymbol& b) {
    if (auto c = a.root <=> b.root; c != 0) return c;
    return a.r <=> b.r;
  }
};

struct Letter {
  GeneratorSymbol symbol;
  int exponent = 1;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

Word inverse_word(const Word& w);
/// Concatenation followed by free cancellation.
Word concat(const Word& a, const Word& b);
Word free_reduce(Word w);
/// x y x^-1 y^-1
Word commutator_word(const Word& x, const Word& y);
std::string word_to_string(const Word& w);

enum class RelationKind { zero, additive, commuting, steinberg_product, steinberg_equality, double_commutator };

std::string to_string(RelationKind k);

struct RelationInstance {
  RelationKind kind;
  Word lhs;
  Word rhs;
  RootPair source;
};

/// Parameters r with deg r <= d, stored with precision 2d+1.
std::vector<TruncPoly> symbol_parameters(std::uint32_t p, std::uint32_t d);

/// The pair is ordered canonically: a composable pair as ((i,j), (j,k)),
/// any other pair with the smaller root first.
RootPair canonical_pair(Root a, Root b);

/// Relations indexed by two non-opposite roots. Equality relations are listed
/// once per unordered pair of distinct parameter pairs with equal products.
std::vector<RelationInstance> pair_relations(Root a, Root b, std::uint32_t p, std::uint32_t d);

struct Presentation {
  std::string name;
  int n = 0;  // rank for root presentations, matrix dimension for unip
  std::uint32_t p = 0;
  std::uint32_t d = 0;
  std::vector<GeneratorSymbol> generators;
  std::vector<RelationInstance> relations;

  /// Distinct source pairs, sorted.
  std::set<RootPair> relation_pairs() const;
};

/// All roots; relations for all non-opposite pairs. Needs n >= 3.
Presentation presentation_SL(int n, std::uint32_t p, std::uint32_t d);
/// Unitriangular presentation on x_{i,i+1}, dim >= 4 matrices.
Presentation presentation_unipotent(int dim, std::uint32_t p, std::uint32_t d);

/// Pairs inside the positive chamber sharing a first or second index, plus
/// all pairs of boundary roots.
std::vector<RootPair> pre_chamber_pairs(int n);
/// All pairs inside the positive chamber, including equal pairs.
std::vector<RootPair> chamber_pairs(int n);

struct ChamberRelationSets {
  Presentation pre_chamber;
  Presentation chamber;
};
ChamberRelationSets chamber_relation_sets(int n, std::uint32_t p, std::uint32_t d);

/// All roots; relations only for pairs covered by the initial chambers.
Presentation tilde_gamma_presentation(int n, std::uint32_t p, std::uint32_t d);

struct VerificationReport {
  std::size_t checked = 0;
  std::vector<std::size_t> violated;  // relation indices
  bool ok() const noexcept { return violated.empty(); }
};

/// Dense matrices of one shape.
struct MatrixOps {
  using element = MatElement;
  std::uint32_t dim, p, s;
  element identity() const { return MatElement::identity(dim, p, s); }
  element mul(const element& a, const element& b) const { return a * b; }
  element inv(const element& a) const { return a.inverse(); }
};

/// Codes of an enumerated group.
struct GroupOps {
  using element = Code;
  const GroupLaw* law;
  element identity() const { return law->identity(); }
  element mul(element a, element b) const { return law->multiply(a, b); }
  element inv(element a) const { return law->inverse(a); }
};

/// x_{i,j}(r) -> e_{i,j}(r mod t^s) in SL_{n+1}.
std::optional<MatElement> elementary_image(int n, std::uint32_t s, const GeneratorSymbol& g);

/// Evaluates every relation; assign returns std::nullopt for symbols it does
/// not cover, which raises InputError.
template <class Ops, class Assign>
VerificationReport verify_relations(const std::vector<RelationInstance>& relations, Assign&& assign,
                                    const Ops& ops, unsigned workers = 1) {
  using E = typename Ops::element;
  std::map<GeneratorSymbol, std::pair<E, E>> images;
  for (const auto& rel : relations)
    for (const Word* w : {&rel.lhs, &rel.rhs})
      for (const auto& l : *w) {
        if (images.count(l.symbol)) continue;
        std::optional<E> x = assign(l.symbol);
        if (!x) throw InputError("no image assigned to " + l.symbol.to_string());
        images.emplace(l.symbol, std::make_pair(*x, ops.inv(*x)));
      }
  auto eval = [&](const Word& w) {
    E acc = ops.identity();
    for (const auto& l : w) {
      const auto& im = images.at(l.symbol);
      acc = ops.mul(acc, l.exponent > 0 ? im.first : im.second);
    }
    return acc;
  };
  std::vector<char> bad(relations.size(), 0);
  parallel_for(relations.size(), workers, [&](std::size_t k) {
    bad[k] = !(eval(relations[k].lhs) == eval(relations[k].rhs));
  });
  VerificationReport rep;
  rep.checked = relations.size();
  for (std::size_t k = 0; k < bad.size(); ++k)
    if (bad[k]) rep.violated.push_back(k);
  return rep;
}

template <class Ops, class Assign>
VerificationReport verify_relations(const Presentation& pres, Assign&& assign, const Ops& ops,
                                    unsigned workers = 1) {
  return verify_relations(pres.relations, std::forward<Assign>(assign), ops, workers);
}

} // namespace hdx
