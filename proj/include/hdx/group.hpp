#pragma once

// Finite groups whose elements are 64-bit codes, together with the usual
// constructions: closures, cosets, normal closures and quotients.

#include "hdx/matrix.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hdx {

using Code = std::uint64_t;
using ElemIndex = std::uint32_t;

/// Multiplication oracle on codes.
class GroupLaw {
public:
  virtual ~GroupLaw() = default;
  virtual Code multiply(Code a, Code b) const = 0;
  virtual Code inverse(Code a) const = 0;
  virtual Code identity() const = 0;
  /// Two laws with the same signature multiply identical codes identically.
  virtual std::string signature() const = 0;
  virtual std::string format(Code c) const;
};

class MatrixLaw final : public GroupLaw {
public:
  MatrixLaw(std::uint32_t dim, std::uint32_t p, std::uint32_t s) : codec_(dim, p, s) {}

  Code multiply(Code a, Code b) const override;
  Code inverse(Code a) const override;
  Code identity() const override;
  std::string signature() const override;

  const MatCodec& codec() const noexcept { return codec_; }
  Code encode(const MatElement& m) const { return codec_.encode(m); }
  MatElement decode(Code c) const { return codec_.decode(c); }

private:
  MatCodec codec_;
};

/// Permutations of {0..k-1}, k <= 16, image of x stored in bits [4x, 4x+4).
/// multiply(a, b) is the composition a after b.
class PermutationLaw final : public GroupLaw {
public:
  explicit PermutationLaw(std::uint32_t degree);

  Code multiply(Code a, Code b) const override;
  Code inverse(Code a) const override;
  Code identity() const override;
  std::string signature() const override;
  std::string format(Code c) const override;

  std::uint32_t degree() const noexcept { return degree_; }
  /// images are 1-based: images[x-1] is the image of x.
  Code encode(std::span<const int> images) const;
  std::vector<int> decode(Code c) const;
  /// Product of cycles written with 1-based points, applied right to left.
  Code from_cycles(const std::vector<std::vector<int>>& cycles) const;

private:
  std::uint32_t degree_;
};

/// Group given by its Cayley table on {0..m-1}.
class TableLaw final : public GroupLaw {
public:
  explicit TableLaw(std::vector<std::vector<std::uint32_t>> table);

  Code multiply(Code a, Code b) const override;
  Code inverse(Code a) const override;
  Code identity() const override { return identity_; }
  std::string signature() const override;

  std::uint32_t order() const noexcept { return order_; }

private:
  std::uint32_t order_ = 0;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
  std::uint32_t identity_ = 0;
  std::uint64_t digest_ = 0;
};

/// Open-addressing map from codes to element indices. Keys are not stored;
/// the caller passes the element array used to resolve slots.
class CodeIndex {
public:
  static constexpr std::uint32_t kEmpty = 0xFFFFFFFFu;

  void reserve(std::size_t n, std::span<const Code> keys);
  std::optional<ElemIndex> find(Code c, std::span<const Code> keys) const;
  /// Inserts idx under keys[idx] unless an equal key exists; returns the index stored.
  ElemIndex insert(ElemIndex idx, std::span<const Code> keys);
  /// Slot currently holding c, or npos.
  std::size_t slot_of(Code c, std::span<const Code> keys) const;
  void set_slot(std::size_t slot, ElemIndex idx) { slots_[slot] = idx; }
  std::size_t size() const noexcept { return size_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
  void rehash(std::size_t capacity, std::span<const Code> keys);
  std::vector<std::uint32_t> slots_;
  std::size_t size_ = 0;
  std::size_t mask_ = 0;
};

class FiniteGroup {
public:
  /// elements must be distinct and contain the identity; generators must be
  /// elements. Closure is not checked here (see verify_axioms).
  FiniteGroup(std::shared_ptr<const GroupLaw> law, std::vector<Code> elements,
              std::vector<Code> generators);

  const GroupLaw& law() const noexcept { return *law_; }
  const std::shared_ptr<const GroupLaw>& law_ptr() const noexcept { return law_; }

  std::size_t size() const noexcept { return elements_.size(); }
  Code code(ElemIndex i) const { return elements_[i]; }
  std::span<const Code> codes() const noexcept { return elements_; }

  std::optional<ElemIndex> find(Code c) const { return index_.find(c, elements_); }
  bool contains(Code c) const { return find(c).has_value(); }
  /// Throws StructuralError when c is not an element.
  ElemIndex index_of(Code c) const;

  ElemIndex identity() const noexcept { return identity_; }
  std::span<const ElemIndex> generators() const noexcept { return generators_; }
  std::vector<Code> generator_codes() const;

  ElemIndex mul(ElemIndex a, ElemIndex b) const {
    return index_of(law_->multiply(elements_[a], elements_[b]));
  }
  ElemIndex inv(ElemIndex a) const { return index_of(law_->inverse(elements_[a])); }

private:
  friend FiniteGroup bfs_closure(std::shared_ptr<const GroupLaw>, std::span<const Code>,
                                 std::uint64_t);
  FiniteGroup() = default;

  std::shared_ptr<const GroupLaw> law_;
  std::vector<Code> elements_;
  CodeIndex index_;
  ElemIndex identity_ = 0;
  std::vector<ElemIndex> generators_;
};

/// Subgroup generated by gens. Elements are numbered by BFS layer (right
/// multiplication by generators), each layer sorted by code. Throws
/// ResourceError once more than cap elements would be needed.
FiniteGroup bfs_closure(std::shared_ptr<const GroupLaw> law, std::span<const Code> gens,
                        std::uint64_t cap);

/// Table group; generators chosen greedily in element order.
FiniteGroup group_from_table(std::vector<std::vector<std::uint32_t>> table);
/// Cayley table of a small group in its own index order.
std::vector<std::vector<std::uint32_t>> cayley_table(const FiniteGroup& g);
FiniteGroup cyclic_group(std::uint32_t m);
FiniteGroup symmetric_group(std::uint32_t k);
/// Subgroup of g generated by gens (codes of g's law).
FiniteGroup subgroup(const FiniteGroup& g, std::span<const Code> gens);

/// A generating set picked greedily: each element not yet in the span of the
/// previous picks is added.
std::vector<Code> greedy_generators(const GroupLaw& law, std::span<const Code> elements);

bool same_law(const FiniteGroup& a, const FiniteGroup& b);
bool is_subgroup_of(const FiniteGroup& h, const FiniteGroup& g);
FiniteGroup intersection(const FiniteGroup& a, const FiniteGroup& b);

/// Left cosets gK.
struct CosetPartition {
  std::vector<ElemIndex> coset_of;         // element index of G -> coset id
  std::vector<ElemIndex> representatives;  // coset id -> least element index of G
  std::size_t subgroup_order = 0;

  std::size_t count() const noexcept { return representatives.size(); }
};

CosetPartition cosets(const FiniteGroup& g, const FiniteGroup& k);

/// Smallest normal subgroup of g containing s.
FiniteGroup normal_closure(const FiniteGroup& g, std::span<const Code> s);
bool is_normal(const FiniteGroup& g, const FiniteGroup& n);

/// Multiplies cosets through representatives of the parent group.
class QuotientLaw final : public GroupLaw {
public:
  QuotientLaw(std::shared_ptr<const FiniteGroup> parent, CosetPartition partition);

  Code multiply(Code a, Code b) const override;
  Code inverse(Code a) const override;
  Code identity() const override;
  std::string signature() const override;

  const FiniteGroup& parent() const noexcept { return *parent_; }
  const CosetPartition& partition() const noexcept { return partition_; }

private:
  std::shared_ptr<const FiniteGroup> parent_;
  CosetPartition partition_;
};

struct QuotientGroup {
  FiniteGroup group;                  // codes are coset ids
  std::vector<ElemIndex> projection;  // element index of G -> element index of G/N
};

/// Throws StructuralError unless n is a normal subgroup of g.
QuotientGroup quotient(const FiniteGroup& g, const FiniteGroup& n);

std::uint64_t element_order(const FiniteGroup& g, ElemIndex x);

struct AxiomReport {
  bool ok = true;
  bool exhaustive = false;
  std::string failure;
};

/// Closure, identity, inverses and associativity: exhaustive up to
/// exhaustive_limit elements (associativity on sampled triples), sampled above.
AxiomReport verify_axioms(const FiniteGroup& g, std::size_t exhaustive_limit = 10000,
                          std::size_t samples = 20000, std::uint64_t seed = 1);

} // namespace hdx
