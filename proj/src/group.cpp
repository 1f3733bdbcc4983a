#include "hdx/group.hpp"

#include "hdx/error.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_set>

namespace hdx {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string hex(Code c) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(c));
  return buf;
}

} // namespace

std::string GroupLaw::format(Code c) const { return hex(c); }

// --- MatrixLaw -------------------------------------------------------------

Code MatrixLaw::multiply(Code a, Code b) const {
  std::array<std::uint32_t, 64> x, y, z;
  codec_.decode(a, x);
  codec_.decode(b, y);
  codec_.multiply(x, y, z);
  return codec_.encode(z);
}

Code MatrixLaw::inverse(Code a) const { return codec_.encode(codec_.decode(a).inverse()); }

Code MatrixLaw::identity() const {
  return codec_.encode(MatElement::identity(codec_.dim(), codec_.p(), codec_.s()));
}

std::string MatrixLaw::signature() const {
  return "mat/" + std::to_string(codec_.dim()) + "/" + std::to_string(codec_.p()) + "/" +
         std::to_string(codec_.s());
}

// --- PermutationLaw --------------------------------------------------------

PermutationLaw::PermutationLaw(std::uint32_t degree) : degree_(degree) {
  if (degree == 0 || degree > 16) throw ParameterError("permutation degree must be in [1, 16]");
}

Code PermutationLaw::multiply(Code a, Code b) const {
  Code r = 0;
  for (std::uint32_t x = 0; x < degree_; ++x) {
    Code bx = (b >> (4 * x)) & 15;
    r |= ((a >> (4 * bx)) & 15) << (4 * x);
  }
  return r;
}

Code PermutationLaw::inverse(Code a) const {
  Code r = 0;
  for (std::uint32_t x = 0; x < degree_; ++x) r |= Code(x) << (4 * ((a >> (4 * x)) & 15));
  return r;
}

Code PermutationLaw::identity() const {
  Code r = 0;
  for (std::uint32_t x = 0; x < degree_; ++x) r |= Code(x) << (4 * x);
  return r;
}

std::string PermutationLaw::signature() const { return "perm/" + std::to_string(degree_); }

std::string PermutationLaw::format(Code c) const {
  auto img = decode(c);
  std::vector<bool> seen(degree_, false);
  std::string out;
  for (std::uint32_t x = 0; x < degree_; ++x) {
    if (seen[x] || img[x] == int(x) + 1) continue;
    out += '(';
    for (std::uint32_t y = x; !seen[y]; y = img[y] - 1) {
      if (y != x) out += ' ';
      out += std::to_string(y + 1);
      seen[y] = true;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Code PermutationLaw::encode(std::span<const int> images) const {
  if (images.size() != degree_) throw ParameterError("permutation has wrong degree");
  std::vector<bool> seen(degree_, false);
  Code r = 0;
  for (std::uint32_t x = 0; x < degree_; ++x) {
    int y = images[x];
    if (y < 1 || y > int(degree_) || seen[y - 1]) throw ParameterError("not a permutation");
    seen[y - 1] = true;
    r |= Code(y - 1) << (4 * x);
  }
  return r;
}

std::vector<int> PermutationLaw::decode(Code c) const {
  std::vector<int> img(degree_);
  for (std::uint32_t x = 0; x < degree_; ++x) img[x] = int((c >> (4 * x)) & 15) + 1;
  return img;
}

Code PermutationLaw::from_cycles(const std::vector<std::vector<int>>& cycles) const {
  Code r = identity();
  for (const auto& cyc : cycles) {
    std::vector<int> img(degree_);
    std::iota(img.begin(), img.end(), 1);
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      int a = cyc[k], b = cyc[(k + 1) % cyc.size()];
      if (a < 1 || a > int(degree_) || b < 1 || b > int(degree_))
        throw ParameterError("cycle point out of range");
      img[a - 1] = b;
    }
    r = multiply(r, encode(img));
  }
  return r;
}

// --- TableLaw --------------------------------------------------------------

TableLaw::TableLaw(std::vector<std::vector<std::uint32_t>> table) {
  const std::size_t m = table.size();
  if (m == 0) throw InputError("empty group table");
  order_ = static_cast<std::uint32_t>(m);
  table_.reserve(m * m);
  for (const auto& row : table) {
    if (row.size() != m) throw InputError("group table is not square");
    std::vector<bool> seen(m, false);
    for (auto v : row) {
      if (v >= m) throw InputError("group table entry out of range");
      if (seen[v]) throw InputError("group table row is not a permutation");
      seen[v] = true;
      table_.push_back(v);
    }
  }
  bool found = false;
  for (std::uint32_t e = 0; e < m && !found; ++e) {
    bool ok = true;
    for (std::uint32_t x = 0; x < m && ok; ++x) ok = table_[e * m + x] == x && table_[x * m + e] == x;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw InputError("group table has no two-sided identity");
  inverse_.assign(m, 0);
  for (std::uint32_t x = 0; x < m; ++x) {
    bool ok = false;
    for (std::uint32_t y = 0; y < m && !ok; ++y)
      if (table_[x * m + y] == identity_ && table_[y * m + x] == identity_) {
        inverse_[x] = y;
        ok = true;
      }
    if (!ok) throw InputError("group table element without two-sided inverse");
  }
  digest_ = m;
  for (auto v : table_) digest_ = mix(digest_ ^ v);
}

Code TableLaw::multiply(Code a, Code b) const {
  if (a >= order_ || b >= order_) throw InputError("table group code out of range");
  return table_[a * order_ + b];
}

Code TableLaw::inverse(Code a) const {
  if (a >= order_) throw InputError("table group code out of range");
  return inverse_[a];
}

std::string TableLaw::signature() const {
  return "table/" + std::to_string(order_) + "/" + hex(digest_);
}

// --- CodeIndex -------------------------------------------------------------

void CodeIndex::rehash(std::size_t capacity, std::span<const Code> keys) {
  std::vector<std::uint32_t> old = std::move(slots_);
  slots_.assign(capacity, kEmpty);
  mask_ = capacity - 1;
  for (auto idx : old) {
    if (idx == kEmpty) continue;
    std::size_t h = mix(keys[idx]) & mask_;
    while (slots_[h] != kEmpty) h = (h + 1) & mask_;
    slots_[h] = idx;
  }
}

void CodeIndex::reserve(std::size_t n, std::span<const Code> keys) {
  std::size_t want = std::bit_ceil(std::max<std::size_t>(16, 2 * n));
  if (want > slots_.size()) rehash(want, keys);
}

std::size_t CodeIndex::slot_of(Code c, std::span<const Code> keys) const {
  if (slots_.empty()) return npos;
  std::size_t h = mix(c) & mask_;
  while (slots_[h] != kEmpty) {
    if (keys[slots_[h]] == c) return h;
    h = (h + 1) & mask_;
  }
  return npos;
}

std::optional<ElemIndex> CodeIndex::find(Code c, std::span<const Code> keys) const {
  std::size_t h = slot_of(c, keys);
  if (h == npos) return std::nullopt;
  return slots_[h];
}

ElemIndex CodeIndex::insert(ElemIndex idx, std::span<const Code> keys) {
  if (2 * (size_ + 1) > slots_.size()) reserve(std::max<std::size_t>(size_ + 1, slots_.size()), keys);
  const Code c = keys[idx];
  std::size_t h = mix(c) & mask_;
  while (slots_[h] != kEmpty) {
    if (keys[slots_[h]] == c) return slots_[h];
    h = (h + 1) & mask_;
  }
  slots_[h] = idx;
  ++size_;
  return idx;
}

// --- FiniteGroup -----------------------------------------------------------

FiniteGroup::FiniteGroup(std::shared_ptr<const GroupLaw> law, std::vector<Code> elements,
                         std::vector<Code> generators)
    : law_(std::move(law)), elements_(std::move(elements)) {
  if (!law_) throw ParameterError("missing group law");
  if (elements_.size() >= CodeIndex::kEmpty) throw ParameterError("group too large to index");
  index_.reserve(elements_.size(), elements_);
  for (ElemIndex i = 0; i < elements_.size(); ++i)
    if (index_.insert(i, elements_) != i) throw StructuralError("duplicate group element " + law_->format(elements_[i]));
  auto id = find(law_->identity());
  if (!id) throw StructuralError("element set does not contain the identity");
  identity_ = *id;
  if (generators.empty() && elements_.size() > 1) generators = greedy_generators(*law_, elements_);
  for (Code g : generators) {
    ElemIndex gi = index_of(g);
    if (gi != identity_ && std::find(generators_.begin(), generators_.end(), gi) == generators_.end())
      generators_.push_back(gi);
  }
}

ElemIndex FiniteGroup::index_of(Code c) const {
  auto i = find(c);
  if (!i) throw StructuralError("element " + law_->format(c) + " is not in the group");
  return *i;
}

std::vector<Code> FiniteGroup::generator_codes() const {
  std::vector<Code> out;
  for (auto g : generators_) out.push_back(elements_[g]);
  return out;
}

FiniteGroup bfs_closure(std::shared_ptr<const GroupLaw> law, std::span<const Code> gens,
                        std::uint64_t cap) {
  if (!law) throw ParameterError("missing group law");
  if (cap == 0) throw ParameterError("closure cap must be positive");
  FiniteGroup g;
  g.law_ = law;
  const Code id = law->identity();
  std::vector<Code> uniq;
  for (Code c : gens)
    if (c != id && std::find(uniq.begin(), uniq.end(), c) == uniq.end()) uniq.push_back(c);

  auto& el = g.elements_;
  el.push_back(id);
  g.index_.insert(0, el);
  std::size_t begin = 0, end = 1;
  std::vector<std::size_t> slots;
  std::vector<std::uint32_t> order;
  std::vector<Code> sorted;
  while (begin < end) {
    for (std::size_t q = begin; q < end; ++q) {
      for (Code c : uniq) {
        el.push_back(law->multiply(el[q], c));
        auto idx = static_cast<ElemIndex>(el.size() - 1);
        if (g.index_.insert(idx, el) != idx) {
          el.pop_back();
        } else if (el.size() > cap) {
          throw ResourceError("group closure exceeded cap " + std::to_string(cap), el.size());
        }
      }
    }
    // Renumber the new layer in code order.
    const std::size_t n = el.size() - end;
    slots.resize(n);
    for (std::size_t k = 0; k < n; ++k) slots[k] = g.index_.slot_of(el[end + k], el);
    order.resize(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return el[end + a] < el[end + b]; });
    sorted.resize(n);
    for (std::size_t k = 0; k < n; ++k) sorted[k] = el[end + order[k]];
    for (std::size_t k = 0; k < n; ++k) {
      el[end + k] = sorted[k];
      g.index_.set_slot(slots[order[k]], static_cast<ElemIndex>(end + k));
    }
    begin = end;
    end = el.size();
  }
  g.identity_ = 0;
  for (Code c : uniq) g.generators_.push_back(g.index_of(c));
  return g;
}

std::vector<Code> greedy_generators(const GroupLaw& law, std::span<const Code> elements) {
  std::vector<Code> gens;
  std::unordered_set<Code> span{law.identity()};
  for (Code x : elements) {
    if (span.count(x)) continue;
    gens.push_back(x);
    std::vector<Code> frontier(span.begin(), span.end());
    while (!frontier.empty()) {
      std::vector<Code> next;
      for (Code y : frontier)
        for (Code g : gens) {
          Code z = law.multiply(y, g);
          if (span.insert(z).second) next.push_back(z);
        }
      frontier = std::move(next);
    }
  }
  return gens;
}

FiniteGroup group_from_table(std::vector<std::vector<std::uint32_t>> table) {
  auto law = std::make_shared<TableLaw>(std::move(table));
  std::vector<Code> el(law->order());
  std::iota(el.begin(), el.end(), Code{0});
  return FiniteGroup(law, std::move(el), {});
}

std::vector<std::vector<std::uint32_t>> cayley_table(const FiniteGroup& g) {
  std::vector<std::vector<std::uint32_t>> t(g.size(), std::vector<std::uint32_t>(g.size()));
  for (ElemIndex a = 0; a < g.size(); ++a)
    for (ElemIndex b = 0; b < g.size(); ++b) t[a][b] = g.mul(a, b);
  return t;
}

FiniteGroup cyclic_group(std::uint32_t m) {
  if (m == 0) throw ParameterError("cyclic group order must be positive");
  std::vector<std::vector<std::uint32_t>> t(m, std::vector<std::uint32_t>(m));
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b) t[a][b] = (a + b) % m;
  return group_from_table(std::move(t));
}

FiniteGroup symmetric_group(std::uint32_t k) {
  auto law = std::make_shared<PermutationLaw>(k);
  std::vector<Code> gens;
  if (k >= 2) {
    gens.push_back(law->from_cycles({{1, 2}}));
    std::vector<int> cyc(k);
    std::iota(cyc.begin(), cyc.end(), 1);
    if (k >= 3) gens.push_back(law->from_cycles({cyc}));
  }
  return bfs_closure(law, gens, 1u << 31);
}

FiniteGroup subgroup(const FiniteGroup& g, std::span<const Code> gens) {
  for (Code c : gens) g.index_of(c);
  FiniteGroup h = bfs_closure(g.law_ptr(), gens, g.size());
  for (Code c : h.codes())
    if (!g.contains(c)) throw StructuralError("generated subgroup leaves the ambient group");
  return h;
}

bool same_law(const FiniteGroup& a, const FiniteGroup& b) {
  return a.law_ptr() == b.law_ptr() || a.law().signature() == b.law().signature();
}

bool is_subgroup_of(const FiniteGroup& h, const FiniteGroup& g) {
  if (!same_law(h, g) || h.size() > g.size() || g.size() % h.size() != 0) return false;
  return std::all_of(h.codes().begin(), h.codes().end(), [&](Code c) { return g.contains(c); });
}

FiniteGroup intersection(const FiniteGroup& a, const FiniteGroup& b) {
  if (!same_law(a, b)) throw StructuralError("intersection of groups with different laws");
  std::vector<Code> el;
  for (Code c : a.codes())
    if (b.contains(c)) el.push_back(c);
  return FiniteGroup(a.law_ptr(), std::move(el), {});
}

CosetPartition cosets(const FiniteGroup& g, const FiniteGroup& k) {
  if (!is_subgroup_of(k, g)) throw StructuralError("coset partition needs a subgroup");
  constexpr ElemIndex unset = CodeIndex::kEmpty;
  CosetPartition out;
  out.subgroup_order = k.size();
  out.coset_of.assign(g.size(), unset);
  const GroupLaw& law = g.law();
  for (ElemIndex x = 0; x < g.size(); ++x) {
    if (out.coset_of[x] != unset) continue;
    auto id = static_cast<ElemIndex>(out.representatives.size());
    out.representatives.push_back(x);
    for (Code c : k.codes()) {
      ElemIndex y = g.index_of(law.multiply(g.code(x), c));
      if (out.coset_of[y] != unset) throw StructuralError("cosets overlap; subgroup not closed");
      out.coset_of[y] = id;
    }
  }
  return out;
}

FiniteGroup normal_closure(const FiniteGroup& g, std::span<const Code> s) {
  const GroupLaw& law = g.law();
  std::vector<Code> gens;
  for (Code c : s) {
    g.index_of(c);
    if (c != law.identity() && std::find(gens.begin(), gens.end(), c) == gens.end()) gens.push_back(c);
  }
  std::vector<std::pair<Code, Code>> conj;
  for (Code h : g.generator_codes()) conj.emplace_back(h, law.inverse(h));
  FiniteGroup n = bfs_closure(g.law_ptr(), gens, g.size());
  for (;;) {
    bool grew = false;
    for (std::size_t q = 0; q < gens.size(); ++q)
      for (auto [h, hinv] : conj) {
        Code c = law.multiply(law.multiply(h, gens[q]), hinv);
        if (!n.contains(c) && std::find(gens.begin(), gens.end(), c) == gens.end()) {
          gens.push_back(c);
          grew = true;
        }
      }
    if (!grew) return n;
    n = bfs_closure(g.law_ptr(), gens, g.size());
  }
}

bool is_normal(const FiniteGroup& g, const FiniteGroup& n) {
  if (!is_subgroup_of(n, g)) return false;
  const GroupLaw& law = g.law();
  for (Code h : g.generator_codes()) {
    Code hinv = law.inverse(h);
    for (Code y : n.generator_codes())
      if (!n.contains(law.multiply(law.multiply(h, y), hinv))) return false;
  }
  return true;
}

QuotientLaw::QuotientLaw(std::shared_ptr<const FiniteGroup> parent, CosetPartition partition)
    : parent_(std::move(parent)), partition_(std::move(partition)) {}

Code QuotientLaw::multiply(Code a, Code b) const {
  const auto& reps = partition_.representatives;
  if (a >= reps.size() || b >= reps.size()) throw InputError("coset id out of range");
  Code x = parent_->law().multiply(parent_->code(reps[a]), parent_->code(reps[b]));
  return partition_.coset_of[parent_->index_of(x)];
}

Code QuotientLaw::inverse(Code a) const {
  const auto& reps = partition_.representatives;
  if (a >= reps.size()) throw InputError("coset id out of range");
  return partition_.coset_of[parent_->inv(reps[a])];
}

Code QuotientLaw::identity() const { return partition_.coset_of[parent_->identity()]; }

std::string QuotientLaw::signature() const {
  std::uint64_t d = partition_.subgroup_order;
  for (auto c : partition_.coset_of) d = mix(d ^ c);
  return "quot/" + parent_->law().signature() + "/" + std::to_string(parent_->size()) + "/" + hex(d);
}

QuotientGroup quotient(const FiniteGroup& g, const FiniteGroup& n) {
  if (!is_normal(g, n)) throw StructuralError("quotient by a subgroup that is not normal");
  CosetPartition part = cosets(g, n);
  std::vector<ElemIndex> proj = part.coset_of;
  const std::size_t m = part.count();
  std::vector<Code> gens;
  for (auto gi : g.generators()) gens.push_back(proj[gi]);
  auto law = std::make_shared<QuotientLaw>(std::make_shared<FiniteGroup>(g), std::move(part));
  std::vector<Code> el(m);
  std::iota(el.begin(), el.end(), Code{0});
  // Coset ids follow least representatives, so element index == code.
  return QuotientGroup{FiniteGroup(law, std::move(el), std::move(gens)), std::move(proj)};
}

std::uint64_t element_order(const FiniteGroup& g, ElemIndex x) {
  const GroupLaw& law = g.law();
  const Code id = g.code(g.identity());
  const Code base = g.code(x);
  Code cur = base;
  std::uint64_t k = 1;
  while (cur != id) {
    cur = law.multiply(cur, base);
    if (++k > g.size()) throw StructuralError("element order exceeds group order");
  }
  return k;
}

AxiomReport verify_axioms(const FiniteGroup& g, std::size_t exhaustive_limit, std::size_t samples,
                          std::uint64_t seed) {
  AxiomReport rep;
  const GroupLaw& law = g.law();
  const Code id = g.code(g.identity());
  const std::size_t n = g.size();
  rep.exhaustive = n <= exhaustive_limit;
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.failure = std::move(msg);
    return rep;
  };
  auto check_one = [&](Code x) -> bool {
    if (law.multiply(id, x) != x || law.multiply(x, id) != x) return fail("identity fails at " + law.format(x)), false;
    Code xi = law.inverse(x);
    if (!g.contains(xi)) return fail("inverse missing for " + law.format(x)), false;
    if (law.multiply(x, xi) != id || law.multiply(xi, x) != id) return fail("bad inverse for " + law.format(x)), false;
    return true;
  };
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  if (rep.exhaustive) {
    for (Code x : g.codes())
      if (!check_one(x)) return rep;
    for (Code x : g.codes())
      for (Code y : g.codes())
        if (!g.contains(law.multiply(x, y))) return fail("not closed at " + law.format(x) + " * " + law.format(y));
  } else {
    for (std::size_t k = 0; k < samples; ++k) {
      Code x = g.code(pick(rng)), y = g.code(pick(rng));
      if (!check_one(x)) return rep;
      if (!g.contains(law.multiply(x, y))) return fail("not closed at " + law.format(x) + " * " + law.format(y));
    }
  }
  for (std::size_t k = 0; k < samples; ++k) {
    Code x = g.code(pick(rng)), y = g.code(pick(rng)), z = g.code(pick(rng));
    if (law.multiply(law.multiply(x, y), z) != law.multiply(x, law.multiply(y, z)))
      return fail("associativity fails");
  }
  return rep;
}

} // namespace hdx
