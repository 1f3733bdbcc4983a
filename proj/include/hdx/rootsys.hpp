#pragma once

// The A_n root system: roots (i, j), Weyl chambers indexed by permutations,
// and the staged chamber propagation.

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hdx {

/// 1-based pair (i, j), i != j.
struct Root {
  int i = 0;
  int j = 0;

  Root opposite() const noexcept { return {j, i}; }
  std::string to_string() const;
  friend auto operator<=>(const Root&, const Root&) = default;
};

using RootPair = std::pair<Root, Root>;

/// Images of 1..n+1; perm[k-1] = gamma(k).
using Permutation = std::vector<int>;
/// Bit (i-1)(n+1) + (j-1) marks root (i, j); requires n <= 7.
using RootMask = std::uint64_t;

inline constexpr int kMaxRank = 7;

Permutation identity_permutation(int n);
/// gamma_0 = (1 2 ... n+1)
Permutation gamma0(int n);
/// The n-cycle fixing n+1 with gamma_1(k) = k-1 for 2 <= k <= n and gamma_1(1) = n.
Permutation gamma1(int n);
/// (a b)(x) = a(b(x))
Permutation compose(const Permutation& a, const Permutation& b);
Permutation power(const Permutation& a, int k);
Permutation inverse(const Permutation& a);
/// All (n+1)! permutations in lexicographic order.
std::vector<Permutation> all_permutations(int n);

Root act(const Permutation& g, Root r);
std::vector<Root> all_roots(int n);
bool is_root(int n, Root r);

/// {(g(a), g(b)) : a < b}, sorted.
std::vector<Root> chamber_roots(const Permutation& g);
/// {(g(a), g(a+1)) : 1 <= a <= n}, sorted.
std::vector<Root> chamber_boundary(const Permutation& g);

RootMask root_bit(int n, Root r);
RootMask chamber_mask(const Permutation& g);
RootMask boundary_mask(const Permutation& g);
std::vector<Root> roots_of_mask(int n, RootMask m);

/// Unordered pairs {a, b} of roots, a <= b, excluding opposite pairs.
std::vector<RootPair> non_opposite_pairs(int n);
/// R(R+1)/2 - R/2 with R = n(n+1).
std::uint64_t non_opposite_pair_count(int n);

/// A set of chambers with a precomputed pair-coverage table.
class ChamberSet {
public:
  ChamberSet(int n, int stage, std::vector<Permutation> chambers);

  int n() const noexcept { return n_; }
  int stage() const noexcept { return stage_; }
  std::size_t size() const noexcept { return chambers_.size(); }
  const std::vector<Permutation>& chambers() const noexcept { return chambers_; }
  bool contains(const Permutation& g) const;

  /// Some chamber contains both roots. Opposite roots are never covered.
  bool pair_covered(Root a, Root b) const;
  /// Roots that share a chamber with r.
  RootMask partners(Root r) const;

private:
  int n_;
  int stage_;
  std::vector<Permutation> chambers_;  // sorted
  std::vector<RootMask> partners_;     // indexed by root bit
};

/// {C_{gamma_0^i} : 0 <= i <= n}
ChamberSet initial_chambers(int n);

/// Chambers whose boundary pairs, and whose pairs sharing a first or a second
/// index, are all covered by prev. Scans every permutation.
ChamberSet propagate_stage(const ChamberSet& prev, unsigned workers = 1);

struct CoverageReport {
  int n = 0;
  std::uint64_t total_pairs = 0;
  std::vector<std::size_t> stage_sizes;
  std::vector<std::uint64_t> covered_pairs;
  std::vector<std::vector<RootPair>> uncovered;
  /// Every stage contains the previous one.
  bool monotone = true;
  bool complete() const { return !covered_pairs.empty() && covered_pairs.back() == total_pairs; }
};

/// Stages 0..stages; needs 3 <= n <= 7.
CoverageReport verify_propagation(int n, int stages = 2, unsigned workers = 1);

/// {(i,i+1) : 1 <= i <= n-1, i != n-l} u {(n,1)} u {(n-l,n+1)}, sorted; 1 <= l <= n-1.
std::vector<Root> boundary_of_gamma1_power(int n, int l);

} // namespace hdx
