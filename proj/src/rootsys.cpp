#include "hdx/rootsys.hpp"

#include "hdx/error.hpp"
#include "hdx/parallel.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace hdx {

namespace {

void check_rank(int n) {
  if (n < 1 || n > kMaxRank) throw ParameterError("rank must lie in [1, " + std::to_string(kMaxRank) + "]");
}

void check_perm(const Permutation& g) {
  const int m = static_cast<int>(g.size());
  if (m < 2 || m > kMaxRank + 1) throw ParameterError("permutation size out of range");
  std::vector<bool> seen(m, false);
  for (int x : g) {
    if (x < 1 || x > m || seen[x - 1]) throw ParameterError("not a permutation");
    seen[x - 1] = true;
  }
}

int rank_of(const Permutation& g) { return static_cast<int>(g.size()) - 1; }

} // namespace

std::string Root::to_string() const {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

Permutation identity_permutation(int n) {
  Permutation g(n + 1);
  std::iota(g.begin(), g.end(), 1);
  return g;
}

Permutation gamma0(int n) {
  Permutation g(n + 1);
  for (int k = 1; k <= n + 1; ++k) g[k - 1] = k % (n + 1) + 1;
  return g;
}

Permutation gamma1(int n) {
  Permutation g = identity_permutation(n);
  for (int k = 2; k <= n; ++k) g[k - 1] = k - 1;
  g[0] = n;
  return g;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw ParameterError("composing permutations of different sizes");
  Permutation c(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) c[k] = a[b[k] - 1];
  return c;
}

Permutation inverse(const Permutation& a) {
  Permutation c(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) c[a[k] - 1] = static_cast<int>(k) + 1;
  return c;
}

Permutation power(const Permutation& a, int k) {
  Permutation base = k < 0 ? inverse(a) : a;
  Permutation r = identity_permutation(rank_of(a));
  for (int e = 0; e < std::abs(k); ++e) r = compose(base, r);
  return r;
}

std::vector<Permutation> all_permutations(int n) {
  check_rank(n);
  std::vector<Permutation> out;
  Permutation g = identity_permutation(n);
  do out.push_back(g);
  while (std::next_permutation(g.begin(), g.end()));
  return out;
}

Root act(const Permutation& g, Root r) { return {g[r.i - 1], g[r.j - 1]}; }

bool is_root(int n, Root r) { return r.i >= 1 && r.j >= 1 && r.i <= n + 1 && r.j <= n + 1 && r.i != r.j; }

std::vector<Root> all_roots(int n) {
  std::vector<Root> out;
  for (int i = 1; i <= n + 1; ++i)
    for (int j = 1; j <= n + 1; ++j)
      if (i != j) out.push_back({i, j});
  return out;
}

std::vector<Root> chamber_roots(const Permutation& g) {
  check_perm(g);
  std::vector<Root> out;
  const int m = static_cast<int>(g.size());
  for (int a = 1; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b) out.push_back(act(g, {a, b}));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Root> chamber_boundary(const Permutation& g) {
  check_perm(g);
  std::vector<Root> out;
  for (int a = 1; a + 1 <= static_cast<int>(g.size()); ++a) out.push_back(act(g, {a, a + 1}));
  std::sort(out.begin(), out.end());
  return out;
}

RootMask root_bit(int n, Root r) {
  if (!is_root(n, r)) throw ParameterError("invalid root " + r.to_string());
  return RootMask{1} << ((r.i - 1) * (n + 1) + (r.j - 1));
}

RootMask chamber_mask(const Permutation& g) {
  RootMask m = 0;
  const int n = rank_of(g);
  for (int a = 0; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) m |= RootMask{1} << ((g[a] - 1) * (n + 1) + (g[b] - 1));
  return m;
}

RootMask boundary_mask(const Permutation& g) {
  RootMask m = 0;
  const int n = rank_of(g);
  for (int a = 0; a < n; ++a) m |= RootMask{1} << ((g[a] - 1) * (n + 1) + (g[a + 1] - 1));
  return m;
}

std::vector<Root> roots_of_mask(int n, RootMask m) {
  std::vector<Root> out;
  while (m) {
    int b = std::countr_zero(m);
    m &= m - 1;
    out.push_back({b / (n + 1) + 1, b % (n + 1) + 1});
  }
  return out;
}

std::vector<RootPair> non_opposite_pairs(int n) {
  auto roots = all_roots(n);
  std::vector<RootPair> out;
  for (std::size_t a = 0; a < roots.size(); ++a)
    for (std::size_t b = a; b < roots.size(); ++b)
      if (roots[a] != roots[b].opposite()) out.emplace_back(roots[a], roots[b]);
  return out;
}

std::uint64_t non_opposite_pair_count(int n) {
  std::uint64_t r = std::uint64_t(n) * (n + 1);
  return r * (r + 1) / 2 - r / 2;
}

ChamberSet::ChamberSet(int n, int stage, std::vector<Permutation> chambers)
    : n_(n), stage_(stage), chambers_(std::move(chambers)) {
  check_rank(n);
  for (const auto& g : chambers_) {
    if (rank_of(g) != n) throw ParameterError("chamber of the wrong rank");
    check_perm(g);
  }
  std::sort(chambers_.begin(), chambers_.end());
  chambers_.erase(std::unique(chambers_.begin(), chambers_.end()), chambers_.end());
  partners_.assign(std::size_t(n + 1) * (n + 1), 0);
  for (const auto& g : chambers_) {
    RootMask m = chamber_mask(g);
    for (RootMask rest = m; rest; rest &= rest - 1) partners_[std::countr_zero(rest)] |= m;
  }
}

bool ChamberSet::contains(const Permutation& g) const {
  return std::binary_search(chambers_.begin(), chambers_.end(), g);
}

RootMask ChamberSet::partners(Root r) const {
  return partners_[std::countr_zero(root_bit(n_, r))];
}

bool ChamberSet::pair_covered(Root a, Root b) const {
  if (a == b.opposite()) return false;
  return (partners(a) & root_bit(n_, b)) != 0;
}

ChamberSet initial_chambers(int n) {
  check_rank(n);
  std::vector<Permutation> c;
  for (int i = 0; i <= n; ++i) c.push_back(power(gamma0(n), i));
  return ChamberSet(n, 0, std::move(c));
}

ChamberSet propagate_stage(const ChamberSet& prev, unsigned workers) {
  const int n = prev.n();
  auto perms = all_permutations(n);
  std::vector<char> keep(perms.size(), 0);
  const int m = n + 1;
  parallel_for(perms.size(), workers, [&](std::size_t k) {
    const Permutation& g = perms[k];
    auto boundary = roots_of_mask(n, boundary_mask(g));
    for (Root a : boundary)
      for (Root b : boundary)
        if (!prev.pair_covered(a, b)) return;
    RootMask cm = chamber_mask(g);
    auto roots = roots_of_mask(n, cm);
    for (Root a : roots) {
      RootMask share = 0;
      for (int x = 1; x <= m; ++x) {
        if (x != a.j && x != a.i) share |= root_bit(n, {a.i, x});
        if (x != a.i && x != a.j) share |= root_bit(n, {x, a.j});
      }
      share |= root_bit(n, a);
      share &= cm;
      if ((prev.partners(a) & share) != share) return;
    }
    keep[k] = 1;
  });
  std::vector<Permutation> next;
  for (std::size_t k = 0; k < perms.size(); ++k)
    if (keep[k]) next.push_back(perms[k]);
  return ChamberSet(n, prev.stage() + 1, std::move(next));
}

CoverageReport verify_propagation(int n, int stages, unsigned workers) {
  if (n < 3) throw ParameterError("propagation needs n >= 3");
  check_rank(n);
  if (stages < 0) throw ParameterError("stage count must be non-negative");
  CoverageReport rep;
  rep.n = n;
  auto pairs = non_opposite_pairs(n);
  rep.total_pairs = pairs.size();
  ChamberSet cur = initial_chambers(n);
  for (int k = 0; k <= stages; ++k) {
    if (k > 0) {
      ChamberSet next = propagate_stage(cur, workers);
      for (const auto& g : cur.chambers())
        if (!next.contains(g)) rep.monotone = false;
      cur = std::move(next);
    }
    rep.stage_sizes.push_back(cur.size());
    std::vector<RootPair> missing;
    for (const auto& [a, b] : pairs)
      if (!cur.pair_covered(a, b)) missing.emplace_back(a, b);
    rep.covered_pairs.push_back(pairs.size() - missing.size());
    rep.uncovered.push_back(std::move(missing));
  }
  return rep;
}

std::vector<Root> boundary_of_gamma1_power(int n, int l) {
  if (n < 2) throw ParameterError("boundary formula needs n >= 2");
  if (l < 1 || l > n - 1) throw ParameterError("l must lie in [1, n-1]");
  std::vector<Root> out;
  for (int i = 1; i <= n - 1; ++i)
    if (i != n - l) out.push_back({i, i + 1});
  out.push_back({n, 1});
  out.push_back({n - l, n + 1});
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace hdx
