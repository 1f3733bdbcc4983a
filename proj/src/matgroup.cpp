#include "hdx/matgroup.hpp"

#include "hdx/error.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <ostream>
#include <tuple>

namespace hdx {

std::shared_ptr<const MatrixLaw> matrix_law(std::uint32_t dim, std::uint32_t p, std::uint32_t s) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>,
                  std::shared_ptr<const MatrixLaw>>
      cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{dim, p, s}];
  if (!slot) slot = std::make_shared<MatrixLaw>(dim, p, s);
  return slot;
}

MatElement elementary(std::uint32_t n, std::uint32_t i, std::uint32_t j, const TruncPoly& r) {
  return MatElement::elementary(n + 1, i, j, r);
}

std::vector<int> gamma0_power(std::uint32_t n, std::uint32_t i) {
  std::vector<int> img(n + 1);
  for (std::uint32_t k = 1; k <= n + 1; ++k) img[k - 1] = int((k - 1 + i) % (n + 1)) + 1;
  return img;
}

FiniteGroup special_linear(std::uint32_t n, std::uint32_t p, std::uint32_t s, std::uint64_t cap) {
  if (n < 1) throw ParameterError("special linear group needs n >= 1");
  auto law = matrix_law(n + 1, p, s);
  std::vector<Code> gens;
  for (std::uint32_t i = 1; i <= n + 1; ++i)
    for (std::uint32_t j = 1; j <= n + 1; ++j)
      if (i != j)
        for (std::uint32_t k = 0; k < s; ++k)
          gens.push_back(law->encode(elementary(n, i, j, TruncPoly::monomial(p, s, k))));
  return bfs_closure(law, gens, cap);
}

FiniteGroup subgroup_K(std::uint32_t n, std::uint32_t p, std::uint32_t s, std::uint32_t d,
                       std::uint32_t i, std::uint64_t cap) {
  if (n < 1) throw ParameterError("K_i needs n >= 1");
  if (i > n) throw ParameterError("K_i index must lie in [0, n]");
  if (std::uint64_t(s) <= std::uint64_t(d) * n)
    throw ParameterError("K_i needs s > d*n (s=" + std::to_string(s) + ", d=" + std::to_string(d) +
                         ", n=" + std::to_string(n) + ")");
  auto law = matrix_law(n + 1, p, s);
  auto g = gamma0_power(n, i);
  auto polys = enumerate_polys(p, s, static_cast<int>(d));
  std::vector<Code> gens;
  for (std::uint32_t j = 1; j <= n; ++j)
    for (const auto& r : polys)
      if (!r.is_zero())
        gens.push_back(law->encode(elementary(n, g[j - 1], g[j % (n + 1)], r)));
  return bfs_closure(law, gens, cap);
}

std::optional<std::uint64_t> reduction_kernel_order(std::uint32_t n, std::uint32_t p,
                                                    std::uint32_t s_hi, std::uint32_t s_lo) {
  std::uint64_t m = n + 1;
  std::uint64_t e = (m * m - 1) * (s_hi - s_lo);
  unsigned __int128 v = 1;
  for (std::uint64_t k = 0; k < e; ++k) {
    v *= p;
    if (v > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  }
  return static_cast<std::uint64_t>(v);
}

FiniteGroup reduction_kernel(std::uint32_t n, std::uint32_t p, std::uint32_t s_hi,
                             std::uint32_t s_lo, std::uint64_t cap) {
  if (n < 1) throw ParameterError("reduction kernel needs n >= 1");
  if (!(s_hi > s_lo && s_lo >= 1)) throw ParameterError("reduction kernel needs s_hi > s_lo >= 1");
  auto law = matrix_law(n + 1, p, s_hi);
  auto order = reduction_kernel_order(n, p, s_hi, s_lo);
  if (!order || *order > cap)
    throw ResourceError("reduction kernel order exceeds cap " + std::to_string(cap), 0);

  const std::uint32_t m = n + 1, s = s_hi, w = s_hi - s_lo;
  const std::uint32_t last = m * m - 1;
  // Free digits: w coefficients for each entry except the last diagonal one.
  std::vector<std::uint32_t> digits(std::size_t(last) * w, 0);
  MatElement a = MatElement::identity(m, p, s);
  std::vector<Code> elements;
  elements.reserve(*order);

  // det = x * C + D where x is the last diagonal entry; C is a unit here.
  std::vector<std::uint32_t> perm(m);
  auto solve_last = [&]() {
    std::vector<TruncPoly> e;
    e.reserve(std::size_t(m) * m);
    for (std::uint32_t r = 0; r < m; ++r)
      for (std::uint32_t c = 0; c < m; ++c) e.push_back(a.entry(r, c));
    TruncPoly cdet(p, s), ddet(p, s);
    for (std::uint32_t k = 0; k < m; ++k) perm[k] = k;
    do {
      int inv = 0;
      for (std::uint32_t u = 0; u < m; ++u)
        for (std::uint32_t v = u + 1; v < m; ++v) inv += perm[u] > perm[v];
      TruncPoly term = TruncPoly::constant(p, s, 1);
      bool uses_last = perm[m - 1] == m - 1;
      for (std::uint32_t r = 0; r < m && !term.is_zero(); ++r)
        if (!(uses_last && r == m - 1)) term *= e[r * m + perm[r]];
      if (inv % 2) term = -term;
      (uses_last ? cdet : ddet) += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return (TruncPoly::constant(p, s, 1) - ddet) * cdet.inverse();
  };

  for (;;) {
    for (std::uint32_t e = 0; e < last; ++e) {
      std::uint32_t r = e / m, c = e % m;
      auto raw = a.raw();
      for (std::uint32_t k = 0; k < w; ++k) raw[(r * m + c) * s + s_lo + k] = digits[e * w + k];
    }
    a.set_entry(m - 1, m - 1, TruncPoly::constant(p, s, 1));
    a.set_entry(m - 1, m - 1, solve_last());
    elements.push_back(law->encode(a));
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == p) digits[k++] = 0;
    if (k == digits.size()) break;
  }
  std::sort(elements.begin(), elements.end());

  // Level-wise generators: e_ab(t^k) and diag(.., 1+t^k, (1+t^k)^-1, ..).
  std::vector<Code> gens;
  for (std::uint32_t k = s_lo; k < s_hi; ++k) {
    TruncPoly tk = TruncPoly::monomial(p, s, k);
    for (std::uint32_t i = 1; i <= m; ++i)
      for (std::uint32_t j = 1; j <= m; ++j)
        if (i != j) gens.push_back(law->encode(elementary(n, i, j, tk)));
    TruncPoly u = TruncPoly::constant(p, s, 1) + tk;
    for (std::uint32_t i = 0; i + 1 < m; ++i) {
      MatElement h = MatElement::identity(m, p, s);
      h.set_entry(i, i, u);
      h.set_entry(i + 1, i + 1, u.inverse());
      gens.push_back(law->encode(h));
    }
  }
  return FiniteGroup(law, std::move(elements), std::move(gens));
}

std::uint64_t matrix_order(const MatElement& m, std::uint64_t cap) {
  MatElement cur = m;
  std::uint64_t k = 1;
  while (!cur.is_identity()) {
    if (++k > cap) throw ResourceError("matrix order exceeds cap", k - 1);
    cur = cur * m;
  }
  return k;
}

void write_group_dump(std::ostream& os, const FiniteGroup& g, std::uint32_t n, std::uint32_t p,
                      std::uint32_t s) {
  os << n << ' ' << p << ' ' << s << ' ' << g.size() << '\n';
  for (Code c : g.codes()) os << g.law().format(c) << '\n';
}

} // namespace hdx
