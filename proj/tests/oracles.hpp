#pragma once

// Reference computations used only by the tests. Each one is written
// independently of the library routine it checks.

#include "hdx/matrix.hpp"

#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using hdx::TruncPoly;

/// Laplace expansion along the first row.
inline TruncPoly cofactor_det(const std::vector<std::vector<TruncPoly>>& a) {
  const std::size_t n = a.size();
  const auto p = a[0][0].p();
  const auto s = a[0][0].s();
  if (n == 1) return a[0][0];
  TruncPoly total(p, s);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<TruncPoly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<TruncPoly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(row);
    }
    TruncPoly term = a[0][c] * cofactor_det(minor);
    total = (c % 2) ? total - term : total + term;
  }
  return total;
}

inline std::vector<std::vector<TruncPoly>> entries(const hdx::MatElement& m) {
  std::vector<std::vector<TruncPoly>> a(m.dim());
  for (std::uint32_t r = 0; r < m.dim(); ++r)
    for (std::uint32_t c = 0; c < m.dim(); ++c) a[r].push_back(m.entry(r, c));
  return a;
}

/// Every dim x dim matrix over F_p[t]/t^s with determinant 1, by exhaustive
/// enumeration of p^(dim^2 s) coefficient vectors.
inline std::vector<hdx::MatElement> brute_special_linear(std::uint32_t dim, std::uint32_t p,
                                                         std::uint32_t s) {
  std::vector<hdx::MatElement> out;
  const std::size_t len = std::size_t(dim) * dim * s;
  std::vector<std::uint32_t> digits(len, 0);
  const TruncPoly one = TruncPoly::constant(p, s, 1);
  for (;;) {
    hdx::MatElement m(dim, p, s);
    std::copy(digits.begin(), digits.end(), m.raw().begin());
    if (cofactor_det(entries(m)) == one) out.push_back(m);
    std::size_t k = 0;
    while (k < len && ++digits[k] == p) digits[k++] = 0;
    if (k == len) break;
  }
  return out;
}

inline std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

} // namespace oracle
