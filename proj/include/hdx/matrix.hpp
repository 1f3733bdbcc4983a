#pragma once

// Square matrices over F_p[t]/<t^s> and their packed 64-bit codes.

#include "hdx/polyring.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hdx {

/// dim x dim matrix over F_p[t]/<t^s>. Coefficients are stored flat:
/// entry (r, c) occupies [(r*dim + c)*s, (r*dim + c + 1)*s).
class MatElement {
public:
  MatElement(std::uint32_t dim, std::uint32_t p, std::uint32_t s);

  static MatElement identity(std::uint32_t dim, std::uint32_t p, std::uint32_t s);
  /// Identity with r at 1-based position (i, j).
  static MatElement elementary(std::uint32_t dim, std::uint32_t i, std::uint32_t j,
                               const TruncPoly& r);
  /// Matrix sending basis vector k to basis vector perm[k] (1-based values).
  static MatElement permutation(std::span<const int> perm, std::uint32_t p, std::uint32_t s);

  std::uint32_t dim() const noexcept { return dim_; }
  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t s() const noexcept { return s_; }

  /// 0-based access.
  TruncPoly entry(std::uint32_t r, std::uint32_t c) const;
  void set_entry(std::uint32_t r, std::uint32_t c, const TruncPoly& v);
  std::span<const std::uint32_t> raw() const noexcept { return coeffs_; }
  std::span<std::uint32_t> raw() noexcept { return coeffs_; }

  bool is_identity() const;
  TruncPoly det() const;
  /// Adjugate times det^{-1}; throws ParameterError if det is not a unit.
  MatElement inverse() const;
  MatElement pow(std::uint64_t k) const;
  /// Entry-wise reduction modulo t^new_s (new_s <= s) or zero-extension.
  MatElement with_precision(std::uint32_t new_s) const;

  std::string to_string() const;

  friend MatElement operator*(const MatElement& a, const MatElement& b);
  friend bool operator==(const MatElement&, const MatElement&) = default;

private:
  std::uint32_t dim_, p_, s_;
  std::vector<std::uint32_t> coeffs_;
};

/// x y x^{-1} y^{-1}
MatElement commutator(const MatElement& x, const MatElement& y);

/// Bijection between matrices of a fixed shape and 64-bit codes. Uses
/// fixed-width bit fields when dim^2*s*ceil(log2 p) <= 64, otherwise
/// mixed radix p when p^(dim^2 s) < 2^64.
class MatCodec {
public:
  MatCodec(std::uint32_t dim, std::uint32_t p, std::uint32_t s);

  static bool fits(std::uint32_t dim, std::uint32_t p, std::uint32_t s);

  std::uint32_t dim() const noexcept { return dim_; }
  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t s() const noexcept { return s_; }
  std::uint32_t coefficient_count() const noexcept { return count_; }

  std::uint64_t encode(std::span<const std::uint32_t> coeffs) const;
  void decode(std::uint64_t code, std::span<std::uint32_t> out) const;

  std::uint64_t encode(const MatElement& m) const { return encode(m.raw()); }
  MatElement decode(std::uint64_t code) const;

  /// out = a*b on raw coefficient arrays of this shape.
  void multiply(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                std::span<std::uint32_t> out) const;

private:
  std::uint32_t dim_, p_, s_, count_;
  std::uint32_t bits_ = 0; // 0 selects radix mode
};

} // namespace hdx
