#pragma once

// Arithmetic in the truncated polynomial ring F_p[t]/<t^s>.

#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hdx {

/// Degree reported for the zero polynomial.
inline constexpr int kNegInfDegree = std::numeric_limits<int>::min();

bool is_prime(std::uint64_t p);

/// Element of F_p[t]/<t^s>, stored as exactly s residues, lowest degree first.
class TruncPoly {
public:
  /// The zero polynomial.
  TruncPoly(std::uint32_t p, std::uint32_t s);

  /// Coefficients are reduced mod p; terms of degree >= s are dropped and
  /// missing ones are zero.
  TruncPoly(std::uint32_t p, std::uint32_t s, std::span<const std::int64_t> coeffs);
  TruncPoly(std::uint32_t p, std::uint32_t s, std::initializer_list<std::int64_t> coeffs);

  static TruncPoly constant(std::uint32_t p, std::uint32_t s, std::int64_t c);
  static TruncPoly monomial(std::uint32_t p, std::uint32_t s, std::uint32_t k,
                            std::int64_t c = 1);

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t s() const noexcept { return static_cast<std::uint32_t>(coeffs_.size()); }
  std::uint32_t coeff(std::uint32_t k) const { return coeffs_.at(k); }
  std::span<const std::uint32_t> coeffs() const noexcept { return coeffs_; }

  /// Index of the top nonzero coefficient, kNegInfDegree for zero.
  int degree() const noexcept;
  bool is_zero() const noexcept;
  /// Units are exactly the elements with nonzero constant term.
  bool is_unit() const noexcept { return coeffs_[0] != 0; }

  TruncPoly inverse() const;
  /// Same coefficients viewed modulo t^new_s (truncating or zero-padding).
  TruncPoly with_precision(std::uint32_t new_s) const;

  /// Base-p packing sum c_k p^k; requires p^s < 2^64.
  std::uint64_t pack() const;
  static TruncPoly unpack(std::uint32_t p, std::uint32_t s, std::uint64_t code);

  /// "1+2*t+t^3" style; "0" for zero.
  std::string to_string() const;
  /// "[c0,c1,...]@p,s"
  std::string to_compact() const;

  friend TruncPoly operator+(const TruncPoly& a, const TruncPoly& b);
  friend TruncPoly operator-(const TruncPoly& a, const TruncPoly& b);
  friend TruncPoly operator*(const TruncPoly& a, const TruncPoly& b);
  TruncPoly operator-() const;
  TruncPoly& operator+=(const TruncPoly& b) { return *this = *this + b; }
  TruncPoly& operator*=(const TruncPoly& b) { return *this = *this * b; }

  friend bool operator==(const TruncPoly&, const TruncPoly&) = default;
  /// Orders by the packed value, i.e. the enumeration order.
  friend std::strong_ordering operator<=>(const TruncPoly& a, const TruncPoly& b);

private:
  TruncPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs)
      : p_(p), coeffs_(std::move(coeffs)) {}
  void require_compatible(const TruncPoly& other) const;

  std::uint32_t p_;
  std::vector<std::uint32_t> coeffs_;
};

TruncPoly poly_add(const TruncPoly& a, const TruncPoly& b);
TruncPoly poly_mul(const TruncPoly& a, const TruncPoly& b);
int poly_deg(const TruncPoly& a);

/// All polynomials of degree <= dmax, in increasing packed order
/// (the constant coefficient varies fastest).
std::vector<TruncPoly> enumerate_polys(std::uint32_t p, std::uint32_t s, int dmax);

/// Parses the text form ("2+t+3*t^2", whitespace ignored).
TruncPoly parse_poly(std::string_view text, std::uint32_t p, std::uint32_t s);
/// Parses the compact form "[c0,c1,...]@p,s".
TruncPoly parse_compact(std::string_view text);

} // namespace hdx
