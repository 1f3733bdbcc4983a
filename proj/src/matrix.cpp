#include "hdx/matrix.hpp"

#include "hdx/error.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <numeric>
#include <sstream>

namespace hdx {

namespace {

// Leibniz expansion; dimensions here never exceed 8.
TruncPoly leibniz_det(std::span<const TruncPoly> entries, std::uint32_t dim, std::uint32_t p,
                      std::uint32_t s) {
  TruncPoly total(p, s);
  if (dim == 0) return TruncPoly::constant(p, s, 1);
  std::vector<std::uint32_t> perm(dim);
  std::iota(perm.begin(), perm.end(), 0u);
  do {
    int inversions = 0;
    for (std::uint32_t a = 0; a < dim; ++a)
      for (std::uint32_t b = a + 1; b < dim; ++b)
        if (perm[a] > perm[b]) ++inversions;
    TruncPoly term = TruncPoly::constant(p, s, 1);
    for (std::uint32_t r = 0; r < dim && !term.is_zero(); ++r) term *= entries[r * dim + perm[r]];
    total += (inversions % 2) ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

std::vector<TruncPoly> entries_of(const MatElement& m) {
  std::vector<TruncPoly> out;
  out.reserve(m.dim() * m.dim());
  for (std::uint32_t r = 0; r < m.dim(); ++r)
    for (std::uint32_t c = 0; c < m.dim(); ++c) out.push_back(m.entry(r, c));
  return out;
}

} // namespace

MatElement::MatElement(std::uint32_t dim, std::uint32_t p, std::uint32_t s)
    : dim_(dim), p_(p), s_(s), coeffs_(std::size_t(dim) * dim * s, 0) {
  if (dim == 0) throw ParameterError("matrix dimension must be positive");
  if (!is_prime(p)) throw ParameterError("modulus " + std::to_string(p) + " is not prime");
  if (s == 0) throw ParameterError("truncation exponent must be positive");
}

MatElement MatElement::identity(std::uint32_t dim, std::uint32_t p, std::uint32_t s) {
  MatElement m(dim, p, s);
  for (std::uint32_t k = 0; k < dim; ++k) m.coeffs_[(k * dim + k) * s] = 1;
  return m;
}

MatElement MatElement::elementary(std::uint32_t dim, std::uint32_t i, std::uint32_t j,
                                  const TruncPoly& r) {
  if (i < 1 || j < 1 || i > dim || j > dim)
    throw ParameterError("elementary matrix index out of range");
  if (i == j) throw ParameterError("elementary matrix needs i != j");
  MatElement m = identity(dim, r.p(), r.s());
  m.set_entry(i - 1, j - 1, r);
  return m;
}

MatElement MatElement::permutation(std::span<const int> perm, std::uint32_t p, std::uint32_t s) {
  auto dim = static_cast<std::uint32_t>(perm.size());
  MatElement m(dim, p, s);
  std::vector<bool> seen(dim, false);
  for (std::uint32_t k = 0; k < dim; ++k) {
    int img = perm[k];
    if (img < 1 || img > static_cast<int>(dim) || seen[img - 1])
      throw ParameterError("not a permutation of 1..dim");
    seen[img - 1] = true;
    m.coeffs_[((img - 1) * dim + k) * s] = 1;
  }
  return m;
}

TruncPoly MatElement::entry(std::uint32_t r, std::uint32_t c) const {
  if (r >= dim_ || c >= dim_) throw ParameterError("matrix entry out of range");
  std::vector<std::int64_t> v(coeffs_.begin() + (r * dim_ + c) * s_,
                              coeffs_.begin() + (r * dim_ + c + 1) * s_);
  return TruncPoly(p_, s_, v);
}

void MatElement::set_entry(std::uint32_t r, std::uint32_t c, const TruncPoly& v) {
  if (r >= dim_ || c >= dim_) throw ParameterError("matrix entry out of range");
  if (v.p() != p_ || v.s() != s_) throw ParameterError("entry has mismatched ring parameters");
  std::copy(v.coeffs().begin(), v.coeffs().end(), coeffs_.begin() + (r * dim_ + c) * s_);
}

bool MatElement::is_identity() const { return *this == identity(dim_, p_, s_); }

TruncPoly MatElement::det() const { return leibniz_det(entries_of(*this), dim_, p_, s_); }

MatElement MatElement::inverse() const {
  TruncPoly d = det();
  if (!d.is_unit()) throw ParameterError("matrix is not invertible");
  TruncPoly dinv = d.inverse();
  auto e = entries_of(*this);
  MatElement out(dim_, p_, s_);
  std::vector<TruncPoly> minor;
  for (std::uint32_t r = 0; r < dim_; ++r) {
    for (std::uint32_t c = 0; c < dim_; ++c) {
      // adj(A)[c][r] = (-1)^{r+c} det(A without row r, column c)
      minor.clear();
      for (std::uint32_t a = 0; a < dim_; ++a)
        for (std::uint32_t b = 0; b < dim_; ++b)
          if (a != r && b != c) minor.push_back(e[a * dim_ + b]);
      TruncPoly cof = leibniz_det(minor, dim_ - 1, p_, s_);
      if ((r + c) % 2) cof = -cof;
      out.set_entry(c, r, cof * dinv);
    }
  }
  return out;
}

MatElement MatElement::pow(std::uint64_t k) const {
  MatElement result = identity(dim_, p_, s_);
  MatElement base = *this;
  while (k) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

MatElement MatElement::with_precision(std::uint32_t new_s) const {
  MatElement out(dim_, p_, new_s);
  for (std::uint32_t e = 0; e < dim_ * dim_; ++e)
    for (std::uint32_t k = 0; k < std::min(s_, new_s); ++k)
      out.coeffs_[e * new_s + k] = coeffs_[e * s_ + k];
  return out;
}

std::string MatElement::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::uint32_t r = 0; r < dim_; ++r) {
    if (r) os << "; ";
    for (std::uint32_t c = 0; c < dim_; ++c) {
      if (c) os << ", ";
      os << entry(r, c).to_string();
    }
  }
  os << ']';
  return os.str();
}

MatElement operator*(const MatElement& a, const MatElement& b) {
  if (a.dim_ != b.dim_ || a.p_ != b.p_ || a.s_ != b.s_)
    throw ParameterError("matrix shape mismatch");
  const std::uint32_t m = a.dim_, s = a.s_, p = a.p_;
  MatElement out(m, p, s);
  std::vector<std::uint64_t> acc(s);
  for (std::uint32_t r = 0; r < m; ++r) {
    for (std::uint32_t c = 0; c < m; ++c) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::uint32_t j = 0; j < m; ++j) {
        const std::uint32_t* x = &a.coeffs_[(r * m + j) * s];
        const std::uint32_t* y = &b.coeffs_[(j * m + c) * s];
        for (std::uint32_t u = 0; u < s; ++u) {
          if (!x[u]) continue;
          for (std::uint32_t v = 0; u + v < s; ++v) acc[u + v] = (acc[u + v] + std::uint64_t(x[u]) * y[v]) % p;
        }
      }
      for (std::uint32_t k = 0; k < s; ++k) out.coeffs_[(r * m + c) * s + k] = static_cast<std::uint32_t>(acc[k]);
    }
  }
  return out;
}

MatElement commutator(const MatElement& x, const MatElement& y) {
  return x * y * x.inverse() * y.inverse();
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::uint32_t kMaxCoefficients = 64;

std::uint32_t field_bits(std::uint32_t p) { return static_cast<std::uint32_t>(std::bit_width(p - 1)); }

bool radix_fits(std::uint32_t p, std::uint32_t count) {
  unsigned __int128 v = 1;
  for (std::uint32_t k = 0; k < count; ++k) {
    v *= p;
    if (v > std::numeric_limits<std::uint64_t>::max()) return false;
  }
  return true;
}

} // namespace

bool MatCodec::fits(std::uint32_t dim, std::uint32_t p, std::uint32_t s) {
  std::uint64_t count = std::uint64_t(dim) * dim * s;
  if (count > kMaxCoefficients) return false;
  if (count * field_bits(p) <= 64) return true;
  return radix_fits(p, static_cast<std::uint32_t>(count));
}

MatCodec::MatCodec(std::uint32_t dim, std::uint32_t p, std::uint32_t s)
    : dim_(dim), p_(p), s_(s), count_(dim * dim * s) {
  if (!is_prime(p)) throw ParameterError("modulus " + std::to_string(p) + " is not prime");
  if (p >= (1u << 16)) throw ParameterError("modulus too large for packed matrix codes");
  if (!fits(dim, p, s))
    throw ParameterError("matrices of dimension " + std::to_string(dim) + " over F_" +
                         std::to_string(p) + "[t]/t^" + std::to_string(s) +
                         " do not fit a 64-bit code");
  if (count_ * field_bits(p) <= 64) bits_ = field_bits(p);
}

std::uint64_t MatCodec::encode(std::span<const std::uint32_t> coeffs) const {
  std::uint64_t code = 0;
  if (bits_) {
    for (std::uint32_t k = 0; k < count_; ++k) code |= std::uint64_t(coeffs[k]) << (k * bits_);
  } else {
    for (std::uint32_t k = count_; k-- > 0;) code = code * p_ + coeffs[k];
  }
  return code;
}

void MatCodec::decode(std::uint64_t code, std::span<std::uint32_t> out) const {
  if (bits_) {
    const std::uint64_t mask = (std::uint64_t(1) << bits_) - 1;
    for (std::uint32_t k = 0; k < count_; ++k) out[k] = static_cast<std::uint32_t>((code >> (k * bits_)) & mask);
  } else {
    for (std::uint32_t k = 0; k < count_; ++k) {
      out[k] = static_cast<std::uint32_t>(code % p_);
      code /= p_;
    }
  }
}

MatElement MatCodec::decode(std::uint64_t code) const {
  MatElement m(dim_, p_, s_);
  decode(code, m.raw());
  return m;
}

void MatCodec::multiply(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                        std::span<std::uint32_t> out) const {
  const std::uint32_t m = dim_, s = s_;
  std::array<std::uint64_t, kMaxCoefficients> acc{};
  for (std::uint32_t r = 0; r < m; ++r) {
    for (std::uint32_t c = 0; c < m; ++c) {
      std::fill_n(acc.begin(), s, std::uint64_t{0});
      for (std::uint32_t j = 0; j < m; ++j) {
        const std::uint32_t* x = &a[(r * m + j) * s];
        const std::uint32_t* y = &b[(j * m + c) * s];
        for (std::uint32_t u = 0; u < s; ++u) {
          if (!x[u]) continue;
          for (std::uint32_t v = 0; u + v < s; ++v) acc[u + v] += std::uint64_t(x[u]) * y[v];
        }
      }
      // p < 2^16 and at most 64 terms per entry, so the sums cannot overflow.
      for (std::uint32_t k = 0; k < s; ++k) out[(r * m + c) * s + k] = static_cast<std::uint32_t>(acc[k] % p_);
    }
  }
}

} // namespace hdx
