#include "hdx/polyring.hpp"

#include "hdx/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace hdx {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

namespace {

void check_params(std::uint32_t p, std::uint32_t s) {
  if (!is_prime(p)) throw ParameterError("modulus " + std::to_string(p) + " is not prime");
  if (s == 0) throw ParameterError("truncation exponent must be positive");
}

std::uint32_t reduce(std::int64_t c, std::uint32_t p) {
  std::int64_t r = c % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

} // namespace

TruncPoly::TruncPoly(std::uint32_t p, std::uint32_t s) : p_(p), coeffs_(s, 0) {
  check_params(p, s);
}

TruncPoly::TruncPoly(std::uint32_t p, std::uint32_t s, std::span<const std::int64_t> coeffs)
    : TruncPoly(p, s) {
  for (std::size_t k = 0; k < coeffs.size() && k < s; ++k) coeffs_[k] = reduce(coeffs[k], p);
}

TruncPoly::TruncPoly(std::uint32_t p, std::uint32_t s, std::initializer_list<std::int64_t> coeffs)
    : TruncPoly(p, s, std::span<const std::int64_t>(coeffs.begin(), coeffs.size())) {}

TruncPoly TruncPoly::constant(std::uint32_t p, std::uint32_t s, std::int64_t c) {
  TruncPoly r(p, s);
  r.coeffs_[0] = reduce(c, p);
  return r;
}

TruncPoly TruncPoly::monomial(std::uint32_t p, std::uint32_t s, std::uint32_t k, std::int64_t c) {
  TruncPoly r(p, s);
  if (k < s) r.coeffs_[k] = reduce(c, p);
  return r;
}

int TruncPoly::degree() const noexcept {
  for (std::size_t k = coeffs_.size(); k-- > 0;)
    if (coeffs_[k] != 0) return static_cast<int>(k);
  return kNegInfDegree;
}

bool TruncPoly::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::uint32_t c) { return c == 0; });
}

void TruncPoly::require_compatible(const TruncPoly& other) const {
  if (p_ != other.p_ || coeffs_.size() != other.coeffs_.size())
    throw ParameterError("mismatched ring parameters: " + to_compact() + " vs " + other.to_compact());
}

TruncPoly operator+(const TruncPoly& a, const TruncPoly& b) {
  a.require_compatible(b);
  std::vector<std::uint32_t> c(a.coeffs_.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = (a.coeffs_[k] + b.coeffs_[k]) % a.p_;
  return TruncPoly(a.p_, std::move(c));
}

TruncPoly operator-(const TruncPoly& a, const TruncPoly& b) { return a + (-b); }

TruncPoly TruncPoly::operator-() const {
  std::vector<std::uint32_t> c(coeffs_.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = coeffs_[k] == 0 ? 0 : p_ - coeffs_[k];
  return TruncPoly(p_, std::move(c));
}

TruncPoly operator*(const TruncPoly& a, const TruncPoly& b) {
  a.require_compatible(b);
  const std::size_t s = a.coeffs_.size();
  std::vector<std::uint64_t> acc(s, 0);
  for (std::size_t i = 0; i < s; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; i + j < s; ++j)
      acc[i + j] += static_cast<std::uint64_t>(a.coeffs_[i]) * b.coeffs_[j];
  }
  std::vector<std::uint32_t> c(s);
  for (std::size_t k = 0; k < s; ++k) c[k] = static_cast<std::uint32_t>(acc[k] % a.p_);
  return TruncPoly(a.p_, std::move(c));
}

std::strong_ordering operator<=>(const TruncPoly& a, const TruncPoly& b) {
  if (auto c = a.p_ <=> b.p_; c != 0) return c;
  if (auto c = a.coeffs_.size() <=> b.coeffs_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.coeffs_.rbegin(), a.coeffs_.rend(),
                                                b.coeffs_.rbegin(), b.coeffs_.rend());
}

TruncPoly TruncPoly::inverse() const {
  if (!is_unit()) throw ParameterError(to_string() + " is not a unit");
  // c0^{-1} by Fermat, then solve (a*b)_k = 0 for k >= 1 degree by degree.
  std::uint64_t inv0 = 1, base = coeffs_[0], e = p_ - 2;
  while (e) {
    if (e & 1) inv0 = inv0 * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  const std::size_t s = coeffs_.size();
  std::vector<std::uint32_t> b(s, 0);
  b[0] = static_cast<std::uint32_t>(inv0);
  for (std::size_t k = 1; k < s; ++k) {
    std::uint64_t acc = 0;
    for (std::size_t i = 1; i <= k; ++i) acc += static_cast<std::uint64_t>(coeffs_[i]) * b[k - i];
    acc %= p_;
    b[k] = static_cast<std::uint32_t>((p_ - acc) % p_ * inv0 % p_);
  }
  return TruncPoly(p_, std::move(b));
}

TruncPoly TruncPoly::with_precision(std::uint32_t new_s) const {
  if (new_s == 0) throw ParameterError("truncation exponent must be positive");
  std::vector<std::uint32_t> c(new_s, 0);
  std::copy_n(coeffs_.begin(), std::min<std::size_t>(new_s, coeffs_.size()), c.begin());
  return TruncPoly(p_, std::move(c));
}

std::uint64_t TruncPoly::pack() const {
  std::uint64_t code = 0;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    if (code > (std::numeric_limits<std::uint64_t>::max() - coeffs_[k]) / p_)
      throw ParameterError("polynomial does not fit a 64-bit packed code");
    code = code * p_ + coeffs_[k];
  }
  return code;
}

TruncPoly TruncPoly::unpack(std::uint32_t p, std::uint32_t s, std::uint64_t code) {
  TruncPoly r(p, s);
  for (std::uint32_t k = 0; k < s; ++k) {
    r.coeffs_[k] = static_cast<std::uint32_t>(code % p);
    code /= p;
  }
  if (code != 0) throw InputError("packed code out of range for p^s");
  return r;
}

std::string TruncPoly::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const std::uint32_t c = coeffs_[k];
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    if (k == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c) + "*";
    out += 't';
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

std::string TruncPoly::to_compact() const {
  std::string out = "[";
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(coeffs_[k]);
  }
  return out + "]@" + std::to_string(p_) + "," + std::to_string(coeffs_.size());
}

TruncPoly poly_add(const TruncPoly& a, const TruncPoly& b) { return a + b; }
TruncPoly poly_mul(const TruncPoly& a, const TruncPoly& b) { return a * b; }
int poly_deg(const TruncPoly& a) { return a.degree(); }

std::vector<TruncPoly> enumerate_polys(std::uint32_t p, std::uint32_t s, int dmax) {
  check_params(p, s);
  if (dmax < 0 || static_cast<std::uint32_t>(dmax) >= s)
    throw ParameterError("degree bound " + std::to_string(dmax) + " outside [0, s)");
  std::vector<TruncPoly> out;
  std::vector<std::int64_t> digits(static_cast<std::size_t>(dmax) + 1, 0);
  while (true) {
    out.emplace_back(p, s, std::span<const std::int64_t>(digits));
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == static_cast<std::int64_t>(p)) digits[k++] = 0;
    if (k == digits.size()) break;
  }
  return out;
}

namespace {

std::uint64_t parse_uint(std::string_view text, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw InputError("bad " + std::string(what) + ": '" + std::string(text) + "'");
  return v;
}

} // namespace

TruncPoly parse_poly(std::string_view text, std::uint32_t p, std::uint32_t s) {
  std::string clean;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) clean += ch;
  if (clean.empty()) throw InputError("empty polynomial");
  std::vector<std::int64_t> coeffs(s, 0);
  std::size_t pos = 0;
  while (pos <= clean.size()) {
    std::size_t next = clean.find('+', pos);
    if (next == std::string::npos) next = clean.size();
    std::string_view term(clean.data() + pos, next - pos);
    if (term.empty()) throw InputError("empty term in '" + clean + "'");
    std::int64_t c = 1;
    std::uint64_t k = 0;
    const std::size_t tpos = term.find('t');
    if (tpos == std::string_view::npos) {
      c = static_cast<std::int64_t>(parse_uint(term, "coefficient") % p);
    } else {
      if (tpos > 0) {
        if (term[tpos - 1] != '*') throw InputError("expected '*' before t in '" + std::string(term) + "'");
        c = static_cast<std::int64_t>(parse_uint(term.substr(0, tpos - 1), "coefficient") % p);
      }
      std::string_view rest = term.substr(tpos + 1);
      if (rest.empty()) {
        k = 1;
      } else {
        if (rest[0] != '^') throw InputError("expected '^' after t in '" + std::string(term) + "'");
        k = parse_uint(rest.substr(1), "exponent");
      }
    }
    if (k < s) coeffs[k] += c;
    pos = next + 1;
  }
  return TruncPoly(p, s, std::span<const std::int64_t>(coeffs));
}

TruncPoly parse_compact(std::string_view text) {
  const std::size_t close = text.find("]@");
  if (text.empty() || text.front() != '[' || close == std::string_view::npos)
    throw InputError("compact polynomial must look like [c0,c1,...]@p,s");
  std::string_view body = text.substr(1, close - 1);
  std::string_view params = text.substr(close + 2);
  const std::size_t comma = params.find(',');
  if (comma == std::string_view::npos) throw InputError("missing ',s' in compact polynomial");
  const auto p = static_cast<std::uint32_t>(parse_uint(params.substr(0, comma), "modulus"));
  const auto s = static_cast<std::uint32_t>(parse_uint(params.substr(comma + 1), "truncation"));
  std::vector<std::int64_t> coeffs;
  std::size_t pos = 0;
  while (pos <= body.size() && !body.empty()) {
    std::size_t next = body.find(',', pos);
    if (next == std::string_view::npos) next = body.size();
    const std::uint64_t c = parse_uint(body.substr(pos, next - pos), "coefficient");
    if (c >= p) throw InputError("coefficient " + std::to_string(c) + " not reduced mod p");
    coeffs.push_back(static_cast<std::int64_t>(c));
    pos = next + 1;
  }
  if (coeffs.size() != s) throw InputError("compact polynomial must list exactly s coefficients");
  return TruncPoly(p, s, std::span<const std::int64_t>(coeffs));
}

} // namespace hdx
