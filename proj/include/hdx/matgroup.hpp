#pragma once

// Matrix groups over F_p[t]/<t^s>: elementary matrices, special linear
// groups, the rotated unitriangular subgroups K_i and congruence kernels.

#include "hdx/group.hpp"

#include <iosfwd>

namespace hdx {

/// Shared law instance for a matrix shape.
std::shared_ptr<const MatrixLaw> matrix_law(std::uint32_t dim, std::uint32_t p, std::uint32_t s);

/// e_{i,j}(r) in SL_{n+1}, 1-based indices.
MatElement elementary(std::uint32_t n, std::uint32_t i, std::uint32_t j, const TruncPoly& r);

/// Images of 1..n+1 under gamma_0^i, where gamma_0(k) = k+1 mod n+1.
std::vector<int> gamma0_power(std::uint32_t n, std::uint32_t i);

/// SL_{n+1}(F_p[t]/t^s) as the closure of all e_{i,j}(t^k).
FiniteGroup special_linear(std::uint32_t n, std::uint32_t p, std::uint32_t s, std::uint64_t cap);

/// K_i = < e_{g(j), g(j+1)}(r) : 1 <= j <= n, deg r <= d >> with g = gamma_0^i.
FiniteGroup subgroup_K(std::uint32_t n, std::uint32_t p, std::uint32_t s, std::uint32_t d,
                       std::uint32_t i, std::uint64_t cap = 1ull << 26);

/// Kernel of SL_{n+1}(F_p[t]/t^s_hi) -> SL_{n+1}(F_p[t]/t^s_lo). Enumerated
/// directly as the matrices I + t^s_lo M of determinant 1, sorted by code.
/// Throws ResourceError when its order p^((m^2-1)(s_hi-s_lo)) exceeds cap.
FiniteGroup reduction_kernel(std::uint32_t n, std::uint32_t p, std::uint32_t s_hi,
                             std::uint32_t s_lo, std::uint64_t cap);

/// Order of the kernel above, or nullopt when it overflows 64 bits.
std::optional<std::uint64_t> reduction_kernel_order(std::uint32_t n, std::uint32_t p,
                                                    std::uint32_t s_hi, std::uint32_t s_lo);

/// Least k >= 1 with m^k = I, for matrices too large to enumerate a group
/// around. Throws ResourceError past cap.
std::uint64_t matrix_order(const MatElement& m, std::uint64_t cap = 1u << 20);

/// Header "n p s |G|" then one hex code per line.
void write_group_dump(std::ostream& os, const FiniteGroup& g, std::uint32_t n, std::uint32_t p,
                      std::uint32_t s);

} // namespace hdx
