#pragma once

#include "eiscong/eigensystem.hpp"
#include "eiscong/qexpansion.hpp"

#include <cstdint>

namespace eiscong {

inline constexpr std::int64_t kDefaultNMax = 200;

/// E_k = -B_k/2k + sum sigma_{k-1}(n) q^n.
QExpansion eisenstein_level1(std::int64_t k, std::int64_t n_max = kDefaultNMax);

/// The twisted series sum_{d | N} eps(d) d^{k/2} E_k(dz).
///
/// a(0) = -B_k/2k * prod_{p | N} (1 + eps(p) p^{k/2}),
/// a(n) = sum_{d | N, d | n} eps(d) d^{k/2} sigma_{k-1}(n/d).
///
/// For k = 2 at least one sign must be -1 (otherwise the combination is not
/// holomorphic at infinity); Weight2NotCuspidalAtInfinity is thrown.
QExpansion eisenstein_eps(std::int64_t k, const ALEigensystem& eps, std::int64_t n_max = kDefaultNMax);

/// prod_{p | N} (1 + eps(p) p^{k/2}) = sum_{d | N} eps(d) d^{k/2}.
BigInt al_euler_product(std::int64_t k, const ALEigensystem& eps);

/// Constant term at the cusp 1/M (M | N):
/// -(B_k/2k) eps(N/M) (M/N)^{k/2} prod (1 + eps(p) p^{k/2}).
BigRat cusp_constant_term(std::int64_t k, const ALEigensystem& eps, std::int64_t cusp_m);

/// U_p image of eisenstein_eps via the closed form
/// b(n) = (1 + p^{k-1} + eps(p) p^{k/2}) a(n)
///        - (1 + eps(p) p^{k/2})(1 + eps(p) p^{k/2-1}) sum_{p | d | N} eps(d) d^{k/2} sigma_{k-1}(n/d),
/// b(0) = a(0).
QExpansion up_action(std::int64_t k, const ALEigensystem& eps, std::int64_t p, std::int64_t n_max = kDefaultNMax);

/// (1 + eps(p) p^{k/2})(1 + eps(p) p^{k/2-1}).
BigInt up_eigen_factor(std::int64_t k, int sign, std::int64_t p);

/// -eps(p) p^{k/2-1}, the expected U_p eigenvalue.
BigInt up_eigenvalue(std::int64_t k, int sign, std::int64_t p);

/// Whether the reduction mod ell is a U_p eigenform with eigenvalue
/// -eps(p) p^{k/2-1}, compared on coefficients 0..n_max.
bool is_up_eigen_mod(std::int64_t k, const ALEigensystem& eps, std::int64_t p, std::uint64_t ell,
                     std::int64_t n_max = kDefaultNMax);

}  // namespace eiscong
