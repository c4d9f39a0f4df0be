#include "eiscong/eisenstein.hpp"

#include "eiscong/arith.hpp"
#include "eiscong/bernoulli.hpp"
#include "eiscong/errors.hpp"
#include "eiscong/residue.hpp"

#include <string>

namespace eiscong {

namespace {

void check_weight(std::int64_t k) {
    if (k < 2 || k % 2 != 0) throw PreconditionError("weight must be even and >= 2, got " + std::to_string(k));
}

void check_nmax(std::int64_t n_max) {
    if (n_max < 0) throw PreconditionError("n_max must be non-negative");
}

auto half_weight(std::int64_t k) { return static_cast<unsigned long>(k / 2); }

// Accumulates sum over divisors d of N selected by `use` of
// eps(d) d^{k/2} sigma_{k-1}(n/d) into out[n], n = 1..n_max.
template <typename Pred>
void add_divisor_terms(std::vector<BigInt>& out, std::int64_t k, const ALEigensystem& eps,
                       const std::vector<BigInt>& sig, Pred use) {
    auto n_max = static_cast<std::int64_t>(out.size()) - 1;
    for (auto d : divisors(eps.level())) {
        if (!use(d)) continue;
        BigInt w = ipow(d, half_weight(k));
        if (eps.value(d) < 0) w = -w;
        for (std::int64_t n = d, m = 1; n <= n_max; n += d, ++m)
            out[static_cast<std::size_t>(n)] += w * sig[static_cast<std::size_t>(m)];
    }
}

QExpansion make(std::int64_t k, const ALEigensystem& eps, BigRat a0, const std::vector<BigInt>& body) {
    QExpansion f;
    f.weight = k;
    f.level = eps.level();
    f.eigensystem = eps;
    f.coeffs.reserve(body.size());
    f.coeffs.push_back(std::move(a0));
    for (std::size_t n = 1; n < body.size(); ++n) f.coeffs.emplace_back(body[n]);
    return f;
}

}  // namespace

ModQExpansion reduce_mod(const QExpansion& f, std::uint64_t ell) {
    ModQExpansion out;
    out.modulus = ell;
    out.weight = f.weight;
    out.level = f.level;
    out.coeffs.reserve(f.coeffs.size());
    for (std::size_t n = 0; n < f.coeffs.size(); ++n) {
        if (ell_divides(f.coeffs[n].den(), ell)) {
            throw NotLIntegral("coefficient a(" + std::to_string(n) + ") = " + f.coeffs[n].to_string() +
                                   " is not " + std::to_string(ell) + "-integral",
                               static_cast<std::int64_t>(n));
        }
        out.coeffs.push_back(rational_residue(f.coeffs[n], ell).value());
    }
    return out;
}

QExpansion eisenstein_level1(std::int64_t k, std::int64_t n_max) {
    check_weight(k);
    check_nmax(n_max);
    auto sig = sigma_table(n_max, static_cast<unsigned>(k - 1));
    QExpansion f;
    f.weight = k;
    f.level = 1;
    f.coeffs.reserve(sig.size());
    f.coeffs.push_back(-bernoulli_over_2k(k));
    for (std::size_t n = 1; n < sig.size(); ++n) f.coeffs.emplace_back(sig[n]);
    return f;
}

BigInt al_euler_product(std::int64_t k, const ALEigensystem& eps) {
    BigInt prod = 1;
    for (auto [p, s] : eps.signs()) prod *= 1 + s * ipow(p, half_weight(k));
    return prod;
}

QExpansion eisenstein_eps(std::int64_t k, const ALEigensystem& eps, std::int64_t n_max) {
    check_weight(k);
    check_nmax(n_max);
    if (k == 2 && eps.all_plus())
        throw Weight2NotCuspidalAtInfinity("weight 2 requires eps(p) = -1 for some p | N");
    auto sig = sigma_table(n_max, static_cast<unsigned>(k - 1));
    std::vector<BigInt> body(static_cast<std::size_t>(n_max) + 1);
    add_divisor_terms(body, k, eps, sig, [](std::int64_t) { return true; });
    return make(k, eps, -bernoulli_over_2k(k) * BigRat(al_euler_product(k, eps)), body);
}

BigRat cusp_constant_term(std::int64_t k, const ALEigensystem& eps, std::int64_t cusp_m) {
    check_weight(k);
    auto n = eps.level();
    if (cusp_m < 1 || n % cusp_m != 0)
        throw PreconditionError("cusp 1/M requires M | N; got M = " + std::to_string(cusp_m));
    auto cofactor = n / cusp_m;
    BigRat ratio(ipow(cusp_m, half_weight(k)), ipow(n, half_weight(k)));
    return -bernoulli_over_2k(k) * BigRat(eps.value(cofactor)) * ratio * BigRat(al_euler_product(k, eps));
}

BigInt up_eigen_factor(std::int64_t k, int sign, std::int64_t p) {
    return (1 + sign * ipow(p, half_weight(k))) * (1 + sign * ipow(p, half_weight(k) - 1));
}

BigInt up_eigenvalue(std::int64_t k, int sign, std::int64_t p) { return -sign * ipow(p, half_weight(k) - 1); }

QExpansion up_action(std::int64_t k, const ALEigensystem& eps, std::int64_t p, std::int64_t n_max) {
    check_weight(k);
    if (n_max < 1) throw PreconditionError("up_action requires n_max >= 1");
    if (p < 2 || eps.level() % p != 0 || !is_prime(p))
        throw PreconditionError("U_p requires a prime p dividing N; got p = " + std::to_string(p));
    auto a = eisenstein_eps(k, eps, n_max);
    auto sig = sigma_table(n_max, static_cast<unsigned>(k - 1));
    std::vector<BigInt> tail(static_cast<std::size_t>(n_max) + 1);
    add_divisor_terms(tail, k, eps, sig, [p](std::int64_t d) { return d % p == 0; });

    int s = eps.sign(p);
    BigInt scale = 1 + ipow(p, static_cast<unsigned long>(k - 1)) + s * ipow(p, half_weight(k));
    BigInt correction = up_eigen_factor(k, s, p);
    std::vector<BigInt> body(tail.size());
    for (std::size_t n = 1; n < body.size(); ++n) body[n] = scale * a.coeffs[n].num() - correction * tail[n];
    return make(k, eps, a.coeffs[0], body);
}

bool is_up_eigen_mod(std::int64_t k, const ALEigensystem& eps, std::int64_t p, std::uint64_t ell,
                     std::int64_t n_max) {
    if (ell < 3 || !is_prime(static_cast<std::int64_t>(ell)))
        throw PreconditionError("is_up_eigen_mod requires an odd prime ell");
    if (eps.level() % static_cast<std::int64_t>(ell) == 0)
        throw PreconditionError("is_up_eigen_mod requires ell not dividing N");
    auto f = reduce_mod(eisenstein_eps(k, eps, n_max), ell);
    auto g = reduce_mod(up_action(k, eps, p, n_max), ell);
    Fp lambda(up_eigenvalue(k, eps.sign(p), p), ell);
    for (std::size_t n = 0; n < f.coeffs.size(); ++n)
        if (Fp(static_cast<std::int64_t>(g.coeffs[n]), ell) != lambda * Fp(static_cast<std::int64_t>(f.coeffs[n]), ell))
            return false;
    return true;
}

}  // namespace eiscong
