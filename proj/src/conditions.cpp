#include "eiscong/conditions.hpp"

#include "eiscong/arith.hpp"
#include "eiscong/bernoulli.hpp"
#include "eiscong/errors.hpp"

#include <mpfr.h>

#include <numeric>

namespace eiscong {

namespace {

auto uell(std::int64_t ell) { return static_cast<std::uint64_t>(ell); }

BigInt one_plus(int sign, std::int64_t base, std::int64_t exponent) {
    return 1 + sign * ipow(base, static_cast<unsigned long>(exponent));
}

Clause divides(std::string name, std::int64_t ell, const BigRat& x) {
    return {std::move(name), ell_divides(x, uell(ell)), x};
}

Clause not_divides(std::string name, std::int64_t ell, const BigRat& x) {
    return {std::move(name), !ell_divides(x, uell(ell)), x};
}

Clause flag(std::string name, bool holds, BigRat witness) { return {std::move(name), holds, std::move(witness)}; }

void require_even_weight(std::int64_t k) {
    if (k < 2 || k % 2 != 0) throw PreconditionError("weight must be even and >= 2, got " + std::to_string(k));
}

void require_prime(std::int64_t n, const char* what) {
    if (!is_prime(n)) throw PreconditionError(std::string(what) + " = " + std::to_string(n) + " is not prime");
}

// eps restricted to exactly {p, q}, or an error naming the mismatch.
void require_pair_level(const ALEigensystem& eps, std::int64_t p, std::int64_t q) {
    if (p == q || eps.level() != p * q)
        throw PreconditionError("eigensystem level " + std::to_string(eps.level()) + " is not p*q = " +
                                std::to_string(p) + "*" + std::to_string(q) + " with p != q");
}

}  // namespace

bool ConditionReport::overall() const {
    for (const auto& c : clauses)
        if (!c.holds) return false;
    return true;
}

const Clause* ConditionReport::find(const std::string& name) const {
    for (const auto& c : clauses)
        if (c.name == name) return &c;
    for (const auto& c : implied)
        if (c.name == name) return &c;
    return nullptr;
}

ConditionReport congruence_conditions(std::int64_t k, std::int64_t ell, const ALEigensystem& eps) {
    require_even_weight(k);
    require_prime(ell, "ell");
    ConditionReport report;
    if (k < 4) report.notes.push_back("outside regime: k < 4");
    if (ell <= k + 1) report.notes.push_back("outside regime: ell <= k+1");
    if (eps.level() % ell == 0) report.notes.push_back("outside regime: ell divides N");

    BigRat global = bernoulli_over_2k(k);
    for (auto [p, s] : eps.signs()) global *= BigRat(one_plus(s, p, k / 2));
    report.clauses.push_back(divides("ell | B_k/2k * prod(1+eps(p)p^(k/2))", ell, global));
    for (auto [p, s] : eps.signs()) {
        BigInt w = one_plus(s, p, k / 2) * one_plus(s, p, k / 2 - 1);
        report.clauses.push_back(
            divides("ell | (1+eps(" + std::to_string(p) + ")" + std::to_string(p) + "^(k/2))(1+eps(" +
                        std::to_string(p) + ")" + std::to_string(p) + "^(k/2-1))",
                    ell, BigRat(w)));
    }
    return report;
}

ConditionReport extended_level_hypotheses(std::int64_t k, std::int64_t ell, std::int64_t p, std::int64_t level_n,
                                     const ALEigensystem& eps, int r) {
    require_even_weight(k);
    if (level_n < 2 || !is_squarefree(level_n))
        throw PreconditionError("N must be squarefree and > 1, got " + std::to_string(level_n));
    if (eps.level() != level_n * p || level_n % p == 0)
        throw PreconditionError("eigensystem level must be N*p with p not dividing N");
    auto primes = prime_divisors(level_n);
    if (r < 1 || r > static_cast<int>(primes.size()))
        throw PreconditionError("r must index a prime of N (1.." + std::to_string(primes.size()) + ")");
    auto pr = primes[static_cast<std::size_t>(r - 1)];

    ConditionReport report;
    bool distinct = is_prime(p) && is_prime(ell) && level_n % ell != 0 && ell != p;
    report.clauses.push_back(flag("p, ell, p_1..p_t distinct primes", distinct, BigRat(ell)));
    report.clauses.push_back(flag("ell >= max(5, k-1)", ell >= std::max<std::int64_t>(5, k - 1), BigRat(ell)));
    report.clauses.push_back(flag("ell != k+1", ell != k + 1, BigRat(ell)));

    BigRat excluded = bernoulli_over_2k(k) * BigRat(euler_phi(level_n * p));
    std::string name = "ell does not divide B_k/2k * phi(Np)";
    if (k != 2) {
        excluded *= BigRat(pr + 1);
        name += " * (p_r+1)";
    } else {
        report.notes.push_back("k = 2: the (p_r+1) condition is dropped");
    }
    report.clauses.push_back(not_divides(name, ell, excluded));
    report.clauses.push_back(divides("ell | 1+eps(p)p^(k/2)", ell, BigRat(one_plus(eps.sign(p), p, k / 2))));
    for (auto pi : primes)
        report.clauses.push_back(divides("ell | 1+eps(" + std::to_string(pi) + ")" + std::to_string(pi) + "^(k/2-1)", ell,
                                         BigRat(one_plus(eps.sign(pi), pi, k / 2 - 1))));
    return report;
}

ConditionReport pair_existence_hypotheses(std::int64_t k, std::int64_t ell, std::int64_t p, std::int64_t q,
                                     const ALEigensystem& eps) {
    require_even_weight(k);
    require_pair_level(eps, p, q);
    ConditionReport report;
    bool distinct = is_prime(p) && is_prime(q) && is_prime(ell) && ell != p && ell != q;
    report.clauses.push_back(flag("p, q, ell distinct primes", distinct, BigRat(ell)));
    report.clauses.push_back(flag("ell >= max(5, k-1)", ell >= std::max<std::int64_t>(5, k - 1), BigRat(ell)));
    report.clauses.push_back(flag("ell != k+1", ell != k + 1, BigRat(ell)));
    BigRat excluded = bernoulli_over_2k(k) * BigRat(euler_phi(p * q));
    if (k != 2) {
        excluded *= BigRat(q + 1);
        report.clauses.push_back(not_divides("ell does not divide B_k/2k * phi(pq) * (q+1)", ell, excluded));
    } else {
        report.clauses.push_back(not_divides("ell does not divide B_k/2k * phi(pq)", ell, excluded));
        report.notes.push_back("k = 2: the (q+1) condition is dropped");
        bool forced = eps.sign(p) == 1 && eps.sign(q) == -1;
        report.clauses.push_back(flag("k = 2 forces eps(p) = +1, eps(q) = -1", forced, BigRat(eps.sign(q))));
    }
    report.clauses.push_back(divides("ell | 1+eps(p)p^(k/2)", ell, BigRat(one_plus(eps.sign(p), p, k / 2))));
    report.clauses.push_back(divides("ell | 1+eps(q)q^(k/2-1)", ell, BigRat(one_plus(eps.sign(q), q, k / 2 - 1))));
    return report;
}

ConditionReport pair_converse_hypotheses(std::int64_t k, std::int64_t ell, std::int64_t q, const ALEigensystem& eps) {
    require_even_weight(k);
    if (q < 2 || eps.level() % q != 0)
        throw PreconditionError(std::to_string(q) + " does not divide the eigensystem level");
    auto p = eps.level() / q;
    require_pair_level(eps, p, q);
    ConditionReport report;
    bool distinct = is_prime(p) && is_prime(q) && is_prime(ell) && ell != p && ell != q;
    report.clauses.push_back(flag("p, q, ell distinct primes", distinct, BigRat(ell)));
    report.clauses.push_back(not_divides("ell does not divide B_k/2k * (1+eps(q)q^(k/2))", ell,
                                         bernoulli_over_2k(k) * BigRat(one_plus(eps.sign(q), q, k / 2))));
    if (k == 2) report.clauses.push_back(flag("k = 2 requires eps(q) = -1", eps.sign(q) == -1, BigRat(eps.sign(q))));
    report.implied.push_back(divides("ell | 1+eps(p)p^(k/2)", ell, BigRat(one_plus(eps.sign(p), p, k / 2))));
    report.implied.push_back(divides("ell | 1+eps(q)q^(k/2-1)", ell, BigRat(one_plus(eps.sign(q), q, k / 2 - 1))));
    return report;
}

std::vector<VacuityItem> vacuous_conditions(std::int64_t k, std::int64_t ell, std::int64_t p, std::int64_t q,
                                        const ALEigensystem& eps) {
    require_even_weight(k);
    require_pair_level(eps, p, q);
    auto ue = uell(ell);
    bool divis = ell_divides(one_plus(eps.sign(p), p, k / 2), ue) && ell_divides(one_plus(eps.sign(q), q, k / 2 - 1), ue);
    auto nd = [&](std::int64_t x) { return !ell_divides(BigInt(x), ue); };
    return {
        {"ell does not divide q-1", divis && eps.sign(q) == 1, nd(q - 1)},
        {"ell does not divide p-1", divis && eps.sign(p) == 1, nd(p - 1)},
        {"ell does not divide q^2-1", divis && eps.sign(q) == 1 && k % 4 == 2, nd(q * q - 1)},
        {"ell does not divide q+1", divis && eps.sign(q) == -1 && k % 4 == 0, nd(q + 1)},
    };
}

std::optional<int> pair_congruence_case(std::int64_t k, std::int64_t ell, std::int64_t p, std::int64_t q,
                                    const ALEigensystem& eps) {
    require_even_weight(k);
    require_pair_level(eps, p, q);
    auto ue = uell(ell);
    if (ell_divides(bernoulli_over_2k(k) * BigRat(one_plus(eps.sign(q), q, k / 2)), ue)) return std::nullopt;
    int sp = eps.sign(p), sq = eps.sign(q);
    if (sp == 1 && sq == 1 && !ell_divides(BigInt(q + 1), ue)) return 1;
    if (k % 4 == 2 && sp == 1 && sq == 1) return 2;
    if (k % 4 == 0 && sq == -1 && !ell_divides(BigInt(euler_phi(p * q)), ue)) return 3;
    return std::nullopt;
}

bool mazur_criterion(std::int64_t ell, std::int64_t p) {
    require_prime(ell, "ell");
    require_prime(p, "p");
    return ell_divides(BigRat(BigInt(p - 1), BigInt(12)), uell(ell));
}

bool ribet_optimal(std::int64_t k, std::int64_t ell) {
    if (k < 4 || k % 2 != 0) throw PreconditionError("ribet_optimal requires even k >= 4");
    require_prime(ell, "ell");
    if (ell <= k + 1) throw PreconditionError("ribet_optimal requires ell > k+1");
    return ell_divides(bernoulli_over_2k(k), uell(ell));
}

bool level_raising_check(Fp a_p, std::int64_t p, std::int64_t k, std::int64_t ell) {
    require_even_weight(k);
    require_prime(ell, "ell");
    if (a_p.modulus() != uell(ell)) throw PreconditionError("a_p is not an element of F_ell");
    Fp pp(p, uell(ell));
    Fp rhs = pp.pow(static_cast<std::uint64_t>(k - 2)) * (Fp(1, uell(ell)) + pp).pow(2);
    return a_p * a_p == rhs;
}

AdmissibilityVerdict admissibility(std::int64_t k, std::int64_t ell, std::int64_t p, std::int64_t q, int s) {
    require_even_weight(k);
    if (s < 0 || s > 2) throw PreconditionError("s must be 0, 1 or 2");
    if (ell < 5 || !is_prime(ell)) throw PreconditionError("admissibility requires a prime ell >= 5");
    if (!is_prime(p) || !is_prime(q) || p == q || p == ell || q == ell)
        throw PreconditionError("p, q, ell must be distinct primes");
    if (ell_divides(bernoulli_over_2k(k), uell(ell)))
        throw PreconditionError("admissibility requires ell not dividing B_k/2k");

    AdmissibilityVerdict v;
    v.s = s;
    auto ue = uell(ell);
    auto nd = [&](const BigInt& x) { return !ell_divides(x, ue); };
    auto h = k / 2;

    auto fill_necessary = [&] {
        ALEigensystem eps(p * q, {{p, v.sign_p}, {q, v.sign_q}});
        v.necessary = pair_converse_hypotheses(k, ell, q, eps);
        v.necessary_applicable = v.necessary.overall();
        v.necessary_met = v.necessary.implied[0].holds && v.necessary.implied[1].holds;
    };

    if (k == 2) {
        if (s != 1) {
            v.sign_p = v.sign_q = s == 0 ? 1 : -1;
            fill_necessary();
            v.notes.push_back("weight 2: only s = 1 (eps(q) = -1, eps(p) = +1) is characterized");
            return v;
        }
        v.sign_p = 1;
        v.sign_q = -1;
        fill_necessary();
        v.sufficient.clauses.push_back(divides("ell | 1+p", ell, BigRat(p + 1)));
        v.sufficient_met = v.sufficient.overall();
        BigInt assumption = BigInt(euler_phi(p * q)) * (q + 1);
        v.assumptions_met = nd(assumption);
        v.notes.push_back("weight 2: assumption ell does not divide phi(pq)(q+1)");
        return v;
    }

    v.sign_p = s >= 1 ? -1 : 1;
    v.sign_q = s == 2 ? -1 : 1;
    // Necessary conditions: the converse with these signs.
    fill_necessary();

    // Sufficient conditions, one case per sign pattern.
    BigInt pk = ipow(p, static_cast<unsigned long>(h));
    BigInt qk1 = ipow(q, static_cast<unsigned long>(h - 1));
    if (s == 0) {
        v.sufficient.clauses.push_back(divides("ell | 1+p^(k/2)", ell, BigRat(BigInt(1 + pk))));
        v.sufficient.clauses.push_back(divides("ell | 1+q^(k/2-1)", ell, BigRat(BigInt(1 + qk1))));
    } else if (s == 1) {
        v.sufficient.clauses.push_back(divides("ell | 1-p^(k/2)", ell, BigRat(BigInt(1 - pk))));
        v.sufficient.clauses.push_back(divides("ell | 1+q^(k/2-1)", ell, BigRat(BigInt(1 + qk1))));
    } else {
        v.sufficient.clauses.push_back(divides("ell | 1-p^(k/2)", ell, BigRat(BigInt(1 - pk))));
        v.sufficient.clauses.push_back(divides("ell | 1-q^(k/2-1)", ell, BigRat(BigInt(1 - qk1))));
    }
    v.sufficient_met = v.sufficient.overall();

    bool k0 = k % 4 == 0;
    BigInt cell = 1;
    std::string cell_name;
    if (s == 0) {
        if (k0) cell = q + 1, cell_name = "q+1";
    } else if (s == 1) {
        cell = BigInt(p - 1) * (k0 ? q + 1 : 1);
        cell_name = k0 ? "phi(p)(q+1)" : "phi(p)";
    } else {
        cell = BigInt(euler_phi(p * q)) * (k0 ? 1 : q + 1);
        cell_name = k0 ? "phi(pq)" : "phi(pq)(1+q)";
    }
    bool standing = ell >= k - 1 && ell != k + 1;
    if (!standing) v.notes.push_back("ell < k-1 or ell = k+1: existence criterion does not apply");
    if (cell_name.empty())
        v.notes.push_back("no assumption on ell in this cell");
    else
        v.notes.push_back("assumption: ell does not divide " + cell_name);
    v.assumptions_met = standing && nd(cell);
    return v;
}

double DensitySets::p_fraction() const {
    return prime_count ? static_cast<double>(p_set.size()) / static_cast<double>(prime_count) : 0.0;
}

double DensitySets::q_fraction() const {
    return prime_count ? static_cast<double>(q_set.size()) / static_cast<double>(prime_count) : 0.0;
}

DensitySets density_sets(std::int64_t ell, std::int64_t k, std::int64_t bound) {
    if (ell < 5 || !is_prime(ell)) throw PreconditionError("density sets require a prime ell >= 5");
    if (k != 2 && k != ell + 1) throw PreconditionError("density sets require k = 2 or k = ell+1");
    auto ue = uell(ell);
    auto as_sign = [&](Fp x) {
        if (x == Fp(1, ue)) return 1;
        if (x == Fp(-1, ue)) return -1;
        throw Error("sign rule does not yield +-1 mod ell");
    };
    DensitySets out;
    out.ell = ell;
    out.k = k;
    out.bound = bound;
    out.sign_p = as_sign(-Fp(-1, ue).pow(static_cast<std::uint64_t>(k / 2)));
    out.sign_q_by_class.assign(static_cast<std::size_t>(ell), 0);
    for (std::int64_t c = 2; c <= ell - 2; ++c)
        out.sign_q_by_class[static_cast<std::size_t>(c)] = as_sign(-Fp(c, ue).pow(static_cast<std::uint64_t>(k / 2 - 1)));
    for (auto prime : primes_up_to(bound)) {
        ++out.prime_count;
        auto r = prime % ell;
        if (r == ell - 1)
            out.p_set.push_back(prime);
        else if (r != 1 && prime != ell)
            out.q_set.push_back(prime);
    }
    return out;
}

std::int64_t silver_ratio_exponent(const BigInt& n) {
    if (n <= 1) return 0;
    // (3 + 2 sqrt 2)^d = a + b sqrt 2 lies strictly between 2a - 1 and 2a for d >= 1.
    BigInt a = 1, b = 0;
    for (std::int64_t d = 1;; ++d) {
        BigInt na = 3 * a + 4 * b;
        b = 2 * a + 3 * b;
        a = na;
        if (n <= 2 * a - 1) return d;
    }
}

namespace {

BigRat mpfr_to_rat(const mpfr_t x) {
    BigInt mant;
    mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
    if (e >= 0) return BigRat(BigInt(mant << static_cast<mp_bitcnt_t>(e)));
    BigInt den = 1;
    den <<= static_cast<mp_bitcnt_t>(-e);
    return {mant, den};
}

BigRat eighth_log(const BigInt& n, int bits, mpfr_rnd_t rnd) {
    mpfr_t x;
    mpfr_init2(x, bits);
    mpfr_set_z(x, n.get_mpz_t(), rnd);
    mpfr_log(x, x, rnd);
    mpfr_div_ui(x, x, 8, rnd);
    BigRat out = mpfr_to_rat(x);
    mpfr_clear(x);
    return out;
}

}  // namespace

DegreeBound degree_bound(std::int64_t p, std::int64_t q, int precision_bits) {
    require_prime(p, "p");
    require_prime(q, "q");
    if (p == q) throw PreconditionError("degree_bound requires distinct primes");
    if (precision_bits < 16) throw PreconditionError("precision must be at least 16 bits");
    DegreeBound out;
    out.gcd = std::gcd(p + 1, q + 1);
    auto lpf = largest_prime_factor(out.gcd);
    if (lpf > 1) out.ell = lpf;
    BigInt n = BigInt(p) * q;
    out.ell4_exceeds_level = ipow(lpf, 4) > n;
    out.precision_bits = precision_bits;
    out.log_bound_lower = eighth_log(n, precision_bits, MPFR_RNDD);
    out.log_bound_upper = eighth_log(n, precision_bits, MPFR_RNDU);
    if (out.ell) out.min_degree = silver_ratio_exponent(*out.ell);
    return out;
}

}  // namespace eiscong
