#pragma once

#include "eiscong/bigrat.hpp"
#include "eiscong/residue.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace eiscong {

/// Monic integer polynomial, constant term first.
class IntPolynomial {
public:
    /// Throws PreconditionError unless monic of degree >= 1.
    explicit IntPolynomial(std::vector<BigInt> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    const BigInt& operator[](int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }

    std::uint64_t eval_mod(std::uint64_t x, std::uint64_t ell) const;
    std::uint64_t derivative_mod(std::uint64_t x, std::uint64_t ell) const;
    /// Exact discriminant via a fraction-free Sylvester determinant.
    BigInt discriminant() const;
    /// Descending "x^4 - x^3 - 90*x^2 + ..." form.
    std::string to_string(char var = 'x') const;

    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

private:
    std::vector<BigInt> coeffs_;
};

/// Element of Q[a]/(f) written as (numerator polynomial in a) / den with
/// gcd(numerator content, den) = 1 and den > 0.
class NFCoefficient {
public:
    NFCoefficient() : num_{0}, den_(1) {}
    NFCoefficient(std::vector<BigInt> num, BigInt den);
    NFCoefficient(const BigRat& c);  // NOLINT: rationals embed

    const std::vector<BigInt>& num() const { return num_; }
    const BigInt& den() const { return den_; }
    /// Index of the highest nonzero numerator entry; 0 for constants.
    int degree() const { return static_cast<int>(num_.size()) - 1; }
    bool is_rational() const { return num_.size() == 1; }
    BigRat rational_value() const;  // throws unless is_rational()

    /// "(c*a^i + ...)/den" with terms in descending degree.
    std::string to_string() const;
    static NFCoefficient parse(const std::string& text);

    friend bool operator==(const NFCoefficient&, const NFCoefficient&) = default;

private:
    std::vector<BigInt> num_;
    BigInt den_;
};

NFCoefficient nf_add(const NFCoefficient& x, const NFCoefficient& y);
/// Product reduced modulo the defining polynomial.
NFCoefficient nf_mul(const NFCoefficient& x, const NFCoefficient& y, const IntPolynomial& poly);

inline constexpr std::uint64_t kDefaultRootScanCap = 1u << 20;

/// Degree-one prime (ell, a - root) of the field defined by poly.
struct PrimeIdealRep {
    std::uint64_t ell = 0;
    std::uint64_t root = 0;
    std::shared_ptr<const IntPolynomial> poly;
    /// poly'(root) = 0 mod ell: the root is repeated, so ell may ramify or
    /// divide the index and the (ell, a - root) model is not trustworthy.
    bool multiple_root = false;
    bool ell_divides_discriminant = false;

    /// Checks poly(root) = 0 mod ell.
    PrimeIdealRep(std::uint64_t ell, std::uint64_t root, std::shared_ptr<const IntPolynomial> poly);

    std::string to_string() const;  // "(ell, a - root)"
};

/// Roots of poly in F_ell, ascending and distinct, by exhaustive evaluation.
std::vector<std::uint64_t> roots_mod_ell(const IntPolynomial& poly, std::uint64_t ell,
                                         std::uint64_t scan_cap = kDefaultRootScanCap);

/// Throws NoDegreeOnePrime if poly has no root mod ell.
std::vector<PrimeIdealRep> primes_above(std::shared_ptr<const IntPolynomial> poly, std::uint64_t ell,
                                        std::uint64_t scan_cap = kDefaultRootScanCap);

/// numerator(root) * den^-1 in F_ell; NotLIntegral if ell | den.
Fp reduce_coeff(const NFCoefficient& c, const PrimeIdealRep& prime);

}  // namespace eiscong
