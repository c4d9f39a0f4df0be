#pragma once

#include "eiscong/bigrat.hpp"

#include <cstdint>
#include <ostream>

namespace eiscong {

/// Element of the prime field F_p, p < 2^62.
class Fp {
public:
    Fp() = default;
    Fp(std::int64_t value, std::uint64_t p);
    Fp(const BigInt& value, std::uint64_t p);

    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    Fp operator+(Fp o) const;
    Fp operator-(Fp o) const;
    Fp operator*(Fp o) const;
    Fp operator-() const;
    Fp pow(std::uint64_t e) const;
    /// Throws NotLIntegral on zero.
    Fp inverse() const;

    Fp& operator+=(Fp o) { return *this = *this + o; }
    Fp& operator*=(Fp o) { return *this = *this * o; }

    friend bool operator==(Fp a, Fp b) { return a.p_ == b.p_ && a.v_ == b.v_; }
    friend std::ostream& operator<<(std::ostream& os, Fp x) { return os << x.v_; }

private:
    std::uint64_t p_ = 2;
    std::uint64_t v_ = 0;
};

/// True iff ell divides the numerator of the reduced fraction x.
bool ell_divides(const BigRat& x, std::uint64_t ell);
bool ell_divides(const BigInt& x, std::uint64_t ell);

/// num(x) * den(x)^-1 in F_ell; throws NotLIntegral if ell | den(x).
Fp rational_residue(const BigRat& x, std::uint64_t ell);

}  // namespace eiscong
