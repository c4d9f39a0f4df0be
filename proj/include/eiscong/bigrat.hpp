#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace eiscong {

using BigInt = mpz_class;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
class BigRat {
public:
    BigRat() = default;
    BigRat(std::int64_t n) : value_(static_cast<long>(n)) {}  // NOLINT: implicit from integers
    BigRat(const BigInt& n) : value_(n) {}                    // NOLINT
    BigRat(const BigInt& num, const BigInt& den);
    explicit BigRat(const mpq_class& q) : value_(q) { value_.canonicalize(); }

    /// Parses "a" or "a/b" in base 10.
    static BigRat parse(const std::string& text);

    BigInt num() const { return value_.get_num(); }
    BigInt den() const { return value_.get_den(); }
    const mpq_class& raw() const { return value_; }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    std::string to_string() const { return value_.get_str(); }

    BigRat operator-() const { return BigRat(mpq_class(-value_)); }
    BigRat& operator+=(const BigRat& o) { value_ += o.value_; return *this; }
    BigRat& operator-=(const BigRat& o) { value_ -= o.value_; return *this; }
    BigRat& operator*=(const BigRat& o) { value_ *= o.value_; return *this; }
    BigRat& operator/=(const BigRat& o);

    friend BigRat operator+(BigRat a, const BigRat& b) { return a += b; }
    friend BigRat operator-(BigRat a, const BigRat& b) { return a -= b; }
    friend BigRat operator*(BigRat a, const BigRat& b) { return a *= b; }
    friend BigRat operator/(BigRat a, const BigRat& b) { return a /= b; }

    friend bool operator==(const BigRat& a, const BigRat& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const BigRat& a, const BigRat& b) {
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const BigRat& x) { return os << x.to_string(); }

private:
    mpq_class value_;
};

BigInt ipow(const BigInt& base, unsigned long exponent);
BigInt ipow(std::int64_t base, unsigned long exponent);

/// Conversion for values known to fit; throws std::overflow_error otherwise.
std::int64_t to_int64(const BigInt& x);

}  // namespace eiscong
