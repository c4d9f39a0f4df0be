#include "eiscong/bigrat.hpp"

#include "eiscong/errors.hpp"

#include <stdexcept>

namespace eiscong {

BigRat::BigRat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw PreconditionError("BigRat: zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

BigRat BigRat::parse(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return BigRat(BigInt(text, 10));
        return BigRat(BigInt(text.substr(0, slash), 10), BigInt(text.substr(slash + 1), 10));
    } catch (const std::invalid_argument&) {
        throw ParseError("not a rational number: '" + text + "'");
    }
}

BigRat& BigRat::operator/=(const BigRat& o) {
    if (o.is_zero()) throw PreconditionError("BigRat: division by zero");
    value_ /= o.value_;
    return *this;
}

BigInt ipow(const BigInt& base, unsigned long exponent) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

BigInt ipow(std::int64_t base, unsigned long exponent) {
    return ipow(BigInt(static_cast<long>(base)), exponent);
}

std::int64_t to_int64(const BigInt& x) {
    if (!x.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + x.get_str());
    return x.get_si();
}

}  // namespace eiscong
