#include "eiscong/residue.hpp"

#include "eiscong/errors.hpp"

namespace eiscong {

namespace {

std::uint64_t reduce(const BigInt& x, std::uint64_t p) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), BigInt(static_cast<unsigned long>(p)).get_mpz_t());
    return r.get_ui();
}

}  // namespace

Fp::Fp(std::int64_t value, std::uint64_t p) : p_(p) {
    auto m = static_cast<std::int64_t>(p);
    auto r = value % m;
    v_ = static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

Fp::Fp(const BigInt& value, std::uint64_t p) : p_(p), v_(reduce(value, p)) {}

Fp Fp::operator+(Fp o) const {
    Fp r = *this;
    r.v_ = (v_ + o.v_) % p_;
    return r;
}

Fp Fp::operator-(Fp o) const {
    Fp r = *this;
    r.v_ = (v_ + p_ - o.v_) % p_;
    return r;
}

Fp Fp::operator*(Fp o) const {
    Fp r = *this;
    r.v_ = static_cast<std::uint64_t>(static_cast<unsigned __int128>(v_) * o.v_ % p_);
    return r;
}

Fp Fp::operator-() const {
    Fp r = *this;
    r.v_ = v_ == 0 ? 0 : p_ - v_;
    return r;
}

Fp Fp::pow(std::uint64_t e) const {
    Fp result(1, p_), base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

Fp Fp::inverse() const {
    if (v_ == 0) throw NotLIntegral("inverse of zero in F_" + std::to_string(p_));
    return pow(p_ - 2);
}

bool ell_divides(const BigInt& x, std::uint64_t ell) {
    return mpz_divisible_ui_p(x.get_mpz_t(), ell) != 0;
}

bool ell_divides(const BigRat& x, std::uint64_t ell) { return ell_divides(x.num(), ell); }

Fp rational_residue(const BigRat& x, std::uint64_t ell) {
    if (ell_divides(x.den(), ell))
        throw NotLIntegral(std::to_string(ell) + " divides the denominator of " + x.to_string());
    return Fp(x.num(), ell) * Fp(x.den(), ell).inverse();
}

}  // namespace eiscong
