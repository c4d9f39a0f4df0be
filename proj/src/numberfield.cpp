#include "eiscong/numberfield.hpp"

#include "eiscong/arith.hpp"
#include "eiscong/errors.hpp"

#include <cctype>
#include <utility>

namespace eiscong {

namespace {

std::uint64_t residue_u64(const BigInt& x, std::uint64_t ell) { return Fp(x, ell).value(); }

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

void trim(std::vector<BigInt>& v) {
    while (v.size() > 1 && v.back() == 0) v.pop_back();
    if (v.empty()) v.emplace_back(0);
}

std::string poly_terms(const std::vector<BigInt>& c, char var) {
    std::string out;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
        const BigInt& v = c[static_cast<std::size_t>(i)];
        if (v == 0) continue;
        BigInt mag = abs(v);
        if (out.empty())
            out += v < 0 ? "-" : "";
        else
            out += v < 0 ? " - " : " + ";
        bool unit = mag == 1 && i > 0;
        if (!unit) out += mag.get_str();
        if (i > 0) {
            if (!unit) out += '*';
            out += var;
            if (i > 1) out += '^' + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

// Determinant of an integer matrix by Bareiss elimination.
BigInt bareiss_det(std::vector<std::vector<BigInt>> m) {
    const auto n = m.size();
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() < 2) throw PreconditionError("defining polynomial must have degree >= 1");
    if (coeffs_.back() != 1) throw PreconditionError("defining polynomial must be monic");
}

std::uint64_t IntPolynomial::eval_mod(std::uint64_t x, std::uint64_t ell) const {
    std::uint64_t acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = (mulmod(acc, x, ell) + residue_u64(*it, ell)) % ell;
    return acc;
}

std::uint64_t IntPolynomial::derivative_mod(std::uint64_t x, std::uint64_t ell) const {
    std::uint64_t acc = 0;
    for (int i = degree(); i >= 1; --i)
        acc = (mulmod(acc, x, ell) + residue_u64(BigInt(coeffs_[static_cast<std::size_t>(i)] * i), ell)) % ell;
    return acc;
}

BigInt IntPolynomial::discriminant() const {
    const int n = degree();
    if (n == 1) return 1;
    std::vector<BigInt> deriv;
    for (int i = 1; i <= n; ++i) deriv.emplace_back(coeffs_[static_cast<std::size_t>(i)] * i);
    // Sylvester matrix of f (n+1 coefficients) and f' (n coefficients), size 2n-1.
    const auto size = static_cast<std::size_t>(2 * n - 1);
    std::vector<std::vector<BigInt>> m(size, std::vector<BigInt>(size, 0));
    for (int r = 0; r < n - 1; ++r)
        for (int i = 0; i <= n; ++i)
            m[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + i)] = coeffs_[static_cast<std::size_t>(n - i)];
    for (int r = 0; r < n; ++r)
        for (int i = 0; i < n; ++i)
            m[static_cast<std::size_t>(n - 1 + r)][static_cast<std::size_t>(r + i)] = deriv[static_cast<std::size_t>(n - 1 - i)];
    BigInt res = bareiss_det(std::move(m));
    return (n * (n - 1) / 2) % 2 == 0 ? res : BigInt(-res);
}

std::string IntPolynomial::to_string(char var) const { return poly_terms(coeffs_, var); }

NFCoefficient::NFCoefficient(std::vector<BigInt> num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw PreconditionError("coefficient denominator is zero");
    if (den_ < 0) {
        den_ = -den_;
        for (auto& c : num_) c = -c;
    }
    trim(num_);
    BigInt g = den_;
    for (const auto& c : num_) g = gcd(g, c);
    if (g != 1) {
        for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
}

NFCoefficient::NFCoefficient(const BigRat& c) : NFCoefficient({c.num()}, c.den()) {}

BigRat NFCoefficient::rational_value() const {
    if (!is_rational()) throw PreconditionError("coefficient " + to_string() + " is not rational");
    return {num_[0], den_};
}

std::string NFCoefficient::to_string() const { return "(" + poly_terms(num_, 'a') + ")/" + den_.get_str(); }

NFCoefficient NFCoefficient::parse(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    auto fail = [&] { return ParseError("malformed coefficient '" + text + "'", "coefficient"); };
    auto close = s.rfind(')');
    if (s.empty() || s.front() != '(' || close == std::string::npos) throw fail();
    BigInt den = 1;
    if (close + 1 < s.size()) {
        if (s[close + 1] != '/' || close + 2 >= s.size()) throw fail();
        if (den.set_str(s.substr(close + 2), 10) != 0) throw fail();
    }
    std::string body = s.substr(1, close - 1);
    std::vector<BigInt> num(1, 0);
    std::size_t pos = 0;
    while (pos < body.size()) {
        int sign = 1;
        if (body[pos] == '+' || body[pos] == '-') {
            sign = body[pos] == '-' ? -1 : 1;
            ++pos;
        }
        std::size_t end = body.find_first_of("+-", pos);
        std::string term = body.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        pos = end == std::string::npos ? body.size() : end;
        if (term.empty()) throw fail();
        BigInt c = 1;
        std::size_t exp = 0;
        auto apos = term.find('a');
        std::string cpart = apos == std::string::npos ? term : term.substr(0, apos);
        if (apos != std::string::npos) {
            if (!cpart.empty()) {
                if (cpart.back() != '*') throw fail();
                cpart.pop_back();
            }
            std::string rest = term.substr(apos + 1);
            if (rest.empty())
                exp = 1;
            else if (rest[0] == '^' && rest.size() > 1 && rest.find_first_not_of("0123456789", 1) == std::string::npos)
                exp = std::stoul(rest.substr(1));
            else
                throw fail();
        }
        if (!cpart.empty() && c.set_str(cpart, 10) != 0) throw fail();
        if (apos == std::string::npos && cpart.empty()) throw fail();
        if (num.size() <= exp) num.resize(exp + 1, 0);
        num[exp] += sign * c;
    }
    return {std::move(num), std::move(den)};
}

NFCoefficient nf_add(const NFCoefficient& x, const NFCoefficient& y) {
    std::vector<BigInt> num(std::max(x.num().size(), y.num().size()), 0);
    for (std::size_t i = 0; i < x.num().size(); ++i) num[i] += x.num()[i] * y.den();
    for (std::size_t i = 0; i < y.num().size(); ++i) num[i] += y.num()[i] * x.den();
    return {std::move(num), x.den() * y.den()};
}

NFCoefficient nf_mul(const NFCoefficient& x, const NFCoefficient& y, const IntPolynomial& poly) {
    std::vector<BigInt> num(x.num().size() + y.num().size() - 1, 0);
    for (std::size_t i = 0; i < x.num().size(); ++i)
        for (std::size_t j = 0; j < y.num().size(); ++j) num[i + j] += x.num()[i] * y.num()[j];
    const auto n = static_cast<std::size_t>(poly.degree());
    for (std::size_t top = num.size(); top-- > n;) {
        BigInt lead = num[top];
        if (lead == 0) continue;
        for (std::size_t i = 0; i <= n; ++i) num[top - n + i] -= lead * poly.coeffs()[i];
    }
    if (num.size() > n) num.resize(n);
    return {std::move(num), x.den() * y.den()};
}

PrimeIdealRep::PrimeIdealRep(std::uint64_t ell_, std::uint64_t root_, std::shared_ptr<const IntPolynomial> poly_)
    : ell(ell_), root(root_), poly(std::move(poly_)) {
    if (!poly) throw PreconditionError("prime ideal needs a defining polynomial");
    if (root >= ell || poly->eval_mod(root, ell) != 0)
        throw PreconditionError(std::to_string(root) + " is not a root of the defining polynomial mod " +
                                std::to_string(ell));
    multiple_root = poly->derivative_mod(root, ell) == 0;
}

std::string PrimeIdealRep::to_string() const {
    return "(" + std::to_string(ell) + ", a - " + std::to_string(root) + ")";
}

std::vector<std::uint64_t> roots_mod_ell(const IntPolynomial& poly, std::uint64_t ell, std::uint64_t scan_cap) {
    if (!is_prime(static_cast<std::int64_t>(ell))) throw PreconditionError(std::to_string(ell) + " is not prime");
    if (ell > scan_cap)
        throw ResourceError("root scan mod " + std::to_string(ell) + " exceeds cap " + std::to_string(scan_cap));
    std::vector<std::uint64_t> reduced;
    for (const auto& c : poly.coeffs()) reduced.push_back(residue_u64(c, ell));
    std::vector<std::uint64_t> roots;
    for (std::uint64_t r = 0; r < ell; ++r) {
        std::uint64_t acc = 0;
        for (auto it = reduced.rbegin(); it != reduced.rend(); ++it) acc = (mulmod(acc, r, ell) + *it) % ell;
        if (acc == 0) roots.push_back(r);
    }
    return roots;
}

std::vector<PrimeIdealRep> primes_above(std::shared_ptr<const IntPolynomial> poly, std::uint64_t ell,
                                        std::uint64_t scan_cap) {
    if (!poly) throw PreconditionError("primes_above needs a defining polynomial");
    auto roots = roots_mod_ell(*poly, ell, scan_cap);
    if (roots.empty())
        throw NoDegreeOnePrime(poly->to_string() + " has no root mod " + std::to_string(ell));
    bool disc_divisible = ell_divides(poly->discriminant(), ell);
    std::vector<PrimeIdealRep> out;
    for (auto r : roots) {
        PrimeIdealRep rep(ell, r, poly);
        rep.ell_divides_discriminant = disc_divisible;
        out.push_back(std::move(rep));
    }
    return out;
}

Fp reduce_coeff(const NFCoefficient& c, const PrimeIdealRep& prime) {
    const auto ell = prime.ell;
    if (ell_divides(c.den(), ell))
        throw NotLIntegral("coefficient " + c.to_string() + " has " + std::to_string(ell) + " in its denominator");
    Fp x(static_cast<std::int64_t>(prime.root), ell);
    Fp acc(0, ell);
    for (auto it = c.num().rbegin(); it != c.num().rend(); ++it) acc = acc * x + Fp(*it, ell);
    return acc * Fp(c.den(), ell).inverse();
}

}  // namespace eiscong
