#include "eiscong/arith.hpp"

#include "eiscong/errors.hpp"

#include <algorithm>
#include <string>

namespace eiscong {

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (std::int64_t d = 5; d * d <= n; d += 6)
        if (n % d == 0 || n % (d + 2) == 0) return false;
    return true;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    if (n < 1) throw PreconditionError("factorize: n must be positive, got " + std::to_string(n));
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (auto [p, e] : factorize(n)) out.push_back(p);
    return out;
}

bool is_squarefree(std::int64_t n) {
    auto f = factorize(n);
    return std::all_of(f.begin(), f.end(), [](auto pe) { return pe.second == 1; });
}

std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> out{1};
    for (auto [p, e] : factorize(n)) {
        auto size = out.size();
        std::int64_t pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < size; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t euler_phi(std::int64_t n) {
    std::int64_t phi = 1;
    for (auto [p, e] : factorize(n)) {
        phi *= p - 1;
        for (int i = 1; i < e; ++i) phi *= p;
    }
    return phi;
}

std::int64_t largest_prime_factor(std::int64_t n) {
    auto f = factorize(n);
    return f.empty() ? 1 : f.back().first;
}

BigInt sigma(std::int64_t n, unsigned e) {
    if (n < 1) throw PreconditionError("sigma: n must be positive");
    BigInt total = 1;
    for (auto [p, a] : factorize(n)) {
        BigInt pe = ipow(p, e), term = 1, acc = 1;
        for (int i = 0; i < a; ++i) {
            term *= pe;
            acc += term;
        }
        total *= acc;
    }
    return total;
}

std::vector<BigInt> sigma_table(std::int64_t n_max, unsigned e) {
    if (n_max < 0) throw PreconditionError("sigma_table: negative bound");
    auto size = static_cast<std::size_t>(n_max) + 1;
    std::vector<std::int64_t> spf(size, 0);
    for (std::int64_t i = 2; i <= n_max; ++i) {
        if (spf[static_cast<std::size_t>(i)] != 0) continue;
        for (std::int64_t j = i; j <= n_max; j += i)
            if (spf[static_cast<std::size_t>(j)] == 0) spf[static_cast<std::size_t>(j)] = i;
    }
    std::vector<BigInt> out(size);
    if (n_max >= 1) out[1] = 1;
    for (std::int64_t n = 2; n <= n_max; ++n) {
        // n = p^a * m with p = spf(n), gcd(p, m) = 1.
        std::int64_t p = spf[static_cast<std::size_t>(n)], m = n;
        BigInt pe = ipow(p, e), term = 1, acc = 1;
        while (m % p == 0) {
            m /= p;
            term *= pe;
            acc += term;
        }
        out[static_cast<std::size_t>(n)] = acc * out[static_cast<std::size_t>(m)];
    }
    return out;
}

std::vector<std::int64_t> primes_up_to(std::int64_t bound) {
    std::vector<std::int64_t> out;
    if (bound < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
    for (std::int64_t i = 2; i <= bound; ++i) {
        if (composite[static_cast<std::size_t>(i)]) continue;
        out.push_back(i);
        for (std::int64_t j = i * i; j <= bound; j += i) composite[static_cast<std::size_t>(j)] = true;
    }
    return out;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    auto r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace eiscong
