#include "eiscong/bernoulli.hpp"

#include "eiscong/errors.hpp"
#include "eiscong/residue.hpp"

#include <atomic>
#include <memory>
#include <shared_mutex>
#include <string>

namespace eiscong {

BernoulliTable::BernoulliTable(std::int64_t max_index) {
    if (max_index < 0) throw PreconditionError("BernoulliTable: negative index");
    values_.reserve(static_cast<std::size_t>(max_index) + 1);
    values_.emplace_back(1);
    // Row m of Pascal's triangle for C(m+1, j), updated in place.
    std::vector<BigInt> binom{1, 1};
    for (std::int64_t m = 1; m <= max_index; ++m) {
        // binom holds C(m, 0..m); advance to C(m+1, 0..m+1).
        std::vector<BigInt> next(binom.size() + 1);
        next.front() = 1;
        next.back() = 1;
        for (std::size_t j = 1; j < binom.size(); ++j) next[j] = binom[j - 1] + binom[j];
        binom = std::move(next);
        if (m > 1 && m % 2 == 1) {
            values_.emplace_back(0);
            continue;
        }
        BigRat acc;
        for (std::int64_t j = 0; j < m; ++j) {
            if (j > 1 && j % 2 == 1) continue;
            acc += BigRat(binom[static_cast<std::size_t>(j)]) * values_[static_cast<std::size_t>(j)];
        }
        values_.push_back(-acc / BigRat(static_cast<std::int64_t>(m + 1)));
    }
}

namespace {

std::atomic<std::int64_t> g_cap{kDefaultBernoulliCap};
std::shared_mutex g_mutex;
std::shared_ptr<const BernoulliTable> g_table;

}  // namespace

void set_bernoulli_cap(std::int64_t cap) {
    if (cap < 0) throw PreconditionError("Bernoulli cap must be non-negative");
    g_cap = cap;
}

std::int64_t bernoulli_cap() { return g_cap; }

BigRat bernoulli(std::int64_t k) {
    if (k < 0) throw PreconditionError("bernoulli: negative index");
    if (k > g_cap) {
        throw ResourceError("bernoulli: index " + std::to_string(k) + " exceeds cap " +
                            std::to_string(g_cap.load()));
    }
    {
        std::shared_lock lock(g_mutex);
        if (g_table && g_table->max_index() >= k) return (*g_table)[k];
    }
    std::unique_lock lock(g_mutex);
    if (!g_table || g_table->max_index() < k) {
        std::int64_t target = std::max<std::int64_t>(k, 64);
        if (g_table) target = std::max(target, 2 * g_table->max_index());
        target = std::min(target, std::max<std::int64_t>(k, g_cap));
        g_table = std::make_shared<const BernoulliTable>(target);
    }
    return (*g_table)[k];
}

BigRat bernoulli_over_2k(std::int64_t k) {
    if (k < 1) throw PreconditionError("B_k/2k requires k >= 1");
    return bernoulli(k) / BigRat(2 * k);
}

bool kummer_congruent(std::int64_t k, std::int64_t k2, std::uint64_t ell) {
    auto m = static_cast<std::int64_t>(ell) - 1;
    if (ell < 5) throw PreconditionError("kummer_congruent: ell must be >= 5");
    if (k % 2 != 0 || k2 % 2 != 0 || k < 2 || k2 < 2)
        throw PreconditionError("kummer_congruent: weights must be even and >= 2");
    if ((k - k2) % m != 0) throw PreconditionError("kummer_congruent: k and k2 differ mod ell-1");
    if (k % m == 0) throw PreconditionError("kummer_congruent: k divisible by ell-1");
    auto lhs = rational_residue(bernoulli(k) / BigRat(k), ell);
    auto rhs = rational_residue(bernoulli(k2) / BigRat(k2), ell);
    return lhs == rhs;
}

}  // namespace eiscong
