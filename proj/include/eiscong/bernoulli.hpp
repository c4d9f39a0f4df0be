#pragma once

#include "eiscong/bigrat.hpp"

#include <cstdint>
#include <mutex>
#include <vector>

namespace eiscong {

inline constexpr std::int64_t kDefaultBernoulliCap = 10000;

/// Bernoulli numbers B_0..B_max with B_1 = -1/2, built once by the
/// recurrence sum_{j<=m} C(m+1, j) B_j = 0.
class BernoulliTable {
public:
    explicit BernoulliTable(std::int64_t max_index);

    std::int64_t max_index() const { return static_cast<std::int64_t>(values_.size()) - 1; }
    const BigRat& operator[](std::int64_t k) const { return values_.at(static_cast<std::size_t>(k)); }
    const std::vector<BigRat>& values() const { return values_; }

private:
    std::vector<BigRat> values_;
};

/// Exact B_k from a process-wide memo that grows on demand under a lock.
/// Throws ResourceError when k exceeds the cap.
BigRat bernoulli(std::int64_t k);

void set_bernoulli_cap(std::int64_t cap);
std::int64_t bernoulli_cap();

/// B_k / 2k, the negated constant term of the level-one Eisenstein series.
BigRat bernoulli_over_2k(std::int64_t k);

/// Compares B_k/k and B_k2/k2 modulo ell.  Requires k ≡ k2 (mod ell-1),
/// neither divisible by ell-1, ell >= 5.
bool kummer_congruent(std::int64_t k, std::int64_t k2, std::uint64_t ell);

}  // namespace eiscong
