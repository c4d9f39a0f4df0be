#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace eiscong {

/// Atkin-Lehner eigensystem of a squarefree level: one sign per prime
/// divisor, extended multiplicatively to all divisors.
class ALEigensystem {
public:
    /// Throws PreconditionError unless level is squarefree and signs are
    /// ±1 on exactly the prime divisors of level.
    ALEigensystem(std::int64_t level, std::map<std::int64_t, int> signs);

    static ALEigensystem trivial(std::int64_t level);
    /// Parses "2=-1,19=+1" (empty string allowed for level 1).
    static ALEigensystem parse(std::int64_t level, const std::string& spec);

    std::int64_t level() const { return level_; }
    const std::map<std::int64_t, int>& signs() const { return signs_; }
    std::vector<std::int64_t> primes() const;

    int sign(std::int64_t p) const;
    /// epsilon(d) for d | level.
    int value(std::int64_t d) const;
    ALEigensystem restrict_to(std::int64_t m) const;
    bool all_plus() const;

    std::string to_string() const;

    friend bool operator==(const ALEigensystem&, const ALEigensystem&) = default;

private:
    std::int64_t level_;
    std::map<std::int64_t, int> signs_;
};

}  // namespace eiscong
