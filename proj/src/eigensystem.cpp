#include "eiscong/eigensystem.hpp"

#include "eiscong/arith.hpp"
#include "eiscong/errors.hpp"

#include <sstream>

namespace eiscong {

ALEigensystem::ALEigensystem(std::int64_t level, std::map<std::int64_t, int> signs)
    : level_(level), signs_(std::move(signs)) {
    if (level < 1) throw PreconditionError("eigensystem level must be positive");
    if (!is_squarefree(level))
        throw PreconditionError("eigensystem level " + std::to_string(level) + " is not squarefree");
    auto primes = prime_divisors(level);
    if (primes.size() != signs_.size())
        throw PreconditionError("eigensystem for level " + std::to_string(level) +
                                " must give a sign for exactly its prime divisors");
    for (auto p : primes) {
        auto it = signs_.find(p);
        if (it == signs_.end())
            throw PreconditionError("eigensystem missing sign for prime " + std::to_string(p));
        if (it->second != 1 && it->second != -1)
            throw PreconditionError("eigensystem sign at " + std::to_string(p) + " must be +1 or -1");
    }
}

ALEigensystem ALEigensystem::trivial(std::int64_t level) {
    std::map<std::int64_t, int> signs;
    for (auto p : prime_divisors(level)) signs[p] = 1;
    return {level, std::move(signs)};
}

ALEigensystem ALEigensystem::parse(std::int64_t level, const std::string& spec) {
    std::map<std::int64_t, int> signs;
    std::stringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError("epsilon entry '" + item + "' is not p=±1", "eps");
        try {
            auto p = std::stoll(item.substr(0, eq));
            auto s = std::stoi(item.substr(eq + 1));
            if (!signs.emplace(p, s).second)
                throw ParseError("epsilon lists prime " + std::to_string(p) + " twice", "eps");
        } catch (const std::logic_error&) {
            throw ParseError("epsilon entry '" + item + "' is not p=±1", "eps");
        }
    }
    return {level, std::move(signs)};
}

std::vector<std::int64_t> ALEigensystem::primes() const {
    std::vector<std::int64_t> out;
    for (auto [p, s] : signs_) out.push_back(p);
    return out;
}

int ALEigensystem::sign(std::int64_t p) const {
    auto it = signs_.find(p);
    if (it == signs_.end())
        throw PreconditionError(std::to_string(p) + " is not a prime divisor of " + std::to_string(level_));
    return it->second;
}

int ALEigensystem::value(std::int64_t d) const {
    if (d < 1 || level_ % d != 0)
        throw PreconditionError(std::to_string(d) + " does not divide " + std::to_string(level_));
    int v = 1;
    for (auto [p, s] : signs_)
        if (d % p == 0) v *= s;
    return v;
}

ALEigensystem ALEigensystem::restrict_to(std::int64_t m) const {
    if (m < 1 || level_ % m != 0)
        throw PreconditionError(std::to_string(m) + " does not divide " + std::to_string(level_));
    std::map<std::int64_t, int> signs;
    for (auto [p, s] : signs_)
        if (m % p == 0) signs[p] = s;
    return {m, std::move(signs)};
}

bool ALEigensystem::all_plus() const {
    for (auto [p, s] : signs_)
        if (s != 1) return false;
    return true;
}

std::string ALEigensystem::to_string() const {
    std::string out;
    for (auto [p, s] : signs_) {
        if (!out.empty()) out += ',';
        out += std::to_string(p) + (s > 0 ? "=+1" : "=-1");
    }
    return out;
}

}  // namespace eiscong
