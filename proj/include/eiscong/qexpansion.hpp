#pragma once

#include "eiscong/bigrat.hpp"
#include "eiscong/eigensystem.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace eiscong {

struct QExpansion {
    std::int64_t weight = 0;
    std::int64_t level = 1;
    std::optional<ALEigensystem> eigensystem;
    std::vector<BigRat> coeffs;  // a(0..n_max)

    std::int64_t n_max() const { return static_cast<std::int64_t>(coeffs.size()) - 1; }
    const BigRat& operator[](std::int64_t n) const { return coeffs.at(static_cast<std::size_t>(n)); }
};

struct ModQExpansion {
    std::uint64_t modulus = 2;
    std::int64_t weight = 0;
    std::int64_t level = 1;
    std::vector<std::uint64_t> coeffs;  // entries in 0..modulus-1

    std::int64_t n_max() const { return static_cast<std::int64_t>(coeffs.size()) - 1; }
    friend bool operator==(const ModQExpansion&, const ModQExpansion&) = default;
};

/// Entrywise rational_residue; NotLIntegral carries the offending index.
ModQExpansion reduce_mod(const QExpansion& f, std::uint64_t ell);

}  // namespace eiscong
