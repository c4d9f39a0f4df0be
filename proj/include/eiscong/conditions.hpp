#pragma once

#include "eiscong/bigrat.hpp"
#include "eiscong/eigensystem.hpp"
#include "eiscong/residue.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace eiscong {

struct Clause {
    std::string name;
    bool holds = false;
    BigRat witness;  // the exact quantity tested
};

struct ConditionReport {
    std::vector<Clause> clauses;
    /// Conclusions the hypotheses imply, evaluated for information only.
    std::vector<Clause> implied;
    std::vector<std::string> notes;

    /// Conjunction of the clauses.
    bool overall() const;
    const Clause* find(const std::string& name) const;
};

/// Global and per-prime divisibilities for a level-N eigensystem. Inputs
/// outside k >= 4, ell > k+1, ell not dividing N are evaluated with a note.
ConditionReport congruence_conditions(std::int64_t k, std::int64_t ell, const ALEigensystem& eps);

/// Existence hypotheses at level pq (eps has level pq).
ConditionReport pair_existence_hypotheses(std::int64_t k, std::int64_t ell, std::int64_t p, std::int64_t q,
                                     const ALEigensystem& eps);

/// Hypotheses of the converse at level pq; p is the cofactor of q. The
/// divisibilities a congruence would force are listed as implied.
ConditionReport pair_converse_hypotheses(std::int64_t k, std::int64_t ell, std::int64_t q, const ALEigensystem& eps);

/// Existence hypotheses at level dp, d | N; r is the 1-based index of the
/// chosen prime in the ascending factorization of N.
ConditionReport extended_level_hypotheses(std::int64_t k, std::int64_t ell, std::int64_t p, std::int64_t level_n,
                                     const ALEigensystem& eps, int r);

struct VacuityItem {
    std::string condition;  // e.g. "ell does not divide q-1"
    bool vacuous = false;   // implied by the divisibilities and the sign/weight pattern
    bool holds = false;     // direct evaluation
};

std::vector<VacuityItem> vacuous_conditions(std::int64_t k, std::int64_t ell, std::int64_t p, std::int64_t q,
                                        const ALEigensystem& eps);

/// Smallest matching sign/weight case in which the level-pq congruence
/// conditions hold, or nullopt.
std::optional<int> pair_congruence_case(std::int64_t k, std::int64_t ell, std::int64_t p, std::int64_t q,
                                    const ALEigensystem& eps);

bool mazur_criterion(std::int64_t ell, std::int64_t p);
bool ribet_optimal(std::int64_t k, std::int64_t ell);
bool level_raising_check(Fp a_p, std::int64_t p, std::int64_t k, std::int64_t ell);

struct AdmissibilityVerdict {
    int s = 0;
    int sign_p = 1;
    int sign_q = 1;
    bool necessary_met = false;
    /// The converse hypothesis on ell holds, so the
    /// necessary conditions are actually forced.
    bool necessary_applicable = false;
    bool sufficient_met = false;
    bool assumptions_met = false;
    ConditionReport necessary;
    ConditionReport sufficient;
    std::vector<std::string> notes;
};

/// Two-prime admissibility for s in {0, 1, 2}. For k >= 4 the signs are
/// eps(p) = -1 iff s >= 1 and eps(q) = -1 iff s = 2. Weight 2 only has the
/// s = 1 criterion, with eps(q) = -1 and eps(p) = +1.
/// Requires ell >= 5 prime, p, q, ell distinct primes, ell not dividing B_k/2k.
AdmissibilityVerdict admissibility(std::int64_t k, std::int64_t ell, std::int64_t p, std::int64_t q, int s);

struct DensitySets {
    std::int64_t ell = 0;
    std::int64_t k = 0;
    std::int64_t bound = 0;
    std::vector<std::int64_t> p_set;  // p = -1 mod ell
    std::vector<std::int64_t> q_set;  // q != +-1 mod ell, q != ell
    /// Sign for p in p_set; constant on the class -1.
    int sign_p = 0;
    /// Sign per residue class of q mod ell (index = residue; 0 where unused).
    std::vector<int> sign_q_by_class;
    std::int64_t prime_count = 0;

    int sign_q(std::int64_t q) const { return sign_q_by_class.at(static_cast<std::size_t>(q % ell)); }
    double p_fraction() const;
    double q_fraction() const;
    double p_dirichlet() const { return 1.0 / static_cast<double>(ell - 1); }
    double q_dirichlet() const { return static_cast<double>(ell - 3) / static_cast<double>(ell - 1); }
    double p_residue_share() const { return 1.0 / static_cast<double>(ell); }
    double q_residue_share() const { return static_cast<double>(ell - 2) / static_cast<double>(ell); }
};

/// Requires ell >= 5 prime and k in {2, ell+1}.
DensitySets density_sets(std::int64_t ell, std::int64_t k, std::int64_t bound);

struct DegreeBound {
    std::int64_t gcd = 0;
    std::optional<std::int64_t> ell;  // P+(gcd(p+1, q+1)) when > 1
    bool ell4_exceeds_level = false;             // ell^4 > pq
    /// (1/8) log(pq) enclosed by directed rounding at `precision_bits`.
    BigRat log_bound_lower;
    BigRat log_bound_upper;
    int precision_bits = 0;
    /// ceil(log ell / (2 log(1 + sqrt 2))): the least d with ell <= (1 + sqrt 2)^(2d).
    std::optional<std::int64_t> min_degree;
};

DegreeBound degree_bound(std::int64_t p, std::int64_t q, int precision_bits = 128);

/// Least d >= 0 with n <= (1 + sqrt 2)^(2d), by exact integer arithmetic.
std::int64_t silver_ratio_exponent(const BigInt& n);

}  // namespace eiscong
