#pragma once

#include "eiscong/eigensystem.hpp"
#include "eiscong/newform.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace eiscong {

std::string toolkit_version();

/// ceil((k/12) N prod_{p | N} (1 + 1/p)), the index form of the bound.
std::int64_t sturm_bound(std::int64_t k, std::int64_t level);

/// floor((k/12) prod_{p | N} (1 + 1/p)), the same expression without the
/// factor N. Reported alongside sturm_bound, never used to decide.
std::int64_t sturm_bound_without_level(std::int64_t k, std::int64_t level);

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);

/// First disagreeing index with both residues in 0..ell-1.
struct Witness {
    std::int64_t n = 0;
    std::uint64_t lhs = 0;  // a_f(n) mod the prime
    std::uint64_t rhs = 0;  // Eisenstein a(n) mod ell
};

struct ConstantTermCheck {
    /// a(0) mod ell; empty when ell divides its denominator.
    std::optional<std::uint64_t> value_mod_ell;
    /// k is not divisible by ell - 1, so a mismatch cannot be absorbed.
    bool decisive = false;
    bool matches = false;
};

struct CongruenceReport {
    std::string label;
    std::uint64_t ell = 0;
    std::optional<std::uint64_t> lambda_root;  // empty when no prime was usable
    std::string lambda;                        // "(ell, a - r)"
    std::int64_t weight = 0;
    std::int64_t level = 0;
    ALEigensystem epsilon{1, {}};
    std::int64_t sturm = 0;
    std::int64_t sturm_without_level = 0;
    std::int64_t n_checked = 0;
    Verdict verdict = Verdict::Inconclusive;
    std::optional<Witness> witness;
    std::string reason;  // set for Inconclusive
    bool ogg = false;
    bool epsilon_matches_record = false;
    ConstantTermCheck constant_term;
    std::vector<std::string> notes;
};

struct VerifyOptions {
    /// Compare only up to this index instead of the Sturm bound.
    std::optional<std::int64_t> bound;
    std::uint64_t root_scan_cap = kDefaultRootScanCap;
};

/// Compares the record against the Eisenstein series of the given signs at
/// every degree-one prime above ell. Throws PreconditionError when ell is not
/// an odd prime, ell | 2N, or eps lives on another level.
std::vector<CongruenceReport> verify_congruence(const NewformRecord& record, std::uint64_t ell,
                                                const ALEigensystem& eps, const VerifyOptions& options = {});

/// Per prime p | N: whether a_f(p) equals -w_p p^{k/2-1} exactly, with w_p
/// the stored Atkin-Lehner sign. Empty when the coefficient is not stored.
std::map<std::int64_t, std::optional<bool>> ogg_check(const NewformRecord& record);

bool ogg_consistent(const NewformRecord& record);

enum class SignInference { Plus, Minus, Ambiguous, Neither };

std::string to_string(SignInference s);

struct InferredEigensystem {
    std::int64_t level = 1;
    std::map<std::int64_t, SignInference> signs;

    /// The eigensystem when every sign is determined.
    std::optional<ALEigensystem> eigensystem() const;
};

/// Recovers each sign as the one making -sign p^{k/2-1} = a_f(p) mod the prime.
InferredEigensystem infer_eigensystem(const NewformRecord& record, const PrimeIdealRep& prime);

struct ScanSummary {
    std::int64_t level = 0;
    std::int64_t weight = 0;
    std::uint64_t ell = 0;
    ALEigensystem epsilon{1, {}};
    bool complete = false;
    std::optional<std::int64_t> newform_count;
    std::vector<std::string> passes;
    std::vector<std::string> fails;
    std::vector<std::string> inconclusive;
    std::vector<CongruenceReport> reports;

    /// Complete data, no form passes and none is undecided.
    bool witnesses_nonexistence() const { return complete && passes.empty() && inconclusive.empty(); }
};

/// verify_congruence over every stored newform of the space. A form counts
/// as a pass if any prime above ell passes.
ScanSummary scan_level(std::int64_t level, std::int64_t weight, std::uint64_t ell, const ALEigensystem& eps,
                       const FixtureSet& fixtures, const std::optional<std::filesystem::path>& cache_dir = std::nullopt,
                       const VerifyOptions& options = {});

/// SHA-256 of each fixture file named by the reports' labels, where known.
std::map<std::string, std::string> fixture_hashes(const std::vector<CongruenceReport>& reports,
                                                  const FixtureSet& fixtures);

/// Canonical JSON with sorted keys: {"fixtures", "reports", "toolkit"}.
std::string report_emit(const std::vector<CongruenceReport>& reports,
                        const std::map<std::string, std::string>& hashes = {});

/// Scan summary document wrapping report_emit's fields.
std::string scan_emit(const ScanSummary& summary, const std::map<std::string, std::string>& hashes = {});

}  // namespace eiscong
