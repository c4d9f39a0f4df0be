#include "eiscong/verifier.hpp"

#include "eiscong/arith.hpp"
#include "eiscong/eisenstein.hpp"
#include "eiscong/errors.hpp"
#include "eiscong/residue.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace eiscong {

namespace {

using nlohmann::json;

BigInt index_numerator(std::int64_t k, std::int64_t level) {
    if (k <= 0) throw PreconditionError("weight must be positive");
    if (level < 1 || !is_squarefree(level)) throw PreconditionError("level must be squarefree and positive");
    BigInt prod = k;
    for (auto p : prime_divisors(level)) prod *= p + 1;
    return prod;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

json epsilon_json(const ALEigensystem& eps) {
    json out = json::object();
    for (const auto& [p, s] : eps.signs()) out[std::to_string(p)] = s;
    return out;
}

json report_json(const CongruenceReport& r) {
    json out;
    out["label"] = r.label;
    out["ell"] = r.ell;
    out["lambda_root"] = r.lambda_root ? json(*r.lambda_root) : json(nullptr);
    out["lambda"] = r.lambda;
    out["k"] = r.weight;
    out["N"] = r.level;
    out["epsilon"] = epsilon_json(r.epsilon);
    out["epsilon_matches_record"] = r.epsilon_matches_record;
    out["sturm"] = r.sturm;
    out["sturm_without_level"] = r.sturm_without_level;
    out["checked"] = r.n_checked;
    out["verdict"] = to_string(r.verdict);
    out["witness"] = r.witness ? json{{"n", r.witness->n}, {"lhs", r.witness->lhs}, {"rhs", r.witness->rhs}}
                               : json(nullptr);
    if (!r.reason.empty()) out["reason"] = r.reason;
    out["ogg"] = r.ogg;
    out["constant_term"] = {
        {"value_mod_ell", r.constant_term.value_mod_ell ? json(*r.constant_term.value_mod_ell) : json(nullptr)},
        {"decisive", r.constant_term.decisive},
        {"matches", r.constant_term.matches},
    };
    out["notes"] = r.notes;
    return out;
}

json document(const std::vector<CongruenceReport>& reports, const std::map<std::string, std::string>& hashes) {
    json out;
    out["toolkit"] = {{"name", "eiscong"}, {"version", toolkit_version()}};
    out["fixtures"] = json::object();
    for (const auto& [label, digest] : hashes) out["fixtures"][label] = digest;
    out["reports"] = json::array();
    for (const auto& r : reports) out["reports"].push_back(report_json(r));
    return out;
}

}  // namespace

std::string toolkit_version() { return EISCONG_VERSION; }

std::int64_t sturm_bound(std::int64_t k, std::int64_t level) {
    return to_int64(ceil_div(index_numerator(k, level), 12));
}

std::int64_t sturm_bound_without_level(std::int64_t k, std::int64_t level) {
    return to_int64(floor_div(index_numerator(k, level), BigInt(12) * BigInt(static_cast<long>(level))));
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

std::string to_string(SignInference s) {
    switch (s) {
        case SignInference::Plus: return "+1";
        case SignInference::Minus: return "-1";
        case SignInference::Ambiguous: return "ambiguous";
        case SignInference::Neither: return "neither";
    }
    return "neither";
}

std::vector<CongruenceReport> verify_congruence(const NewformRecord& record, std::uint64_t ell,
                                                const ALEigensystem& eps, const VerifyOptions& options) {
    if (ell < 3 || !is_prime(static_cast<std::int64_t>(ell))) throw PreconditionError("ell must be an odd prime");
    if (record.level % static_cast<std::int64_t>(ell) == 0) throw PreconditionError("ell divides the level");
    if (eps.level() != record.level) throw PreconditionError("eigensystem level differs from the record level");

    const std::int64_t k = record.weight;
    const std::int64_t bound = options.bound.value_or(sturm_bound(k, record.level));
    if (bound < 0) throw PreconditionError("comparison bound must be non-negative");

    CongruenceReport base;
    base.label = record.label;
    base.ell = ell;
    base.weight = k;
    base.level = record.level;
    base.epsilon = eps;
    base.sturm = bound;
    base.sturm_without_level = sturm_bound_without_level(k, record.level);
    base.ogg = ogg_consistent(record);
    base.epsilon_matches_record = eps.signs() == record.al_signs;
    if (options.bound) base.notes.push_back("bound overridden; Sturm bound is " +
                                            std::to_string(sturm_bound(k, record.level)));

    const auto series = eisenstein_eps(k, eps, bound);
    base.constant_term.decisive = k % static_cast<std::int64_t>(ell - 1) != 0;
    try {
        base.constant_term.value_mod_ell = rational_residue(series[0], ell).value();
        base.constant_term.matches = *base.constant_term.value_mod_ell == 0;
    } catch (const NotLIntegral&) {
        base.notes.push_back("Eisenstein constant term has ell in its denominator");
    }

    std::vector<PrimeIdealRep> primes;
    try {
        primes = primes_above(record.defining_poly(), ell, options.root_scan_cap);
    } catch (const NoDegreeOnePrime& e) {
        base.reason = std::string("no degree-one prime: ") + e.what();
        return {base};
    }

    std::vector<std::uint64_t> expected(static_cast<std::size_t>(bound + 1));
    for (std::int64_t n = 1; n <= bound; ++n) expected[static_cast<std::size_t>(n)] = rational_residue(series[n], ell).value();

    const std::int64_t limit = std::min(bound, record.n_available());
    std::vector<CongruenceReport> out;
    for (const auto& prime : primes) {
        CongruenceReport r = base;
        r.lambda_root = prime.root;
        r.lambda = prime.to_string();
        if (prime.multiple_root) r.notes.push_back("repeated root: ell may divide the index of Z[a]");
        std::optional<std::string> blocked;
        for (std::int64_t n = 1; n <= limit; ++n) {
            std::uint64_t lhs = 0;
            try {
                lhs = reduce_coeff(record.coeff(n), prime).value();
            } catch (const NotLIntegral&) {
                blocked = "a_f(" + std::to_string(n) + ") has ell in its denominator";
                break;
            }
            if (lhs != expected[static_cast<std::size_t>(n)]) {
                r.witness = Witness{n, lhs, expected[static_cast<std::size_t>(n)]};
                break;
            }
            r.n_checked = n;
        }
        const auto& ct = r.constant_term;
        if (!r.witness && !blocked && ct.decisive && ct.value_mod_ell && !ct.matches) {
            r.witness = Witness{0, 0, *ct.value_mod_ell};
        }
        if (r.witness) {
            r.verdict = Verdict::Fail;
        } else if (blocked) {
            r.reason = *blocked;
        } else if (record.n_available() < bound) {
            r.reason = "only " + std::to_string(record.n_available()) + " coefficients stored, bound is " +
                       std::to_string(bound);
        } else if (ct.decisive && !ct.value_mod_ell) {
            r.reason = "constant term is not ell-integral";
        } else {
            r.verdict = Verdict::Pass;
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::map<std::int64_t, std::optional<bool>> ogg_check(const NewformRecord& record) {
    std::map<std::int64_t, std::optional<bool>> out;
    for (auto p : prime_divisors(record.level)) {
        auto sign = record.al_signs.find(p);
        if (sign == record.al_signs.end() || record.n_available() < p) {
            out[p] = std::nullopt;
            continue;
        }
        BigInt expected = -sign->second * ipow(p, static_cast<unsigned long>(record.weight / 2 - 1));
        out[p] = record.coeff(p) == NFCoefficient(BigRat(expected));
    }
    return out;
}

bool ogg_consistent(const NewformRecord& record) {
    auto checks = ogg_check(record);
    return std::all_of(checks.begin(), checks.end(), [](const auto& kv) { return kv.second.value_or(false); });
}

std::optional<ALEigensystem> InferredEigensystem::eigensystem() const {
    std::map<std::int64_t, int> determined;
    for (const auto& [p, s] : signs) {
        if (s == SignInference::Plus) determined[p] = 1;
        else if (s == SignInference::Minus) determined[p] = -1;
        else return std::nullopt;
    }
    return ALEigensystem(level, determined);
}

InferredEigensystem infer_eigensystem(const NewformRecord& record, const PrimeIdealRep& prime) {
    InferredEigensystem out;
    out.level = record.level;
    for (auto p : prime_divisors(record.level)) {
        if (record.n_available() < p) {
            out.signs[p] = SignInference::Neither;
            continue;
        }
        Fp observed;
        try {
            observed = reduce_coeff(record.coeff(p), prime);
        } catch (const NotLIntegral&) {
            out.signs[p] = SignInference::Neither;
            continue;
        }
        Fp power(ipow(p, static_cast<unsigned long>(record.weight / 2 - 1)), prime.ell);
        bool plus = observed == -power;
        bool minus = observed == power;
        out.signs[p] = plus && minus ? SignInference::Ambiguous
                       : plus        ? SignInference::Plus
                       : minus       ? SignInference::Minus
                                     : SignInference::Neither;
    }
    return out;
}

ScanSummary scan_level(std::int64_t level, std::int64_t weight, std::uint64_t ell, const ALEigensystem& eps,
                       const FixtureSet& fixtures, const std::optional<std::filesystem::path>& cache_dir,
                       const VerifyOptions& options) {
    ScanSummary out;
    out.level = level;
    out.weight = weight;
    out.ell = ell;
    out.epsilon = eps;
    out.complete = fixtures.is_complete(level, weight);
    out.newform_count = fixtures.newform_count(level, weight);
    for (const auto& record : list_newforms(level, weight, fixtures, cache_dir)) {
        auto reports = verify_congruence(record, ell, eps, options);
        auto any = [&](Verdict v) {
            return std::any_of(reports.begin(), reports.end(), [v](const auto& r) { return r.verdict == v; });
        };
        if (any(Verdict::Pass)) out.passes.push_back(record.label);
        else if (any(Verdict::Inconclusive)) out.inconclusive.push_back(record.label);
        else out.fails.push_back(record.label);
        for (auto& r : reports) out.reports.push_back(std::move(r));
    }
    return out;
}

std::map<std::string, std::string> fixture_hashes(const std::vector<CongruenceReport>& reports,
                                                  const FixtureSet& fixtures) {
    std::set<std::string> known;
    for (const auto& [level, weight] : fixtures.spaces())
        for (const auto& label : fixtures.labels(level, weight)) known.insert(label);
    std::map<std::string, std::string> out;
    for (const auto& r : reports)
        if (known.count(r.label) && !out.count(r.label)) out[r.label] = sha256_file(fixtures.path_of(r.label));
    return out;
}

std::string report_emit(const std::vector<CongruenceReport>& reports, const std::map<std::string, std::string>& hashes) {
    return document(reports, hashes).dump();
}

std::string scan_emit(const ScanSummary& summary, const std::map<std::string, std::string>& hashes) {
    json out = document(summary.reports, hashes);
    out["scan"] = {
        {"level", summary.level},
        {"weight", summary.weight},
        {"ell", summary.ell},
        {"epsilon", epsilon_json(summary.epsilon)},
        {"complete", summary.complete},
        {"newform_count", summary.newform_count ? json(*summary.newform_count) : json(nullptr)},
        {"passes", summary.passes},
        {"fails", summary.fails},
        {"inconclusive", summary.inconclusive},
        {"witnesses_nonexistence", summary.witnesses_nonexistence()},
    };
    return out.dump();
}

}  // namespace eiscong
