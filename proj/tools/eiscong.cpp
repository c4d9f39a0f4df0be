#include "eiscong/arith.hpp"
#include "eiscong/bernoulli.hpp"
#include "eiscong/conditions.hpp"
#include "eiscong/eisenstein.hpp"
#include "eiscong/errors.hpp"
#include "eiscong/newform.hpp"
#include "eiscong/remote.hpp"
#include "eiscong/residue.hpp"
#include "eiscong/verifier.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace eiscong;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

enum Exit : int { kAffirmative = 0, kNegative = 1, kError = 2, kInconclusive = 3 };

fs::path default_cache_dir() {
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "eiscong";
    if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "eiscong";
    return "eiscong-cache";
}

struct CliConfig {
    fs::path fixture_dir = EISCONG_DEFAULT_FIXTURE_DIR;
    fs::path cache_dir = default_cache_dir();
    bool remote_enabled = false;
    std::string remote_endpoint = RemoteConfig{}.endpoint;
    std::string output = "json";
    std::int64_t bernoulli_cap = kDefaultBernoulliCap;
};

CliConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("config must be a JSON object");
    CliConfig cfg;
    bool endpoint_given = false;
    for (const auto& [key, value] : doc.items()) {
        try {
            if (key == "fixture_dir") cfg.fixture_dir = value.get<std::string>();
            else if (key == "cache_dir") cfg.cache_dir = value.get<std::string>();
            else if (key == "remote_enabled") cfg.remote_enabled = value.get<bool>();
            else if (key == "remote_endpoint") cfg.remote_endpoint = value.get<std::string>(), endpoint_given = true;
            else if (key == "output") cfg.output = value.get<std::string>();
            else if (key == "bernoulli_cap") cfg.bernoulli_cap = value.get<std::int64_t>();
            else throw ParseError("config: unknown field " + key, key);
        } catch (const json::type_error&) {
            throw ParseError("config: wrong type for " + key, key);
        }
    }
    if (cfg.remote_enabled && endpoint_given && cfg.remote_endpoint.empty())
        throw ParseError("config: remote_endpoint is empty but remote_enabled is set", "remote_endpoint");
    return cfg;
}

std::string describe_level(std::int64_t level) {
    if (level == 1) return "1";
    std::string out;
    for (const auto& [p, e] : factorize(level)) {
        if (!out.empty()) out += " * ";
        out += std::to_string(p);
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

/// Parses --eps against the level, defaulting to all +1; errors name the
/// primes the level expects.
ALEigensystem parse_eps(std::int64_t level, const std::optional<std::string>& text) {
    if (level < 1) throw PreconditionError("level must be positive");
    try {
        return text ? ALEigensystem::parse(level, *text) : ALEigensystem::trivial(level);
    } catch (const Error& e) {
        throw PreconditionError(std::string(e.what()) + " (level " + std::to_string(level) + " = " +
                                describe_level(level) + ")");
    }
}

json eps_json(const ALEigensystem& eps) {
    json out = json::object();
    for (const auto& [p, s] : eps.signs()) out[std::to_string(p)] = s;
    return out;
}

json level_json(std::int64_t level) {
    json primes = json::array();
    for (auto p : prime_divisors(level)) primes.push_back(p);
    return {{"N", level}, {"factorization", describe_level(level)}, {"primes", primes}};
}

json clauses_json(const std::vector<Clause>& clauses) {
    json out = json::array();
    for (const auto& c : clauses) out.push_back({{"name", c.name}, {"holds", c.holds}, {"value", c.witness.to_string()}});
    return out;
}

json report_json(const ConditionReport& r) {
    return {{"overall", r.overall()}, {"clauses", clauses_json(r.clauses)}, {"implied", clauses_json(r.implied)},
            {"notes", r.notes}};
}

void flatten(const json& node, const std::string& prefix, std::ostream& out) {
    if (node.is_object() && !node.empty()) {
        for (const auto& [key, value] : node.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    } else if (node.is_array() && !node.empty()) {
        for (std::size_t i = 0; i < node.size(); ++i) flatten(node[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out << prefix << "\t" << (node.is_string() ? node.get<std::string>() : node.dump()) << "\n";
    }
}

class Printer {
public:
    explicit Printer(const std::string& format) : table_(format == "table") {}

    void document(const json& doc) const {
        if (table_) flatten(doc, "", std::cout);
        else std::cout << doc.dump() << "\n";
    }
    void raw_document(const std::string& text) const { document(json::parse(text)); }
    void line(const nlohmann::ordered_json& row) const {
        if (!table_) {
            std::cout << row.dump() << "\n";
            return;
        }
        bool first = true;
        for (const auto& [key, value] : row.items()) {
            std::cout << (first ? "" : "\t") << value.dump();
            first = false;
        }
        std::cout << "\n";
    }

private:
    bool table_;
};

int verdict_exit(const std::vector<CongruenceReport>& reports) {
    bool inconclusive = false;
    for (const auto& r : reports) {
        if (r.verdict == Verdict::Pass) return kAffirmative;
        if (r.verdict == Verdict::Inconclusive) inconclusive = true;
    }
    return inconclusive || reports.empty() ? kInconclusive : kNegative;
}

RemoteConfig remote_config(const CliConfig& cfg) {
    RemoteConfig rc;
    rc.endpoint = cfg.remote_endpoint;
    rc.cache_dir = cfg.cache_dir;
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eisenstein congruences for squarefree-level newforms"};
    app.require_subcommand(1);

    std::optional<std::string> config_path;
    std::optional<std::string> output_flag;
    std::optional<std::string> fixtures_flag;
    std::optional<std::string> cache_flag;
    bool remote_flag = false;
    std::optional<std::int64_t> cap_flag;
    app.add_option("--config", config_path, "JSON config file (fields: fixture_dir, cache_dir, remote_enabled, "
                                            "remote_endpoint, output, bernoulli_cap)")
        ->envname("EISCONG_CONFIG");
    app.add_option("--output", output_flag, "json (default) or table")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--fixtures", fixtures_flag, std::string("fixture directory (default ") +
                                                    EISCONG_DEFAULT_FIXTURE_DIR + ")");
    app.add_option("--cache", cache_flag, "cache directory for fetched records (default " +
                                              default_cache_dir().string() + ")");
    app.add_flag("--remote", remote_flag, "query the newform database when local data is missing (default off)");
    app.add_option("--bernoulli-cap", cap_flag, "largest Bernoulli index computed (default " +
                                                    std::to_string(kDefaultBernoulliCap) + ")");
    app.fallthrough();

    std::optional<std::string> eps_text;
    auto add_eps = [&](CLI::App* sub) {
        sub->add_option("--eps", eps_text, "Atkin-Lehner signs as p=+1,q=-1 (default all +1)");
    };

    auto* eis = app.add_subcommand("eis", "twisted Eisenstein series coefficients");
    std::int64_t eis_k = 0, eis_n = 1, eis_nmax = 20;
    std::optional<std::uint64_t> eis_mod;
    std::optional<std::int64_t> eis_cusp, eis_up;
    eis->add_option("k", eis_k, "even weight")->required();
    eis->add_option("N", eis_n, "squarefree level")->required();
    eis->add_option("--nmax", eis_nmax, "last coefficient index (default 20)");
    eis->add_option("--mod", eis_mod, "reduce modulo this prime");
    eis->add_option("--cusp", eis_cusp, "constant term at the cusp 1/M");
    eis->add_option("--up", eis_up, "apply U_p for p | N");
    add_eps(eis);

    auto* cond = app.add_subcommand("conditions", "evaluate congruence conditions");
    bool c_conj = false, c_13 = false, c_14 = false, c_16 = false, c_mazur = false, c_ribet = false;
    std::vector<std::int64_t> c_args;
    cond->add_flag("--conjecture", c_conj, "args: k ell N");
    cond->add_flag("--thm13", c_13, "existence at level pq; args: k ell p q");
    cond->add_flag("--thm14", c_14, "converse at level pq; args: k ell p q");
    cond->add_flag("--thm16", c_16, "existence at level Np; args: k ell p N r");
    cond->add_flag("--mazur", c_mazur, "args: ell p");
    cond->add_flag("--ribet", c_ribet, "args: k ell");
    cond->add_option("args", c_args, "numeric arguments for the chosen check")->required();
    add_eps(cond);

    auto* adm = app.add_subcommand("admissible", "two-prime admissibility verdict");
    std::int64_t a_k = 0, a_ell = 0, a_p = 0, a_q = 0;
    int a_s = 0;
    adm->add_option("k", a_k)->required();
    adm->add_option("ell", a_ell)->required();
    adm->add_option("p", a_p)->required();
    adm->add_option("q", a_q)->required();
    adm->add_option("s", a_s, "number of -1 signs (0, 1 or 2)")->required()->check(CLI::Range(0, 2));

    auto* pairs = app.add_subcommand("pairs", "stream (p, q) pairs from the density sets, one JSON object per line");
    std::int64_t pr_ell = 0, pr_k = 0, pr_bound = 1000;
    std::optional<std::int64_t> pr_limit;
    pairs->add_option("ell", pr_ell)->required();
    pairs->add_option("k", pr_k, "2 or ell+1")->required();
    pairs->add_option("--bound", pr_bound, "largest prime considered (default 1000)");
    pairs->add_option("--limit", pr_limit, "stop after this many pairs");

    auto* ver = app.add_subcommand("verify", "check f = E (mod Lambda) up to the Sturm bound");
    std::uint64_t v_ell = 0;
    std::optional<std::string> v_fixture;
    std::optional<std::int64_t> v_level, v_weight, v_bound;
    ver->add_option("ell", v_ell)->required();
    ver->add_option("--fixture", v_fixture, "a single record file");
    ver->add_option("--level", v_level, "every stored newform of this level");
    ver->add_option("--weight", v_weight, "weight for --level");
    ver->add_option("--bound", v_bound, "compare up to this index instead of the Sturm bound");
    ver->add_option("--eps", eps_text, "Atkin-Lehner signs (default: each record's stored signs)");

    auto* scan = app.add_subcommand("scan", "verify every newform of a space");
    std::int64_t s_level = 0, s_weight = 0;
    std::uint64_t s_ell = 0;
    scan->add_option("level", s_level)->required();
    scan->add_option("weight", s_weight)->required();
    scan->add_option("ell", s_ell)->required();
    add_eps(scan);

    auto* bern = app.add_subcommand("bernoulli", "exact B_k");
    std::int64_t b_k = 0;
    bern->add_option("k", b_k)->required();

    auto* sturm = app.add_subcommand("sturm", "coefficient bound for (k, N)");
    std::int64_t st_k = 0, st_n = 0;
    sturm->add_option("k", st_k)->required();
    sturm->add_option("N", st_n)->required();

    auto* deg = app.add_subcommand("degree-bound", "coefficient field degree bound for level pq");
    std::int64_t d_p = 0, d_q = 0;
    deg->add_option("p", d_p)->required();
    deg->add_option("q", d_q)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kError;
    }

    try {
        CliConfig cfg = config_path ? load_config(*config_path) : CliConfig{};
        if (output_flag) cfg.output = *output_flag;
        if (fixtures_flag) cfg.fixture_dir = *fixtures_flag;
        if (cache_flag) cfg.cache_dir = *cache_flag;
        if (remote_flag) cfg.remote_enabled = true;
        if (cap_flag) cfg.bernoulli_cap = *cap_flag;
        if (cfg.output != "json" && cfg.output != "table") throw PreconditionError("output must be json or table");
        if (cfg.remote_enabled && cfg.remote_endpoint.empty()) throw PreconditionError("remote enabled without endpoint");
        set_bernoulli_cap(cfg.bernoulli_cap);
        Printer print(cfg.output);

        auto fixtures = [&] {
            if (!fs::is_directory(cfg.fixture_dir))
                throw IoError("fixture directory " + cfg.fixture_dir.string() + " does not exist");
            return FixtureSet(cfg.fixture_dir);
        };

        if (*eis) {
            auto eps = parse_eps(eis_n, eps_text);
            json doc{{"k", eis_k}, {"level", level_json(eis_n)}, {"epsilon", eps_json(eps)}};
            auto series = eisenstein_eps(eis_k, eps, eis_nmax);
            auto coeffs = [&](const QExpansion& f) {
                json out = json::array();
                if (eis_mod) {
                    for (auto v : reduce_mod(f, *eis_mod).coeffs) out.push_back(v);
                } else {
                    for (const auto& c : f.coeffs) out.push_back(c.to_string());
                }
                return out;
            };
            if (eis_mod) doc["mod"] = *eis_mod;
            doc["coefficients"] = coeffs(series);
            if (eis_cusp) {
                auto c = cusp_constant_term(eis_k, eps, *eis_cusp);
                json cusp{{"M", *eis_cusp}, {"value", c.to_string()}};
                if (eis_mod) cusp["value_mod"] = rational_residue(c, *eis_mod).value();
                doc["cusp"] = cusp;
            }
            if (eis_up) {
                auto p = *eis_up;
                json up{{"p", p},
                        {"coefficients", coeffs(up_action(eis_k, eps, p, eis_nmax))},
                        {"eigenvalue", up_eigenvalue(eis_k, eps.sign(p), p).get_str()},
                        {"eigen_factor", up_eigen_factor(eis_k, eps.sign(p), p).get_str()}};
                if (eis_mod) up["eigen_mod"] = is_up_eigen_mod(eis_k, eps, p, *eis_mod, eis_nmax);
                doc["up"] = up;
            }
            print.document(doc);
            return kAffirmative;
        }

        if (*cond) {
            int modes = c_conj + c_13 + c_14 + c_16 + c_mazur + c_ribet;
            if (modes != 1) throw PreconditionError("choose exactly one of --conjecture, --thm13, --thm14, --thm16, "
                                                    "--mazur, --ribet");
            auto need = [&](std::size_t n, const char* usage) {
                if (c_args.size() != n) throw PreconditionError(std::string("expected arguments: ") + usage);
            };
            auto& a = c_args;
            json doc;
            bool overall = false;
            if (c_conj) {
                need(3, "k ell N");
                auto eps = parse_eps(a[2], eps_text);
                auto r = congruence_conditions(a[0], a[1], eps);
                doc = report_json(r);
                doc["level"] = level_json(a[2]);
                doc["epsilon"] = eps_json(eps);
                overall = r.overall();
            } else if (c_13 || c_14) {
                need(4, "k ell p q");
                auto eps = parse_eps(a[2] * a[3], eps_text);
                auto r = c_13 ? pair_existence_hypotheses(a[0], a[1], a[2], a[3], eps)
                              : pair_converse_hypotheses(a[0], a[1], a[3], eps);
                doc = report_json(r);
                doc["level"] = level_json(a[2] * a[3]);
                doc["epsilon"] = eps_json(eps);
                if (c_13) {
                    json vac = json::array();
                    for (const auto& v : vacuous_conditions(a[0], a[1], a[2], a[3], eps))
                        vac.push_back({{"condition", v.condition}, {"vacuous", v.vacuous}, {"holds", v.holds}});
                    doc["vacuity"] = vac;
                    auto c = pair_congruence_case(a[0], a[1], a[2], a[3], eps);
                    doc["pair_case"] = c ? json(*c) : json(nullptr);
                }
                overall = r.overall();
            } else if (c_16) {
                need(5, "k ell p N r");
                auto eps = parse_eps(a[3] * a[2], eps_text);
                auto r = extended_level_hypotheses(a[0], a[1], a[2], a[3], eps, static_cast<int>(a[4]));
                doc = report_json(r);
                doc["level"] = level_json(a[3] * a[2]);
                doc["epsilon"] = eps_json(eps);
                overall = r.overall();
            } else if (c_mazur) {
                need(2, "ell p");
                overall = mazur_criterion(a[0], a[1]);
                doc = {{"ell", a[0]}, {"p", a[1]}, {"overall", overall}};
            } else {
                need(2, "k ell");
                overall = ribet_optimal(a[0], a[1]);
                doc = {{"k", a[0]}, {"ell", a[1]}, {"overall", overall},
                       {"bernoulli_over_2k", bernoulli_over_2k(a[0]).to_string()}};
            }
            print.document(doc);
            return overall ? kAffirmative : kNegative;
        }

        if (*adm) {
            auto v = admissibility(a_k, a_ell, a_p, a_q, a_s);
            json doc{{"k", a_k},
                     {"ell", a_ell},
                     {"p", a_p},
                     {"q", a_q},
                     {"s", v.s},
                     {"sign_p", v.sign_p},
                     {"sign_q", v.sign_q},
                     {"necessary_met", v.necessary_met},
                     {"necessary_applicable", v.necessary_applicable},
                     {"sufficient_met", v.sufficient_met},
                     {"assumptions_met", v.assumptions_met},
                     {"necessary", report_json(v.necessary)},
                     {"sufficient", report_json(v.sufficient)},
                     {"notes", v.notes}};
            print.document(doc);
            return v.sufficient_met ? kAffirmative : kNegative;
        }

        if (*pairs) {
            auto sets = density_sets(pr_ell, pr_k, pr_bound);
            std::int64_t emitted = 0;
            for (auto p : sets.p_set) {
                for (auto q : sets.q_set) {
                    if (p == q) continue;
                    if (pr_limit && emitted >= *pr_limit) return kAffirmative;
                    print.line(nlohmann::ordered_json{{"p", p}, {"q", q}, {"eps_p", sets.sign_p}, {"eps_q", sets.sign_q(q)}});
                    ++emitted;
                }
            }
            return kAffirmative;
        }

        if (*ver) {
            if (v_fixture.has_value() == (v_level.has_value() || v_weight.has_value()))
                throw PreconditionError("give either --fixture or --level with --weight");
            VerifyOptions opts;
            opts.bound = v_bound;
            std::vector<NewformRecord> records;
            std::map<std::string, std::string> hashes;
            if (v_fixture) {
                records.push_back(load_fixture(*v_fixture));
                hashes[records[0].label] = sha256_file(*v_fixture);
            } else {
                if (!v_weight || !v_level) throw PreconditionError("--level needs --weight");
                auto set = fixtures();
                records = list_newforms(*v_level, *v_weight, set, cfg.cache_dir);
                if (records.empty() && cfg.remote_enabled) records = fetch_remote(*v_level, *v_weight, remote_config(cfg));
                if (records.empty())
                    throw IoError("no newform data for level " + std::to_string(*v_level) + " weight " +
                                  std::to_string(*v_weight));
                std::cerr << "level " << *v_level << " = " << describe_level(*v_level) << "\n";
            }
            std::vector<CongruenceReport> reports;
            for (const auto& record : records) {
                auto eps = eps_text ? parse_eps(record.level, eps_text) : ALEigensystem(record.level, record.al_signs);
                for (auto& r : verify_congruence(record, v_ell, eps, opts)) reports.push_back(std::move(r));
            }
            if (!v_fixture) hashes = fixture_hashes(reports, fixtures());
            print.raw_document(report_emit(reports, hashes));
            return verdict_exit(reports);
        }

        if (*scan) {
            auto eps = parse_eps(s_level, eps_text);
            auto set = fixtures();
            bool fetched = false;
            std::size_t fetched_count = 0;
            if (!set.is_complete(s_level, s_weight) && cfg.remote_enabled) {
                fetched_count = fetch_remote(s_level, s_weight, remote_config(cfg)).size();
                fetched = true;
            }
            auto summary = scan_level(s_level, s_weight, s_ell, eps, set, cfg.cache_dir);
            if (fetched && summary.passes.size() + summary.fails.size() + summary.inconclusive.size() == fetched_count) {
                summary.complete = true;
                summary.newform_count = static_cast<std::int64_t>(fetched_count);
            }
            auto doc = json::parse(scan_emit(summary, fixture_hashes(summary.reports, set)));
            doc["scan"]["level_factorization"] = describe_level(s_level);
            print.document(doc);
            if (!summary.passes.empty()) return kAffirmative;
            return summary.witnesses_nonexistence() ? kNegative : kInconclusive;
        }

        if (*bern) {
            auto b = bernoulli(b_k);
            print.document({{"k", b_k}, {"value", b.to_string()}, {"numerator", b.num().get_str()},
                            {"denominator", b.den().get_str()}});
            return kAffirmative;
        }

        if (*sturm) {
            print.document({{"k", st_k},
                            {"level", level_json(st_n)},
                            {"sturm", sturm_bound(st_k, st_n)},
                            {"sturm_without_level", sturm_bound_without_level(st_k, st_n)}});
            return kAffirmative;
        }

        if (*deg) {
            auto d = degree_bound(d_p, d_q);
            print.document({{"p", d_p},
                            {"q", d_q},
                            {"gcd", d.gcd},
                            {"ell", d.ell ? json(*d.ell) : json(nullptr)},
                            {"ell4_exceeds_level", d.ell4_exceeds_level},
                            {"log_bound_lower", d.log_bound_lower.to_string()},
                            {"log_bound_upper", d.log_bound_upper.to_string()},
                            {"precision_bits", d.precision_bits},
                            {"min_degree", d.min_degree ? json(*d.min_degree) : json(nullptr)}});
            return kAffirmative;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
