#pragma once

#include "eiscong/numberfield.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace eiscong {

struct NewformRecord {
    std::string label;
    std::int64_t weight = 0;
    std::int64_t level = 0;
    std::map<std::int64_t, int> al_signs;
    std::vector<BigInt> field_poly;   // constant term first
    std::vector<NFCoefficient> an;    // an[0] is a_f(1)
    std::string source;

    std::int64_t n_available() const { return static_cast<std::int64_t>(an.size()); }
    const NFCoefficient& coeff(std::int64_t n) const { return an.at(static_cast<std::size_t>(n - 1)); }
    int field_degree() const { return static_cast<int>(field_poly.size()) - 1; }
    std::shared_ptr<const IntPolynomial> defining_poly() const;

    friend bool operator==(const NewformRecord&, const NewformRecord&) = default;
};

struct Violation {
    std::string code;  // e.g. "NotNormalized", "LevelNotSquarefree"
    std::string detail;
};

std::vector<Violation> validate(const NewformRecord& record);

/// Parses the fixture schema; ParseError names the offending field (or the
/// line for JSON syntax errors). Does not validate.
NewformRecord parse_record(const std::string& json_text);

/// Canonical form: sorted keys, no whitespace, coefficient numerators padded
/// to the field degree, integers for a rational field.
std::string serialize(const NewformRecord& record);

/// Reads, parses and validates; ValidationError lists the violations.
NewformRecord load_fixture(const std::filesystem::path& path);

/// Atomic write (temp file then rename) of the canonical form.
void write_record(const NewformRecord& record, const std::filesystem::path& path);

/// A directory of fixture files plus an optional manifest.json that marks
/// which (level, weight) spaces are complete.
class FixtureSet {
public:
    explicit FixtureSet(std::filesystem::path directory);

    const std::filesystem::path& directory() const { return dir_; }
    /// Labels for (level, weight), ascending.
    std::vector<std::string> labels(std::int64_t level, std::int64_t weight) const;
    /// Whether the manifest lists every newform of the space.
    bool is_complete(std::int64_t level, std::int64_t weight) const;
    std::optional<std::int64_t> newform_count(std::int64_t level, std::int64_t weight) const;
    std::filesystem::path path_of(const std::string& label) const;
    std::vector<std::pair<std::int64_t, std::int64_t>> spaces() const;

private:
    struct Space {
        std::vector<std::string> labels;
        bool complete = false;
        std::optional<std::int64_t> count;
    };
    std::filesystem::path dir_;
    std::map<std::pair<std::int64_t, std::int64_t>, Space> index_;
    std::map<std::string, std::filesystem::path> files_;
};

/// Fixture directory first, then the cache directory if given. Never
/// touches the network.
std::vector<NewformRecord> list_newforms(std::int64_t level, std::int64_t weight, const FixtureSet& fixtures,
                                         const std::optional<std::filesystem::path>& cache_dir = std::nullopt);

/// SHA-256 of a file's bytes, lowercase hex.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace eiscong
