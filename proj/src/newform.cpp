#include "eiscong/newform.hpp"

#include "eiscong/arith.hpp"
#include "eiscong/errors.hpp"
#include "json_value.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace eiscong {

namespace fs = std::filesystem;
using detail::JsonValue;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const JsonValue& require(const JsonValue& obj, const std::string& key) {
    const auto* v = obj.find(key);
    if (!v) throw ParseError("missing field '" + key + "'", key);
    return *v;
}

BigInt as_integer(const JsonValue& v, const std::string& field) {
    if (v.kind != JsonValue::Kind::Integer) throw ParseError("field '" + field + "' must be an integer", field);
    return v.integer;
}

std::int64_t as_int64(const JsonValue& v, const std::string& field) {
    BigInt x = as_integer(v, field);
    if (!x.fits_slong_p()) throw ParseError("field '" + field + "' is out of range", field);
    return x.get_si();
}

std::string as_string(const JsonValue& v, const std::string& field) {
    if (v.kind != JsonValue::Kind::String) throw ParseError("field '" + field + "' must be a string", field);
    return v.text;
}

const std::vector<JsonValue>& as_array(const JsonValue& v, const std::string& field) {
    if (v.kind != JsonValue::Kind::Array) throw ParseError("field '" + field + "' must be an array", field);
    return v.items;
}

NFCoefficient parse_coeff(const JsonValue& v, const std::string& field) {
    if (v.kind == JsonValue::Kind::Integer) return NFCoefficient(BigRat(v.integer));
    if (v.kind != JsonValue::Kind::Object) throw ParseError("coefficient must be an integer or {den, num}", field);
    for (const auto& [k, _] : v.members)
        if (k != "den" && k != "num") throw ParseError("unexpected key '" + k + "' in coefficient", field);
    BigInt den = as_integer(require(v, "den"), field + ".den");
    if (den <= 0) throw ParseError("coefficient denominator must be positive", field + ".den");
    std::vector<BigInt> num;
    const auto& items = as_array(require(v, "num"), field + ".num");
    if (items.empty()) throw ParseError("coefficient numerator is empty", field + ".num");
    for (std::size_t i = 0; i < items.size(); ++i) num.push_back(as_integer(items[i], field + ".num[" + std::to_string(i) + "]"));
    return {std::move(num), std::move(den)};
}

void put_coeff(std::string& out, const NFCoefficient& c, int field_degree) {
    if (field_degree == 1 && c.den() == 1) {
        out += c.num()[0].get_str();
        return;
    }
    out += "{\"den\":" + c.den().get_str() + ",\"num\":[";
    auto width = std::max<std::size_t>(static_cast<std::size_t>(std::max(field_degree, 1)), c.num().size());
    for (std::size_t i = 0; i < width; ++i) {
        if (i) out += ',';
        out += i < c.num().size() ? c.num()[i].get_str() : "0";
    }
    out += "]}";
}

}  // namespace

std::shared_ptr<const IntPolynomial> NewformRecord::defining_poly() const {
    return std::make_shared<IntPolynomial>(field_poly);
}

std::vector<Violation> validate(const NewformRecord& r) {
    std::vector<Violation> out;
    auto add = [&](std::string code, std::string detail) { out.push_back({std::move(code), std::move(detail)}); };
    if (r.level < 1) {
        add("LevelNotPositive", "level " + std::to_string(r.level));
    } else {
        if (!is_squarefree(r.level)) add("LevelNotSquarefree", "level " + std::to_string(r.level) + " is not squarefree");
        std::set<std::int64_t> primes;
        for (auto p : prime_divisors(r.level)) primes.insert(p);
        std::set<std::int64_t> keys;
        for (auto [p, s] : r.al_signs) keys.insert(p);
        if (primes != keys) add("SignDomainMismatch", "al_signs must cover exactly the prime divisors of the level");
    }
    for (auto [p, s] : r.al_signs)
        if (s != 1 && s != -1) add("SignNotUnit", "al_signs[" + std::to_string(p) + "] = " + std::to_string(s));
    if (r.weight < 2 || r.weight % 2 != 0) add("WeightNotEven", "weight " + std::to_string(r.weight));
    if (r.field_poly.size() < 2)
        add("PolyDegreeZero", "defining polynomial must have degree >= 1");
    else if (r.field_poly.back() != 1)
        add("PolyNotMonic", "defining polynomial leading coefficient " + r.field_poly.back().get_str());
    if (r.an.empty()) {
        add("NoCoefficients", "an is empty");
    } else if (!(r.an[0] == NFCoefficient(BigRat(1)))) {
        add("NotNormalized", "a_f(1) = " + r.an[0].to_string());
    }
    if (r.field_poly.size() >= 2) {
        for (std::size_t i = 0; i < r.an.size(); ++i)
            if (r.an[i].degree() >= r.field_degree()) {
                add("CoefficientDegree", "a_f(" + std::to_string(i + 1) + ") has degree >= field degree");
                break;
            }
    }
    auto prefix = std::to_string(r.level) + "." + std::to_string(r.weight) + ".";
    if (r.label.rfind(prefix, 0) != 0) add("LabelMismatch", "label '" + r.label + "' does not start with " + prefix);
    return out;
}

NewformRecord parse_record(const std::string& json_text) {
    JsonValue root = detail::parse_json(json_text);
    if (root.kind != JsonValue::Kind::Object) throw ParseError("record must be a JSON object");
    static const std::set<std::string> known = {"al_signs", "an", "field_poly", "label", "level", "source", "weight"};
    for (const auto& [k, _] : root.members)
        if (!known.count(k)) throw ParseError("unexpected field '" + k + "'", k);

    NewformRecord r;
    r.label = as_string(require(root, "label"), "label");
    r.weight = as_int64(require(root, "weight"), "weight");
    r.level = as_int64(require(root, "level"), "level");
    r.source = as_string(require(root, "source"), "source");

    const auto& signs = require(root, "al_signs");
    if (signs.kind != JsonValue::Kind::Object) throw ParseError("field 'al_signs' must be an object", "al_signs");
    for (const auto& [k, v] : signs.members) {
        std::int64_t p;
        try {
            std::size_t used = 0;
            p = std::stoll(k, &used);
            if (used != k.size()) throw std::invalid_argument(k);
        } catch (const std::logic_error&) {
            throw ParseError("al_signs key '" + k + "' is not an integer", "al_signs");
        }
        r.al_signs[p] = static_cast<int>(as_int64(v, "al_signs." + k));
    }

    const auto& poly = as_array(require(root, "field_poly"), "field_poly");
    for (std::size_t i = 0; i < poly.size(); ++i)
        r.field_poly.push_back(as_integer(poly[i], "field_poly[" + std::to_string(i) + "]"));

    const auto& an = as_array(require(root, "an"), "an");
    for (std::size_t i = 0; i < an.size(); ++i) r.an.push_back(parse_coeff(an[i], "an[" + std::to_string(i) + "]"));
    return r;
}

std::string serialize(const NewformRecord& r) {
    std::vector<std::pair<std::string, int>> signs;
    for (auto [p, s] : r.al_signs) signs.emplace_back(std::to_string(p), s);
    std::sort(signs.begin(), signs.end());

    std::string out = "{\"al_signs\":{";
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (i) out += ',';
        out += detail::quote_json(signs[i].first) + ":" + std::to_string(signs[i].second);
    }
    out += "},\"an\":[";
    for (std::size_t i = 0; i < r.an.size(); ++i) {
        if (i) out += ',';
        put_coeff(out, r.an[i], r.field_degree());
    }
    out += "],\"field_poly\":[";
    for (std::size_t i = 0; i < r.field_poly.size(); ++i) {
        if (i) out += ',';
        out += r.field_poly[i].get_str();
    }
    out += "],\"label\":" + detail::quote_json(r.label);
    out += ",\"level\":" + std::to_string(r.level);
    out += ",\"source\":" + detail::quote_json(r.source);
    out += ",\"weight\":" + std::to_string(r.weight) + "}";
    return out;
}

NewformRecord load_fixture(const fs::path& path) {
    NewformRecord r;
    try {
        r = parse_record(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), e.field(), e.line());
    }
    auto violations = validate(r);
    if (!violations.empty()) {
        std::string msg = path.string() + " fails validation:";
        for (const auto& v : violations) msg += " " + v.code + " (" + v.detail + ");";
        throw ValidationError(msg);
    }
    return r;
}

void write_record(const NewformRecord& record, const fs::path& path) {
    fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << serialize(record) << '\n';
        if (!out.flush()) throw IoError("cannot write " + tmp.string());
    }
    fs::rename(tmp, path);
}

FixtureSet::FixtureSet(fs::path directory) : dir_(std::move(directory)) {
    if (!fs::is_directory(dir_)) throw IoError("fixture directory " + dir_.string() + " does not exist");
    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(dir_))
        if (entry.is_regular_file() && entry.path().extension() == ".json" && entry.path().filename() != "manifest.json")
            paths.push_back(entry.path());
    std::sort(paths.begin(), paths.end());
    for (const auto& path : paths) {
        JsonValue root;
        try {
            root = detail::parse_json(read_file(path));
        } catch (const ParseError& e) {
            throw ParseError(path.string() + ": " + e.what(), e.field(), e.line());
        }
        if (root.kind != JsonValue::Kind::Object) throw ParseError(path.string() + ": record must be a JSON object");
        auto label = as_string(require(root, "label"), "label");
        auto level = as_int64(require(root, "level"), "level");
        auto weight = as_int64(require(root, "weight"), "weight");
        if (!files_.emplace(label, path).second) throw ValidationError("duplicate fixture label " + label);
        index_[{level, weight}].labels.push_back(label);
    }
    for (auto& [key, space] : index_) std::sort(space.labels.begin(), space.labels.end());

    auto manifest = dir_ / "manifest.json";
    if (!fs::exists(manifest)) return;
    JsonValue root = detail::parse_json(read_file(manifest));
    const auto* spaces = root.find("spaces");
    if (!spaces || spaces->kind != JsonValue::Kind::Array) throw ParseError("manifest lacks a 'spaces' array", "spaces");
    for (const auto& s : spaces->items) {
        auto level = as_int64(require(s, "level"), "level");
        auto weight = as_int64(require(s, "weight"), "weight");
        auto& space = index_[{level, weight}];
        const auto* complete = s.find("complete");
        space.complete = complete && complete->kind == JsonValue::Kind::Bool && complete->boolean;
        if (const auto* count = s.find("newform_count")) space.count = as_int64(*count, "newform_count");
        if (const auto* labels = s.find("labels")) {
            std::vector<std::string> listed;
            for (const auto& l : as_array(*labels, "labels")) listed.push_back(as_string(l, "labels"));
            std::sort(listed.begin(), listed.end());
            if (listed != space.labels)
                throw ValidationError("manifest labels for " + std::to_string(level) + "." + std::to_string(weight) +
                                      " do not match the fixture files");
        }
    }
}

std::vector<std::string> FixtureSet::labels(std::int64_t level, std::int64_t weight) const {
    auto it = index_.find({level, weight});
    return it == index_.end() ? std::vector<std::string>{} : it->second.labels;
}

bool FixtureSet::is_complete(std::int64_t level, std::int64_t weight) const {
    auto it = index_.find({level, weight});
    if (it == index_.end() || !it->second.complete) return false;
    return !it->second.count || *it->second.count == static_cast<std::int64_t>(it->second.labels.size());
}

std::optional<std::int64_t> FixtureSet::newform_count(std::int64_t level, std::int64_t weight) const {
    auto it = index_.find({level, weight});
    return it == index_.end() ? std::nullopt : it->second.count;
}

fs::path FixtureSet::path_of(const std::string& label) const {
    auto it = files_.find(label);
    if (it == files_.end()) throw IoError("no fixture labelled " + label);
    return it->second;
}

std::vector<std::pair<std::int64_t, std::int64_t>> FixtureSet::spaces() const {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (const auto& [key, space] : index_) out.push_back(key);
    return out;
}

std::vector<NewformRecord> list_newforms(std::int64_t level, std::int64_t weight, const FixtureSet& fixtures,
                                         const std::optional<fs::path>& cache_dir) {
    std::vector<NewformRecord> out;
    std::set<std::string> seen;
    for (const auto& label : fixtures.labels(level, weight)) {
        out.push_back(load_fixture(fixtures.path_of(label)));
        seen.insert(label);
    }
    if (cache_dir && fs::is_directory(*cache_dir)) {
        auto prefix = std::to_string(level) + "." + std::to_string(weight) + ".";
        std::vector<fs::path> paths;
        for (const auto& entry : fs::directory_iterator(*cache_dir)) {
            auto name = entry.path().filename().string();
            if (entry.is_regular_file() && entry.path().extension() == ".json" && name.rfind(prefix, 0) == 0)
                paths.push_back(entry.path());
        }
        std::sort(paths.begin(), paths.end());
        for (const auto& path : paths) {
            auto r = load_fixture(path);
            if (r.level == level && r.weight == weight && seen.insert(r.label).second) out.push_back(std::move(r));
        }
    }
    return out;
}

std::string sha256_file(const fs::path& path) {
    auto bytes = read_file(path);
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
        throw Error("sha256 failed for " + path.string());
    std::ostringstream hex;
    for (unsigned i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return hex.str();
}

}  // namespace eiscong
