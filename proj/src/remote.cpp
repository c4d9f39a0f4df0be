#include "eiscong/remote.hpp"

#include "eiscong/errors.hpp"
#include "json_value.hpp"

#include "httplib.h"

#include <atomic>
#include <thread>

namespace eiscong {

using detail::JsonValue;

namespace {

std::atomic<std::uint64_t> g_attempts{0};

std::string expand(std::string tmpl, std::int64_t level, std::int64_t weight, const std::string& label) {
    auto replace = [&](const std::string& key, const std::string& value) {
        for (auto pos = tmpl.find(key); pos != std::string::npos; pos = tmpl.find(key, pos + value.size()))
            tmpl.replace(pos, key.size(), value);
    };
    replace("{level}", std::to_string(level));
    replace("{weight}", std::to_string(weight));
    replace("{label}", label);
    return tmpl;
}

std::string http_get(const RemoteConfig& config, const std::string& target) {
    httplib::Client client(config.endpoint);
    client.set_connection_timeout(config.timeout);
    client.set_read_timeout(config.timeout);
    client.set_follow_location(true);
    auto delay = config.backoff_initial;
    std::string last_error;
    for (int attempt = 1; attempt <= config.attempts; ++attempt) {
        ++g_attempts;
        auto res = client.Get(target);
        if (res && res->status == 200) return res->body;
        last_error = res ? "HTTP " + std::to_string(res->status) : httplib::to_string(res.error());
        if (res && res->status >= 400 && res->status < 500 && res->status != 429) break;
        if (attempt < config.attempts) {
            std::this_thread::sleep_for(delay);
            delay = std::min(delay * 2, config.backoff_cap);
        }
    }
    throw NetworkError("GET " + config.endpoint + target + " failed: " + last_error);
}

const std::vector<JsonValue>& data_rows(const JsonValue& doc, const std::string& what) {
    if (doc.kind == JsonValue::Kind::Array) return doc.items;
    const auto* data = doc.find("data");
    if (!data || data->kind != JsonValue::Kind::Array) throw SchemaError(what + " response has no data array");
    return data->items;
}

const JsonValue& field(const JsonValue& row, const std::string& key, const std::string& what) {
    const auto* v = row.find(key);
    if (!v || v->kind == JsonValue::Kind::Null) throw SchemaError(what + " lacks '" + key + "'");
    return *v;
}

BigInt integer(const JsonValue& v, const std::string& what) {
    if (v.kind != JsonValue::Kind::Integer) throw SchemaError(what + " is not an integer");
    return v.integer;
}

std::vector<BigInt> integer_list(const JsonValue& v, const std::string& what) {
    if (v.kind != JsonValue::Kind::Array) throw SchemaError(what + " is not a list");
    std::vector<BigInt> out;
    for (const auto& x : v.items) out.push_back(integer(x, what));
    return out;
}

NewformRecord convert(const JsonValue& nf, const JsonValue& coeffs, const std::string& source) {
    NewformRecord r;
    const auto& label = field(nf, "label", "newform row");
    if (label.kind != JsonValue::Kind::String) throw SchemaError("newform label is not a string");
    r.label = label.text;
    auto ctx = "newform " + r.label;
    r.level = integer(field(nf, "level", ctx), ctx + " level").get_si();
    r.weight = integer(field(nf, "weight", ctx), ctx + " weight").get_si();
    r.source = source;

    const auto& al = field(nf, "atkin_lehner_eigenvals", ctx);
    if (al.kind != JsonValue::Kind::Array) throw SchemaError(ctx + " Atkin-Lehner data is not a list");
    for (const auto& pair : al.items) {
        auto ps = integer_list(pair, ctx + " Atkin-Lehner pair");
        if (ps.size() != 2) throw SchemaError(ctx + " Atkin-Lehner pair must be [p, sign]");
        r.al_signs[ps[0].get_si()] = static_cast<int>(ps[1].get_si());
    }

    r.field_poly = integer_list(field(coeffs, "field_poly", ctx), ctx + " field_poly");
    const auto degree = r.field_poly.size() - 1;

    // Basis of the coefficient ring in powers of the generator.
    std::vector<NFCoefficient> basis;
    const auto* nums = coeffs.find("hecke_ring_numerators");
    const auto* dens = coeffs.find("hecke_ring_denominators");
    if (nums && dens && nums->kind == JsonValue::Kind::Array && dens->kind == JsonValue::Kind::Array) {
        if (nums->items.size() != degree || dens->items.size() != degree)
            throw SchemaError(ctx + " Hecke ring basis has the wrong size");
        for (std::size_t i = 0; i < degree; ++i)
            basis.emplace_back(integer_list(nums->items[i], ctx + " basis numerator"), integer(dens->items[i], ctx + " basis denominator"));
    } else {
        for (std::size_t i = 0; i < degree; ++i) {
            std::vector<BigInt> e(i + 1, 0);
            e[i] = 1;
            basis.emplace_back(std::move(e), BigInt(1));
        }
    }

    const auto& an = field(coeffs, "an", ctx);
    if (an.kind != JsonValue::Kind::Array || an.items.empty()) throw SchemaError(ctx + " has no q-expansion");
    for (const auto& entry : an.items) {
        std::vector<BigInt> coords = entry.kind == JsonValue::Kind::Integer ? std::vector<BigInt>{entry.integer}
                                                                            : integer_list(entry, ctx + " an entry");
        if (coords.size() != degree) throw SchemaError(ctx + " an entry has the wrong length");
        NFCoefficient c;
        for (std::size_t i = 0; i < degree; ++i) {
            if (coords[i] == 0) continue;
            auto scaled = basis[i].num();
            for (auto& x : scaled) x *= coords[i];
            c = nf_add(c, NFCoefficient(std::move(scaled), basis[i].den()));
        }
        r.an.push_back(std::move(c));
    }
    return r;
}

}  // namespace

NewformRecord record_from_remote(const std::string& newform_json_object, const std::string& coefficients_json_object,
                                 const std::string& source) {
    return convert(detail::parse_json(newform_json_object), detail::parse_json(coefficients_json_object), source);
}

std::vector<NewformRecord> fetch_remote(std::int64_t level, std::int64_t weight, const RemoteConfig& config) {
    if (config.endpoint.empty()) throw PreconditionError("remote endpoint is not configured");
    auto target = expand(config.newforms_template, level, weight, "");
    JsonValue listing;
    try {
        listing = detail::parse_json(http_get(config, target));
    } catch (const ParseError& e) {
        throw SchemaError(std::string("newform listing is not JSON: ") + e.what());
    }
    std::vector<NewformRecord> out;
    for (const auto& row : data_rows(listing, "newform listing")) {
        const auto& label = field(row, "label", "newform row");
        auto coeff_target = expand(config.coefficients_template, level, weight, label.text);
        JsonValue coeff_doc;
        try {
            coeff_doc = detail::parse_json(http_get(config, coeff_target));
        } catch (const ParseError& e) {
            throw SchemaError("coefficient payload for " + label.text + " is not JSON: " + e.what());
        }
        const auto& rows = data_rows(coeff_doc, "coefficient payload");
        if (rows.empty()) throw SchemaError("no coefficient data for " + label.text);
        auto record = convert(row, rows.front(), config.endpoint + coeff_target);
        auto violations = validate(record);
        if (!violations.empty()) throw SchemaError(record.label + " fails validation: " + violations.front().code);
        out.push_back(std::move(record));
    }
    for (const auto& r : out) write_record(r, config.cache_dir / (r.label + ".json"));
    return out;
}

std::uint64_t network_attempts() { return g_attempts.load(); }

}  // namespace eiscong
