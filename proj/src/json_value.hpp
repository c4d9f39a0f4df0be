#pragma once

// Minimal JSON tree that keeps integer tokens exact. nlohmann's DOM would
// round integers wider than 64 bits through double.

#include "eiscong/bigrat.hpp"

#include <string>
#include <utility>
#include <vector>

namespace eiscong::detail {

struct JsonValue {
    enum class Kind { Null, Bool, Integer, Real, String, Array, Object };

    Kind kind = Kind::Null;
    bool boolean = false;
    BigInt integer;
    std::string text;  // string payload, or the raw token of a real
    std::vector<JsonValue> items;
    std::vector<std::pair<std::string, JsonValue>> members;

    const JsonValue* find(const std::string& key) const;
};

/// Throws ParseError carrying the line of the syntax error.
JsonValue parse_json(const std::string& input);

std::string quote_json(const std::string& s);

}  // namespace eiscong::detail
