#include "json_value.hpp"

#include "eiscong/errors.hpp"

#include "json.hpp"

#include <algorithm>

namespace eiscong::detail {

namespace {

class TreeBuilder : public nlohmann::json_sax<nlohmann::json> {
public:
    explicit TreeBuilder(const std::string& input) : input_(input) {}

    bool null() override { return put({}); }
    bool boolean(bool v) override {
        JsonValue j;
        j.kind = JsonValue::Kind::Bool;
        j.boolean = v;
        return put(std::move(j));
    }
    bool number_integer(number_integer_t v) override { return integer(std::to_string(v)); }
    bool number_unsigned(number_unsigned_t v) override { return integer(std::to_string(v)); }
    bool number_float(number_float_t, const string_t& raw) override {
        if (raw.find_first_of(".eE") == std::string::npos) return integer(raw);
        JsonValue j;
        j.kind = JsonValue::Kind::Real;
        j.text = raw;
        return put(std::move(j));
    }
    bool string(string_t& v) override {
        JsonValue j;
        j.kind = JsonValue::Kind::String;
        j.text = v;
        return put(std::move(j));
    }
    bool binary(binary_t&) override { return false; }
    bool start_object(std::size_t) override { return open(JsonValue::Kind::Object); }
    bool key(string_t& k) override {
        pending_key_ = k;
        return true;
    }
    bool end_object() override { return close(); }
    bool start_array(std::size_t) override { return open(JsonValue::Kind::Array); }
    bool end_array() override { return close(); }
    bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) override {
        auto end = std::min(position, input_.size());
        auto line = 1 + static_cast<std::size_t>(std::count(input_.begin(), input_.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
        throw ParseError(ex.what(), {}, line);
    }

    JsonValue take() { return std::move(root_); }

private:
    bool integer(const std::string& raw) {
        JsonValue j;
        j.kind = JsonValue::Kind::Integer;
        j.integer = BigInt(raw, 10);
        return put(std::move(j));
    }

    bool put(JsonValue v) {
        if (stack_.empty()) {
            root_ = std::move(v);
            return true;
        }
        auto& top = *stack_.back();
        if (top.kind == JsonValue::Kind::Array)
            top.items.push_back(std::move(v));
        else {
            if (top.find(pending_key_)) throw ParseError("duplicate key '" + pending_key_ + "'", pending_key_);
            top.members.emplace_back(std::move(pending_key_), std::move(v));
        }
        return true;
    }

    bool open(JsonValue::Kind kind) {
        JsonValue j;
        j.kind = kind;
        JsonValue* slot;
        if (stack_.empty()) {
            root_ = std::move(j);
            slot = &root_;
        } else {
            put(std::move(j));
            auto& top = *stack_.back();
            slot = top.kind == JsonValue::Kind::Array ? &top.items.back() : &top.members.back().second;
        }
        stack_.push_back(slot);
        return true;
    }

    bool close() {
        stack_.pop_back();
        return true;
    }

    const std::string& input_;
    JsonValue root_;
    std::vector<JsonValue*> stack_;
    std::string pending_key_;
};

}  // namespace

const JsonValue* JsonValue::find(const std::string& key) const {
    for (const auto& [k, v] : members)
        if (k == key) return &v;
    return nullptr;
}

JsonValue parse_json(const std::string& input) {
    TreeBuilder builder(input);
    nlohmann::json::sax_parse(input, &builder);
    return builder.take();
}

std::string quote_json(const std::string& s) { return nlohmann::json(s).dump(); }

}  // namespace eiscong::detail
