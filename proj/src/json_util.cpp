#include "edaudit/json_util.hpp"

#include <fstream>

namespace edaudit {

Json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::parse_error, "cannot open " + path.string());
    Json value = Json::parse(in, nullptr, false);
    if (value.is_discarded()) fail(Errc::parse_error, "invalid JSON in " + path.string());
    return value;
}

void write_json_file(const std::filesystem::path& path, const Json& value) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) fail(Errc::io_error, "cannot write " + path.string());
    out << value.dump(2) << "\n";
}

StrictObject::StrictObject(const Json& value, std::string where)
    : value_(value), where_(std::move(where)) {
    if (!value_.is_object()) fail(Errc::parse_error, where_ + ": expected an object");
}

const Json& StrictObject::require(const std::string& key) {
    auto it = value_.find(key);
    if (it == value_.end()) fail(Errc::parse_error, where_ + ": missing field '" + key + "'");
    consumed_.insert(key);
    return *it;
}

const Json* StrictObject::optional(const std::string& key) {
    auto it = value_.find(key);
    if (it == value_.end()) return nullptr;
    consumed_.insert(key);
    return &*it;
}

std::string StrictObject::require_string(const std::string& key) {
    const Json& v = require(key);
    if (!v.is_string()) fail(Errc::parse_error, where_ + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

double StrictObject::require_number(const std::string& key) {
    const Json& v = require(key);
    if (!v.is_number()) fail(Errc::parse_error, where_ + ": field '" + key + "' must be a number");
    return v.get<double>();
}

std::string StrictObject::optional_string(const std::string& key, const std::string& fallback) {
    const Json* v = optional(key);
    if (!v) return fallback;
    if (!v->is_string()) fail(Errc::parse_error, where_ + ": field '" + key + "' must be a string");
    return v->get<std::string>();
}

double StrictObject::optional_number(const std::string& key, double fallback) {
    const Json* v = optional(key);
    if (!v) return fallback;
    if (!v->is_number()) fail(Errc::parse_error, where_ + ": field '" + key + "' must be a number");
    return v->get<double>();
}

bool StrictObject::optional_bool(const std::string& key, bool fallback) {
    const Json* v = optional(key);
    if (!v) return fallback;
    if (!v->is_boolean()) fail(Errc::parse_error, where_ + ": field '" + key + "' must be a bool");
    return v->get<bool>();
}

void StrictObject::finish() const {
    for (auto it = value_.begin(); it != value_.end(); ++it) {
        if (!consumed_.count(it.key())) {
            fail(Errc::parse_error, where_ + ": unknown field '" + it.key() + "'");
        }
    }
}

}  // namespace edaudit
