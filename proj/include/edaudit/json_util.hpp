#pragma once

#include <filesystem>
#include <set>
#include <string>

#include <json.hpp>

#include "edaudit/errors.hpp"

namespace edaudit {

using Json = nlohmann::json;

Json load_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& value);

// Strict-mode accessor over a JSON object: every key must be consumed via
// require/optional before finish(), so unknown fields are rejected and lint
// semantics stay sound.
class StrictObject {
public:
    StrictObject(const Json& value, std::string where);

    const Json& require(const std::string& key);
    const Json* optional(const std::string& key);

    std::string require_string(const std::string& key);
    double require_number(const std::string& key);
    // Missing key yields fallback.
    std::string optional_string(const std::string& key, const std::string& fallback = "");
    double optional_number(const std::string& key, double fallback);
    bool optional_bool(const std::string& key, bool fallback);

    void finish() const;  // throws ParseError on unconsumed keys
    const std::string& where() const { return where_; }

private:
    const Json& value_;
    std::string where_;
    std::set<std::string> consumed_;
};

}  // namespace edaudit
