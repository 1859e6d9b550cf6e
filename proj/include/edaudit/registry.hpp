#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "edaudit/json_util.hpp"

namespace edaudit {

// One line of the append-only claim registry. registry_claim_id is derived
// from the entry content; supersedes links re-audits of the same claim.
struct RegistryEntry {
    std::string registry_claim_id;
    std::string claim_id;
    std::string model_version;
    std::string report_digest;
    std::string classification;
    std::optional<std::string> supersedes;
};

struct RegistryFilter {
    std::optional<std::string> claim_id;
    std::optional<std::string> model_version;
    std::optional<std::string> classification;
};

// Appends one entry for a linted machine-readable report. The report must
// lint with zero error findings. Prior entries are never touched; a new
// audit of an already-registered claim supersedes the latest prior entry.
RegistryEntry registry_append(const std::filesystem::path& registry_path, const Json& report);

// Entries in append order, each verified against its stored digest.
std::vector<RegistryEntry> registry_query(const std::filesystem::path& registry_path,
                                          const RegistryFilter& filter = {});

Json registry_entry_to_json(const RegistryEntry& entry);

}  // namespace edaudit
