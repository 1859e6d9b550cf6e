#pragma once

#include <filesystem>

#include "edaudit/json_util.hpp"
#include "edaudit/property_catalog.hpp"
#include "edaudit/types.hpp"

namespace edaudit {

// Validates a raw claim-spec document against the catalog. Normalizes
// claim_form synonyms, enforces the threshold/tau pairing, and rejects
// unknown properties and unknown fields.
ClaimSpec validate_claim_spec(const Json& raw, const PropertyCatalog& catalog);
ClaimSpec load_claim_spec(const std::filesystem::path& path, const PropertyCatalog& catalog);

Json claim_to_json(const ClaimSpec& claim);

SafetyDirection parse_safety_direction(const std::string& text, const std::string& where);
ClaimForm parse_claim_form(const std::string& text, const std::string& where);

}  // namespace edaudit
