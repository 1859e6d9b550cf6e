#include "edaudit/claim_io.hpp"

#include <algorithm>
#include <cctype>

namespace edaudit {

namespace {

std::string lowered(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool is_blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

SafetyDirection parse_safety_direction(const std::string& text, const std::string& where) {
    const std::string t = lowered(text);
    if (t == "lower_is_safer" || t == "lower") return SafetyDirection::lower_is_safer;
    if (t == "higher_is_safer" || t == "higher") return SafetyDirection::higher_is_safer;
    fail(Errc::parse_error, where + ": unknown safety_direction '" + text + "'");
}

ClaimForm parse_claim_form(const std::string& text, const std::string& where) {
    const std::string t = lowered(text);
    if (t == "existence" || t == "exists") return ClaimForm::existence;
    if (t == "bound_upper" || t == "upper_bound" || t == "bound-upper") return ClaimForm::bound_upper;
    if (t == "bound_lower" || t == "lower_bound" || t == "bound-lower") return ClaimForm::bound_lower;
    if (t == "prevalence" || t == "rate" || t == "point") return ClaimForm::prevalence;
    if (t == "threshold" || t == "threshold_claim") return ClaimForm::threshold;
    fail(Errc::parse_error, where + ": unknown claim_form '" + text + "'");
}

ClaimSpec validate_claim_spec(const Json& raw, const PropertyCatalog& catalog) {
    StrictObject doc(raw, "claim spec");

    ClaimSpec claim;
    claim.claim_id = doc.require_string("claim_id");
    claim.verbatim_claim = doc.require_string("verbatim_claim");
    claim.property_id = doc.require_string("property_id");
    claim.safety_direction = parse_safety_direction(doc.require_string("safety_direction"), doc.where());
    claim.claim_form = parse_claim_form(doc.require_string("claim_form"), doc.where());
    if (const Json* tau = doc.optional("tau"); tau && !tau->is_null()) {
        if (!tau->is_number()) fail(Errc::parse_error, "claim spec: tau must be a number");
        claim.tau = tau->get<double>();
    }
    claim.deployment_context_note = doc.optional_string("deployment_context_note");
    claim.evidence_source = doc.optional_string("evidence_source");
    claim.model_version = doc.require_string("model_version");
    doc.finish();

    if (claim.verbatim_claim.empty() || is_blank(claim.verbatim_claim)) {
        fail(Errc::empty_claim_text, "claim " + claim.claim_id + " has empty verbatim_claim");
    }
    const PropertyInfo* prop = catalog.find(claim.property_id);
    if (!prop) fail(Errc::unknown_property, "property_id '" + claim.property_id + "'");

    if (claim.claim_form == ClaimForm::threshold) {
        if (!claim.tau) fail(Errc::missing_threshold, "threshold claim " + claim.claim_id + " lacks tau");
        if (!prop->range.contains(*claim.tau)) {
            fail(Errc::tau_out_of_range, "tau " + std::to_string(*claim.tau) + " outside [" +
                                             std::to_string(prop->range.a) + "," +
                                             std::to_string(prop->range.b) + "]");
        }
    } else if (claim.tau) {
        fail(Errc::parse_error, "claim " + claim.claim_id + ": tau only allowed on threshold claims");
    }
    return claim;
}

ClaimSpec load_claim_spec(const std::filesystem::path& path, const PropertyCatalog& catalog) {
    return validate_claim_spec(load_json_file(path), catalog);
}

Json claim_to_json(const ClaimSpec& claim) {
    Json out{
        {"claim_id", claim.claim_id},
        {"verbatim_claim", claim.verbatim_claim},
        {"property_id", claim.property_id},
        {"safety_direction", to_string(claim.safety_direction)},
        {"claim_form", to_string(claim.claim_form)},
        {"deployment_context_note", claim.deployment_context_note},
        {"evidence_source", claim.evidence_source},
        {"model_version", claim.model_version},
    };
    if (claim.tau) out["tau"] = *claim.tau;
    return out;
}

}  // namespace edaudit
