#include "edaudit/types.hpp"

#include <algorithm>
#include <numeric>

namespace edaudit {

bool ContextTemplate::carries_cue(const std::string& cue_id) const {
    return std::find(cue_ids.begin(), cue_ids.end(), cue_id) != cue_ids.end();
}

const Cue* ContextBundle::find_cue(const std::string& cue_id) const {
    for (const Cue& cue : cue_inventory) {
        if (cue.id == cue_id) return &cue;
    }
    return nullptr;
}

std::vector<double> ContextBundle::normalized_weights() const {
    std::vector<double> weights;
    weights.reserve(templates.size());
    for (const ContextTemplate& t : templates) weights.push_back(t.weight);
    double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (total > 0.0) {
        for (double& w : weights) w /= total;
    }
    return weights;
}

const char* to_string(BundleKind k) {
    switch (k) {
        case BundleKind::test_like: return "test_like";
        case BundleKind::deployment_continuous: return "deployment_continuous";
    }
    return "?";
}

const char* to_string(Feasibility f) {
    switch (f) {
        case Feasibility::feasible: return "feasible";
        case Feasibility::infeasible_technical: return "infeasible_technical";
        case Feasibility::infeasible_ontological: return "infeasible_ontological";
    }
    return "?";
}

const char* to_string(SafetyDirection d) {
    switch (d) {
        case SafetyDirection::lower_is_safer: return "lower_is_safer";
        case SafetyDirection::higher_is_safer: return "higher_is_safer";
    }
    return "?";
}

const char* to_string(ClaimForm f) {
    switch (f) {
        case ClaimForm::existence: return "existence";
        case ClaimForm::bound_upper: return "bound_upper";
        case ClaimForm::bound_lower: return "bound_lower";
        case ClaimForm::prevalence: return "prevalence";
        case ClaimForm::threshold: return "threshold";
    }
    return "?";
}

const char* to_string(EvidenceLayer l) {
    switch (l) {
        case EvidenceLayer::behavioural_differential: return "behavioural_differential";
        case EvidenceLayer::verbalised_recognition: return "verbalised_recognition";
        case EvidenceLayer::latent_recognition: return "latent_recognition";
        case EvidenceLayer::context_cue_sensitivity: return "context_cue_sensitivity";
    }
    return "?";
}

const char* to_string(AccessLevel a) {
    switch (a) {
        case AccessLevel::api_only: return "api_only";
        case AccessLevel::lab_cooperation: return "lab_cooperation";
        case AccessLevel::interpretability_access: return "interpretability_access";
    }
    return "?";
}

}  // namespace edaudit
