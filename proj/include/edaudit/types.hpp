#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace edaudit {

// An evaluation task. `payload` is the raw prompt content inserted into a
// context template's task slot.
struct Task {
    std::string id;
    std::string payload;
    std::vector<std::string> tags;
    double weight = 1.0;  // task-distribution weight, uniform by default
};

// Closed score interval [a, b] with a < b.
struct ScoreRange {
    double a = 0.0;
    double b = 1.0;

    bool contains(double x) const { return x >= a && x <= b; }
    double width() const { return b - a; }
};

// How a cue is removed from a context template. Declarative so ablations are
// reproducible and diffable.
struct AblationRule {
    enum class Kind {
        delete_phrase,     // erase every occurrence of `phrase` from prompts
        swap_frame,        // replace user_frame with `replacement`
        drop_scaffold_key  // remove scaffold entry named `key`
    };
    Kind kind = Kind::delete_phrase;
    std::string phrase;        // delete_phrase
    std::string replacement;   // swap_frame (must keep the task slot)
    std::string scaffold_key;  // drop_scaffold_key
};

// A distinguishing feature of test-like contexts, with its removal rule.
struct Cue {
    std::string id;
    std::string description;
    AblationRule ablation_rule;
};

// The task slot marker a user_frame must contain exactly once.
inline constexpr const char* kTaskSlot = "{task}";

// One context variant: framing plus scaffold around a task.
struct ContextTemplate {
    std::string id;
    std::string system_prompt;  // may be empty
    std::string user_frame;     // contains exactly one task slot
    std::map<std::string, std::string> scaffold;
    std::vector<std::string> cue_ids;
    double weight = 1.0;

    bool carries_cue(const std::string& cue_id) const;
};

enum class BundleKind { test_like, deployment_continuous };
enum class Feasibility { feasible, infeasible_technical, infeasible_ontological };

// A named context distribution: a finite weighted mixture over templates plus
// the cue inventory those templates reference. Infeasible bundles may be
// empty; they are usable only by the stopping rule.
struct ContextBundle {
    std::string name;
    BundleKind kind = BundleKind::test_like;
    std::vector<ContextTemplate> templates;
    std::vector<Cue> cue_inventory;
    Feasibility feasibility = Feasibility::feasible;
    std::string provenance_note;

    const Cue* find_cue(const std::string& cue_id) const;
    // Template weights normalized to sum 1 (lazy; raw weights kept on load).
    std::vector<double> normalized_weights() const;
};

enum class SafetyDirection { lower_is_safer, higher_is_safer };
enum class ClaimForm { existence, bound_upper, bound_lower, prevalence, threshold };

// A safety claim mapped into measurable form.
struct ClaimSpec {
    std::string claim_id;
    std::string verbatim_claim;
    std::string property_id;
    SafetyDirection safety_direction = SafetyDirection::lower_is_safer;
    ClaimForm claim_form = ClaimForm::prevalence;
    std::optional<double> tau;  // present exactly when claim_form == threshold
    std::string deployment_context_note;
    std::string evidence_source;
    std::string model_version;
};

enum class EvidenceLayer {
    behavioural_differential,
    verbalised_recognition,
    latent_recognition,
    context_cue_sensitivity
};
enum class AccessLevel { api_only, lab_cooperation, interpretability_access };

// Externally supplied evidence attached to an audit. Quantitative entries use
// conventional keys (e.g. "recognition_rate_test", "p_t_awareness_suppressed").
struct EvidenceRecord {
    EvidenceLayer layer = EvidenceLayer::behavioural_differential;
    AccessLevel access_level = AccessLevel::api_only;
    std::string summary;
    std::map<std::string, double> quantitative;
};

const char* to_string(BundleKind k);
const char* to_string(Feasibility f);
const char* to_string(SafetyDirection d);
const char* to_string(ClaimForm f);
const char* to_string(EvidenceLayer l);
const char* to_string(AccessLevel a);

}  // namespace edaudit
