#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "edaudit/bootstrap.hpp"
#include "edaudit/estimator.hpp"
#include "edaudit/json_util.hpp"
#include "edaudit/policy.hpp"
#include "edaudit/types.hpp"

namespace edaudit {

// ---- naturalness audit ----

// One blind-rater label: which bundle the rater thinks a sample came from.
struct RaterLabel {
    std::string sample_id;
    BundleKind true_origin = BundleKind::test_like;
    std::string rater_id;
    BundleKind rated_origin = BundleKind::test_like;
};

std::vector<RaterLabel> load_rater_labels(const std::filesystem::path& path);

enum class NaturalnessVerdict { distinguishable, weak_evidence, indistinguishable };
const char* to_string(NaturalnessVerdict v);

struct NaturalnessThresholds {
    double distinguishable_accuracy = 0.7;
    double distinguishable_p = 0.05;
    double indistinguishable_accuracy = 0.6;
};

struct NaturalnessReport {
    double rater_accuracy = 0.0;
    int n_rated = 0;
    double p_value_vs_chance = 1.0;
    std::optional<double> model_judge_accuracy;
    NaturalnessVerdict verdict = NaturalnessVerdict::weak_evidence;
    std::vector<std::string> cue_inventory_ref;
    std::vector<std::string> notes;
    NaturalnessThresholds thresholds;
};

// Blind-rater discrimination of the bundle partition. Accuracy is tested
// against chance with an exact binomial test; near-chance accuracy weakens
// but does not eliminate the partition case, so it never hard-fails.
NaturalnessReport naturalness_audit(const std::vector<RaterLabel>& rater_labels,
                                    const std::vector<RaterLabel>& model_judge_labels,
                                    const std::vector<std::string>& cue_inventory,
                                    const NaturalnessThresholds& thresholds = {});

Json naturalness_to_json(const NaturalnessReport& report);

// ---- stopping rule ----

struct UndeterminedFinding {
    Feasibility mode = Feasibility::infeasible_technical;  // never `feasible`
    std::string required_evidence_note;
};

// Returns a finding when no defensible deployment-continuous distribution
// exists; estimation must not run in that case.
std::optional<UndeterminedFinding> stopping_rule(const ContextBundle& mu_d);

Json finding_to_json(const UndeterminedFinding& finding);

// ---- cue ablation ----

struct MaterialityThresholds {
    double raw_ed = 0.05;
    double ned_units = 0.2;

    // Claim-relevant change on the raw scale: the larger of the raw floor and
    // the effect-size floor converted through the pooled deviation.
    double raw_threshold(double sigma_pool, double epsilon) const {
        const double from_ned = ned_units * (sigma_pool + epsilon);
        return raw_ed > from_ned ? raw_ed : from_ned;
    }
};

struct CueMaterialityResult {
    std::string cue_id;
    double ed_baseline = 0.0;
    double ed_ablated = 0.0;
    double delta = 0.0;
    bool material = false;
    ConfidenceInterval ci_ablated;
    double threshold_used = 0.0;
};

// Re-estimates the differential with `cue_id` ablated from every test-like
// template carrying it; mu_D and the baseline are left untouched.
CueMaterialityResult ablate_cue(const PolicyKernel& policy, const std::vector<Task>& corpus,
                                const ContextBundle& mu_t, const std::string& cue_id,
                                const EDEstimate& baseline, const PropertyEstimate& baseline_d,
                                const ScoreTable& baseline_d_table, const ScoringFunction& scorer,
                                const SamplingParams& params, const BootstrapConfig& bootstrap,
                                const MaterialityThresholds& thresholds = {});

Json ablation_to_json(const CueMaterialityResult& result);

// ---- replay coverage ----

struct CoverageRecord {
    std::size_t corpus_size = 0;
    std::size_t replayed = 0;
    double fraction = 0.0;
};

CoverageRecord replay_coverage(const std::vector<Task>& corpus,
                               const std::vector<std::string>& replayed_task_ids);

Json coverage_to_json(const CoverageRecord& record);

}  // namespace edaudit
