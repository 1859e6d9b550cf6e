#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edaudit/json_util.hpp"
#include "edaudit/policy.hpp"
#include "edaudit/scoring.hpp"
#include "edaudit/types.hpp"

namespace edaudit {

struct Exclusion {
    std::string task_id;
    std::string context_id;  // empty when the whole task is excluded
    std::string reason;
};

// Raw scores for one (task, context) cell: scores[sample][judge_round].
struct CellData {
    std::string context_id;
    double weight = 1.0;  // normalized template weight within the bundle
    std::vector<std::vector<double>> scores;

    double sample_mean(std::size_t sample) const;
    double mean() const;
};

struct TaskData {
    std::string task_id;
    double nu_weight = 1.0;
    std::vector<CellData> cells;

    double mean() const;  // template-weight-normalized over cells
};

// Everything estimation retains per bundle: the full score hierarchy, so the
// bootstrap can rerun without re-querying the policy.
struct ScoreTable {
    std::string bundle_name;
    std::string property_id;
    std::string scorer_id;
    std::string policy_version;
    int judge_rounds = 1;
    std::vector<TaskData> tasks;  // sorted by task_id
    std::vector<Exclusion> exclusions;
    std::vector<std::string> warnings;

    const TaskData* find_task(const std::string& task_id) const;
};

struct TaskSummary {
    double mean = 0.0;
    double variance = 0.0;  // variance of per-sample scores within the task
    std::size_t n = 0;      // samples retained for the task
    double nu_weight = 1.0;
};

struct PropertyEstimate {
    std::string bundle_name;
    std::string property_id;
    std::string scorer_id;
    std::string policy_version;
    std::map<std::string, TaskSummary> per_task;
    double corpus_mean = 0.0;
    double corpus_within_variance = 0.0;  // pooled over all raw scores in the bundle
    std::size_t total_samples = 0;
    std::vector<Exclusion> exclusions;
    std::vector<std::string> warnings;
};

struct ConfidenceInterval {
    double low = 0.0;
    double high = 0.0;
};

struct EDEstimate {
    std::string property_id;
    std::map<std::string, double> pointwise;  // per shared task
    double corpus_ed = 0.0;
    double p_t = 0.0;
    double p_d = 0.0;
    double ned = 0.0;
    double sigma_t = 0.0;
    double sigma_d = 0.0;
    double sigma_pool = 0.0;
    double epsilon = 0.0;
    std::optional<ConfidenceInterval> ci;
    double alpha = 0.05;
    std::optional<ConfidenceInterval> judge_uncertainty;
    std::vector<std::string> skipped_tasks;  // present in only one estimate
};

// Default variance-stabilising epsilon, on the property's natural scale.
inline constexpr double kDefaultEpsilon = 1e-3;

struct EstimationResult {
    PropertyEstimate estimate;
    ScoreTable table;
};

// Queries the policy over every (task, template) cell of a feasible bundle,
// scores the responses, and aggregates. Failed cells become exclusions; a
// task with every cell excluded is dropped from the task distribution with a
// warning.
EstimationResult estimate_property(const PolicyKernel& policy, const std::vector<Task>& corpus,
                                   const ContextBundle& bundle, const ScoringFunction& scorer,
                                   const SamplingParams& params);

// Pointwise and corpus differential by subtraction over the shared corpus.
// corpus_ed is the task-weighted mean of the pointwise values (same
// arithmetic path). Intervals are left unset; bootstrap_ci fills them.
EDEstimate compute_ed(const PropertyEstimate& est_t, const PropertyEstimate& est_d,
                      double epsilon = kDefaultEpsilon);

// ned = corpus_ed / (sigma_pool + epsilon); also stored into `ed`.
double compute_ned(EDEstimate& ed, double epsilon);

Json property_estimate_to_json(const PropertyEstimate& estimate);
Json ed_to_json(const EDEstimate& ed);

// Flat raw-score records (one line per task/context/sample/judge_round) plus
// a sidecar meta file carrying weights, so re-bootstrap needs no re-query.
void save_score_table(const ScoreTable& table, const std::filesystem::path& records_path);
ScoreTable load_score_table(const std::filesystem::path& records_path);

}  // namespace edaudit
