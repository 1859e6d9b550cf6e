#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>

#include "edaudit/estimator.hpp"

namespace edaudit {

enum class ResampleLevel { task, context, response };

struct BootstrapConfig {
    int replicates = 1000;
    std::set<ResampleLevel> resample_levels = {ResampleLevel::task, ResampleLevel::context,
                                               ResampleLevel::response};
    std::uint64_t seed = 0;
    double alpha = 0.05;
};

BootstrapConfig parse_bootstrap_config(const Json& raw, const std::string& where);
Json bootstrap_config_to_json(const BootstrapConfig& config);

struct BootstrapResult {
    ConfidenceInterval ci;
    std::optional<ConfidenceInterval> judge_ci;  // set when judge_rounds > 1
    int replicates = 0;
    double alpha = 0.05;
};

// Percentile interval for the corpus differential via hierarchical
// resampling in level order task -> context -> response over exactly the
// configured levels. Deterministic given the seed. Tasks are resampled
// jointly across the two tables (the differential is paired by task).
BootstrapResult bootstrap_ci(const ScoreTable& table_t, const ScoreTable& table_d,
                             const BootstrapConfig& config);

// Single-bundle variant for the corpus property mean (used by mixture demos).
ConfidenceInterval bootstrap_mean_ci(const ScoreTable& table, const BootstrapConfig& config);

}  // namespace edaudit
