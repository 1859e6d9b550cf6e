#include "edaudit/bootstrap.hpp"

#include <algorithm>
#include <cmath>

#include "edaudit/rng.hpp"

namespace edaudit {

namespace {

double quantile_type7(std::vector<double> sorted, double p) {
    if (sorted.empty()) return 0.0;
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

ConfidenceInterval percentile_interval(std::vector<double> replicates, double alpha) {
    std::sort(replicates.begin(), replicates.end());
    ConfidenceInterval ci;
    ci.low = quantile_type7(replicates, alpha / 2.0);
    ci.high = quantile_type7(replicates, 1.0 - alpha / 2.0);
    return ci;
}

// Index draw proportional to `weights` (cumulative scan; weights need not be
// normalized).
std::size_t weighted_draw(SequentialRng& rng, const std::vector<double>& weights, double total) {
    const double u = rng.uniform() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (u < acc) return i;
    }
    return weights.size() - 1;
}

double cell_replicate_mean(const CellData& cell, SequentialRng& rng, bool resample_responses) {
    const std::size_t n = cell.scores.size();
    if (n == 0) return 0.0;
    if (!resample_responses) return cell.mean();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += cell.sample_mean(rng.below(n));
    }
    return sum / static_cast<double>(n);
}

double task_replicate_mean(const TaskData& task, SequentialRng& rng, bool resample_contexts,
                           bool resample_responses) {
    if (task.cells.empty()) return 0.0;
    if (resample_contexts) {
        std::vector<double> weights;
        weights.reserve(task.cells.size());
        double total = 0.0;
        for (const CellData& cell : task.cells) {
            weights.push_back(cell.weight);
            total += cell.weight;
        }
        double sum = 0.0;
        for (std::size_t k = 0; k < task.cells.size(); ++k) {
            const std::size_t pick =
                total > 0.0 ? weighted_draw(rng, weights, total) : rng.below(task.cells.size());
            sum += cell_replicate_mean(task.cells[pick], rng, resample_responses);
        }
        return sum / static_cast<double>(task.cells.size());
    }
    double num = 0.0, den = 0.0;
    for (const CellData& cell : task.cells) {
        num += cell.weight * cell_replicate_mean(cell, rng, resample_responses);
        den += cell.weight;
    }
    return den > 0.0 ? num / den : 0.0;
}

double judge_cell_mean(const CellData& cell, SequentialRng& rng) {
    double sum = 0.0;
    for (const std::vector<double>& rounds : cell.scores) {
        double round_sum = 0.0;
        for (std::size_t r = 0; r < rounds.size(); ++r) {
            round_sum += rounds[rng.below(rounds.size())];
        }
        sum += round_sum / static_cast<double>(rounds.size());
    }
    return cell.scores.empty() ? 0.0 : sum / static_cast<double>(cell.scores.size());
}

double judge_task_mean(const TaskData& task, SequentialRng& rng) {
    double num = 0.0, den = 0.0;
    for (const CellData& cell : task.cells) {
        num += cell.weight * judge_cell_mean(cell, rng);
        den += cell.weight;
    }
    return den > 0.0 ? num / den : 0.0;
}

struct SharedTask {
    const TaskData* in_t;
    const TaskData* in_d;
    double nu_weight;
};

std::vector<SharedTask> shared_tasks(const ScoreTable& table_t, const ScoreTable& table_d) {
    std::vector<SharedTask> shared;
    for (const TaskData& task : table_t.tasks) {
        if (const TaskData* other = table_d.find_task(task.task_id)) {
            shared.push_back(SharedTask{&task, other, task.nu_weight});
        }
    }
    return shared;
}

}  // namespace

BootstrapConfig parse_bootstrap_config(const Json& raw, const std::string& where) {
    StrictObject doc(raw, where);
    BootstrapConfig config;
    config.replicates = static_cast<int>(doc.optional_number("replicates", 1000));
    config.alpha = doc.optional_number("alpha", 0.05);
    config.seed = static_cast<std::uint64_t>(doc.optional_number("seed", 0));
    if (const Json* levels = doc.optional("resample_levels")) {
        if (!levels->is_array()) fail(Errc::parse_error, where + ": resample_levels must be an array");
        config.resample_levels.clear();
        for (const Json& level : *levels) {
            const std::string name = level.get<std::string>();
            if (name == "task") {
                config.resample_levels.insert(ResampleLevel::task);
            } else if (name == "context") {
                config.resample_levels.insert(ResampleLevel::context);
            } else if (name == "response") {
                config.resample_levels.insert(ResampleLevel::response);
            } else {
                fail(Errc::parse_error, where + ": unknown resample level '" + name + "'");
            }
        }
    }
    doc.finish();
    if (config.replicates < 100) {
        fail(Errc::parse_error, where + ": replicates must be >= 100 for reportable intervals");
    }
    if (!(config.alpha > 0.0 && config.alpha < 0.5)) {
        fail(Errc::parse_error, where + ": alpha must lie in (0, 0.5)");
    }
    return config;
}

Json bootstrap_config_to_json(const BootstrapConfig& config) {
    std::vector<std::string> levels;
    if (config.resample_levels.count(ResampleLevel::task)) levels.push_back("task");
    if (config.resample_levels.count(ResampleLevel::context)) levels.push_back("context");
    if (config.resample_levels.count(ResampleLevel::response)) levels.push_back("response");
    return Json{{"replicates", config.replicates},
                {"alpha", config.alpha},
                {"seed", config.seed},
                {"resample_levels", levels}};
}

BootstrapResult bootstrap_ci(const ScoreTable& table_t, const ScoreTable& table_d,
                             const BootstrapConfig& config) {
    const bool level_task = config.resample_levels.count(ResampleLevel::task) > 0;
    const bool level_context = config.resample_levels.count(ResampleLevel::context) > 0;
    const bool level_response = config.resample_levels.count(ResampleLevel::response) > 0;

    const std::vector<SharedTask> shared = shared_tasks(table_t, table_d);
    if (shared.empty()) fail(Errc::corpus_mismatch, "no shared task between score tables");
    if (level_task && shared.size() < 2) {
        fail(Errc::insufficient_data, "task-level resampling needs at least 2 shared tasks");
    }

    const std::uint64_t base_seed = derive_stream_seed(config.seed, "bootstrap");
    std::vector<double> nu_weights;
    double nu_total = 0.0;
    for (const SharedTask& task : shared) {
        nu_weights.push_back(task.nu_weight);
        nu_total += task.nu_weight;
    }

    std::vector<double> replicates;
    replicates.reserve(static_cast<std::size_t>(config.replicates));
    for (int r = 0; r < config.replicates; ++r) {
        SequentialRng rng(splitmix64(base_seed + static_cast<std::uint64_t>(r)));
        double sum = 0.0, weight_sum = 0.0;
        for (std::size_t k = 0; k < shared.size(); ++k) {
            const SharedTask& task =
                level_task ? shared[weighted_draw(rng, nu_weights, nu_total)] : shared[k];
            const double diff = task_replicate_mean(*task.in_t, rng, level_context, level_response) -
                                task_replicate_mean(*task.in_d, rng, level_context, level_response);
            const double w = level_task ? 1.0 : task.nu_weight;
            sum += w * diff;
            weight_sum += w;
        }
        replicates.push_back(weight_sum > 0.0 ? sum / weight_sum : 0.0);
    }

    BootstrapResult result;
    result.ci = percentile_interval(std::move(replicates), config.alpha);
    result.replicates = config.replicates;
    result.alpha = config.alpha;

    if (table_t.judge_rounds > 1 || table_d.judge_rounds > 1) {
        const std::uint64_t judge_seed = derive_stream_seed(config.seed, "bootstrap-judge");
        std::vector<double> judge_replicates;
        judge_replicates.reserve(static_cast<std::size_t>(config.replicates));
        for (int r = 0; r < config.replicates; ++r) {
            SequentialRng rng(splitmix64(judge_seed + static_cast<std::uint64_t>(r)));
            double sum = 0.0, weight_sum = 0.0;
            for (const SharedTask& task : shared) {
                const double diff = judge_task_mean(*task.in_t, rng) - judge_task_mean(*task.in_d, rng);
                sum += task.nu_weight * diff;
                weight_sum += task.nu_weight;
            }
            judge_replicates.push_back(weight_sum > 0.0 ? sum / weight_sum : 0.0);
        }
        result.judge_ci = percentile_interval(std::move(judge_replicates), config.alpha);
    }
    return result;
}

ConfidenceInterval bootstrap_mean_ci(const ScoreTable& table, const BootstrapConfig& config) {
    const bool level_task = config.resample_levels.count(ResampleLevel::task) > 0;
    const bool level_context = config.resample_levels.count(ResampleLevel::context) > 0;
    const bool level_response = config.resample_levels.count(ResampleLevel::response) > 0;

    if (table.tasks.empty()) fail(Errc::insufficient_data, "empty score table");
    if (level_task && table.tasks.size() < 2) {
        fail(Errc::insufficient_data, "task-level resampling needs at least 2 tasks");
    }

    std::vector<double> nu_weights;
    double nu_total = 0.0;
    for (const TaskData& task : table.tasks) {
        nu_weights.push_back(task.nu_weight);
        nu_total += task.nu_weight;
    }

    const std::uint64_t base_seed = derive_stream_seed(config.seed, "bootstrap-mean");
    std::vector<double> replicates;
    replicates.reserve(static_cast<std::size_t>(config.replicates));
    for (int r = 0; r < config.replicates; ++r) {
        SequentialRng rng(splitmix64(base_seed + static_cast<std::uint64_t>(r)));
        double sum = 0.0, weight_sum = 0.0;
        for (std::size_t k = 0; k < table.tasks.size(); ++k) {
            const TaskData& task =
                level_task ? table.tasks[weighted_draw(rng, nu_weights, nu_total)] : table.tasks[k];
            const double w = level_task ? 1.0 : task.nu_weight;
            sum += w * task_replicate_mean(task, rng, level_context, level_response);
            weight_sum += w;
        }
        replicates.push_back(weight_sum > 0.0 ? sum / weight_sum : 0.0);
    }
    return percentile_interval(std::move(replicates), config.alpha);
}

}  // namespace edaudit
