#include "edaudit/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <thread>

#include "edaudit/bundle_io.hpp"
#include "edaudit/rng.hpp"

namespace edaudit {

namespace {

std::uint64_t judge_seed_for(std::uint64_t cell_seed, int sample, int round, int rounds) {
    const std::uint64_t stream = derive_stream_seed(cell_seed, "judge");
    return splitmix64(stream + static_cast<std::uint64_t>(sample) * static_cast<std::uint64_t>(rounds) +
                      static_cast<std::uint64_t>(round));
}

// Weighted mean as dot/sum so integer-weight designs stay exact.
double weighted_mean(const std::vector<double>& values, const std::vector<double>& weights) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        num += values[i] * weights[i];
        den += weights[i];
    }
    return den > 0.0 ? num / den : 0.0;
}

}  // namespace

double CellData::sample_mean(std::size_t sample) const {
    const std::vector<double>& rounds = scores[sample];
    double sum = 0.0;
    for (double s : rounds) sum += s;
    return rounds.empty() ? 0.0 : sum / static_cast<double>(rounds.size());
}

double CellData::mean() const {
    if (scores.empty()) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) sum += sample_mean(i);
    return sum / static_cast<double>(scores.size());
}

double TaskData::mean() const {
    std::vector<double> means, weights;
    means.reserve(cells.size());
    weights.reserve(cells.size());
    for (const CellData& cell : cells) {
        means.push_back(cell.mean());
        weights.push_back(cell.weight);
    }
    return weighted_mean(means, weights);
}

const TaskData* ScoreTable::find_task(const std::string& task_id) const {
    for (const TaskData& t : tasks) {
        if (t.task_id == task_id) return &t;
    }
    return nullptr;
}

EstimationResult estimate_property(const PolicyKernel& policy, const std::vector<Task>& corpus,
                                   const ContextBundle& bundle, const ScoringFunction& scorer,
                                   const SamplingParams& params) {
    if (bundle.feasibility != Feasibility::feasible) {
        fail(Errc::infeasible_bundle, "bundle '" + bundle.name + "' is " + to_string(bundle.feasibility));
    }
    if (corpus.empty()) fail(Errc::insufficient_data, "empty task corpus");

    const std::vector<double> weights = bundle.normalized_weights();
    const std::size_t n_tasks = corpus.size();
    const std::size_t n_templates = bundle.templates.size();

    struct CellResult {
        std::vector<std::vector<double>> scores;
        std::optional<Exclusion> exclusion;
    };
    std::vector<CellResult> results(n_tasks * n_templates);

    // Fan the cells out over worker threads. Each cell seeds its own stream,
    // so completion order cannot affect the recorded scores.
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t index = next.fetch_add(1);
            if (index >= results.size()) return;
            const Task& task = corpus[index / n_templates];
            const ContextTemplate& tmpl = bundle.templates[index % n_templates];
            CellResult& slot = results[index];
            try {
                const std::vector<ResponseSample> samples =
                    sample_responses(policy, task, tmpl, params);
                const std::uint64_t cell_seed = derive_cell_seed(params.seed, task.id, tmpl.id);
                slot.scores.reserve(samples.size());
                for (int i = 0; i < static_cast<int>(samples.size()); ++i) {
                    std::vector<double> rounds;
                    rounds.reserve(static_cast<std::size_t>(scorer.judge_rounds));
                    for (int r = 0; r < scorer.judge_rounds; ++r) {
                        rounds.push_back(scorer.score(task, tmpl, samples[static_cast<std::size_t>(i)].text,
                                                      judge_seed_for(cell_seed, i, r, scorer.judge_rounds)));
                    }
                    slot.scores.push_back(std::move(rounds));
                }
            } catch (const AuditError& err) {
                slot.exclusion = Exclusion{task.id, tmpl.id, err.what()};
            }
        }
    };

    const int n_workers = std::max(1, std::min<int>(params.parallelism, static_cast<int>(results.size())));
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(n_workers));
        for (int i = 0; i < n_workers; ++i) threads.emplace_back(worker);
        for (std::thread& t : threads) t.join();
    }

    ScoreTable table;
    table.bundle_name = bundle.name;
    table.property_id = scorer.property_id;
    table.scorer_id = scorer.scorer_id;
    table.policy_version = policy.model_version();
    table.judge_rounds = scorer.judge_rounds;

    for (std::size_t ti = 0; ti < n_tasks; ++ti) {
        TaskData task_data;
        task_data.task_id = corpus[ti].id;
        task_data.nu_weight = corpus[ti].weight;
        for (std::size_t ci = 0; ci < n_templates; ++ci) {
            CellResult& slot = results[ti * n_templates + ci];
            if (slot.exclusion) {
                table.exclusions.push_back(*slot.exclusion);
                continue;
            }
            CellData cell;
            cell.context_id = bundle.templates[ci].id;
            cell.weight = weights[ci];
            cell.scores = std::move(slot.scores);
            task_data.cells.push_back(std::move(cell));
        }
        if (task_data.cells.empty()) {
            table.warnings.push_back("task " + task_data.task_id +
                                     " removed: every context cell excluded");
            table.exclusions.push_back(Exclusion{task_data.task_id, "", "all cells excluded"});
            continue;
        }
        table.tasks.push_back(std::move(task_data));
    }
    std::sort(table.tasks.begin(), table.tasks.end(),
              [](const TaskData& a, const TaskData& b) { return a.task_id < b.task_id; });

    if (table.tasks.empty()) {
        fail(Errc::all_cells_excluded, "no task retained any scored cell in '" + bundle.name + "'");
    }

    PropertyEstimate estimate;
    estimate.bundle_name = table.bundle_name;
    estimate.property_id = table.property_id;
    estimate.scorer_id = table.scorer_id;
    estimate.policy_version = table.policy_version;
    estimate.exclusions = table.exclusions;
    estimate.warnings = table.warnings;

    std::vector<double> task_means, task_weights;
    double weighted_sq_sum = 0.0;
    double weighted_sum = 0.0;
    double total_weight = 0.0;
    for (const TaskData& task_data : table.tasks) {
        TaskSummary summary;
        summary.mean = task_data.mean();
        // Raw per-sample scores (judge-averaged), weighted by cell weight.
        double task_sum = 0.0, task_sq = 0.0, task_w = 0.0;
        for (const CellData& cell : task_data.cells) {
            const double per_sample_w = cell.weight / static_cast<double>(cell.scores.size());
            for (std::size_t i = 0; i < cell.scores.size(); ++i) {
                const double s = cell.sample_mean(i);
                task_sum += per_sample_w * s;
                task_sq += per_sample_w * s * s;
                task_w += per_sample_w;
                ++summary.n;
            }
        }
        if (task_w > 0.0) {
            const double m = task_sum / task_w;
            summary.variance = std::max(0.0, task_sq / task_w - m * m);

            const double nu = task_data.nu_weight;
            weighted_sum += nu * m;
            weighted_sq_sum += nu * (task_sq / task_w);
            total_weight += nu;
        }
        estimate.total_samples += summary.n;

        task_means.push_back(summary.mean);
        task_weights.push_back(task_data.nu_weight);
        summary.nu_weight = task_data.nu_weight;
        estimate.per_task[task_data.task_id] = summary;
    }

    estimate.corpus_mean = weighted_mean(task_means, task_weights);
    if (total_weight > 0.0) {
        const double m = weighted_sum / total_weight;
        estimate.corpus_within_variance = std::max(0.0, weighted_sq_sum / total_weight - m * m);
    }
    return EstimationResult{std::move(estimate), std::move(table)};
}

EDEstimate compute_ed(const PropertyEstimate& est_t, const PropertyEstimate& est_d, double epsilon) {
    if (est_t.property_id != est_d.property_id || est_t.scorer_id != est_d.scorer_id) {
        fail(Errc::scorer_mismatch, "estimates scored by " + est_t.scorer_id + " vs " + est_d.scorer_id);
    }
    if (est_t.policy_version != est_d.policy_version) {
        fail(Errc::corpus_mismatch, "estimates from different policy versions: " +
                                        est_t.policy_version + " vs " + est_d.policy_version);
    }

    EDEstimate ed;
    ed.property_id = est_t.property_id;
    ed.p_t = est_t.corpus_mean;
    ed.p_d = est_d.corpus_mean;

    std::vector<double> diffs, weights;
    for (const auto& [task_id, summary_t] : est_t.per_task) {
        auto it = est_d.per_task.find(task_id);
        if (it == est_d.per_task.end()) {
            ed.skipped_tasks.push_back(task_id + " (test-like only)");
            continue;
        }
        const double diff = summary_t.mean - it->second.mean;
        ed.pointwise[task_id] = diff;
        diffs.push_back(diff);
        weights.push_back(summary_t.nu_weight);
    }
    for (const auto& [task_id, summary_d] : est_d.per_task) {
        if (!est_t.per_task.count(task_id)) {
            ed.skipped_tasks.push_back(task_id + " (deployment only)");
        }
    }
    if (diffs.empty()) fail(Errc::corpus_mismatch, "no task shared between the two estimates");

    ed.corpus_ed = weighted_mean(diffs, weights);
    ed.sigma_t = std::sqrt(est_t.corpus_within_variance);
    ed.sigma_d = std::sqrt(est_d.corpus_within_variance);
    ed.sigma_pool = std::sqrt(0.5 * (est_t.corpus_within_variance + est_d.corpus_within_variance));
    compute_ned(ed, epsilon);
    return ed;
}

double compute_ned(EDEstimate& ed, double epsilon) {
    if (!(epsilon > 0.0)) fail(Errc::non_positive_epsilon, "epsilon must be > 0");
    ed.epsilon = epsilon;
    ed.ned = ed.corpus_ed / (ed.sigma_pool + epsilon);
    return ed.ned;
}

Json property_estimate_to_json(const PropertyEstimate& estimate) {
    Json per_task = Json::object();
    for (const auto& [task_id, summary] : estimate.per_task) {
        per_task[task_id] = Json{{"mean", summary.mean},
                                 {"variance", summary.variance},
                                 {"n", summary.n},
                                 {"nu_weight", summary.nu_weight}};
    }
    Json exclusions = Json::array();
    for (const Exclusion& e : estimate.exclusions) {
        exclusions.push_back(Json{{"task_id", e.task_id}, {"context_id", e.context_id}, {"reason", e.reason}});
    }
    return Json{{"bundle_name", estimate.bundle_name},
                {"property_id", estimate.property_id},
                {"scorer_id", estimate.scorer_id},
                {"policy_version", estimate.policy_version},
                {"per_task", per_task},
                {"corpus_mean", estimate.corpus_mean},
                {"corpus_within_variance", estimate.corpus_within_variance},
                {"total_samples", estimate.total_samples},
                {"exclusions", exclusions},
                {"warnings", estimate.warnings}};
}

Json ed_to_json(const EDEstimate& ed) {
    Json pointwise = Json::object();
    for (const auto& [task_id, value] : ed.pointwise) pointwise[task_id] = value;
    Json out{{"property_id", ed.property_id},
             {"pointwise", pointwise},
             {"corpus_ed", ed.corpus_ed},
             {"p_t", ed.p_t},
             {"p_d", ed.p_d},
             {"ned", ed.ned},
             {"sigma_t", ed.sigma_t},
             {"sigma_d", ed.sigma_d},
             {"sigma_pool", ed.sigma_pool},
             {"epsilon", ed.epsilon},
             {"alpha", ed.alpha},
             {"skipped_tasks", ed.skipped_tasks}};
    if (ed.ci) out["ci"] = Json{{"low", ed.ci->low}, {"high", ed.ci->high}};
    if (ed.judge_uncertainty) {
        out["judge_uncertainty"] =
            Json{{"low", ed.judge_uncertainty->low}, {"high", ed.judge_uncertainty->high}};
    }
    return out;
}

void save_score_table(const ScoreTable& table, const std::filesystem::path& records_path) {
    std::ofstream out(records_path, std::ios::trunc);
    if (!out) fail(Errc::io_error, "cannot write " + records_path.string());
    for (const TaskData& task : table.tasks) {
        for (const CellData& cell : task.cells) {
            for (std::size_t i = 0; i < cell.scores.size(); ++i) {
                for (std::size_t r = 0; r < cell.scores[i].size(); ++r) {
                    out << Json{{"task_id", task.task_id},
                                {"context_id", cell.context_id},
                                {"sample_index", i},
                                {"score", cell.scores[i][r]},
                                {"scorer_id", table.scorer_id},
                                {"judge_round", r}}
                               .dump()
                        << "\n";
                }
            }
        }
    }
    out.close();

    Json task_meta = Json::array();
    for (const TaskData& task : table.tasks) {
        Json cells = Json::array();
        for (const CellData& cell : task.cells) {
            cells.push_back(Json{{"context_id", cell.context_id},
                                 {"weight", cell.weight},
                                 {"n_samples", cell.scores.size()}});
        }
        task_meta.push_back(Json{{"task_id", task.task_id}, {"nu_weight", task.nu_weight}, {"cells", cells}});
    }
    Json exclusions = Json::array();
    for (const Exclusion& e : table.exclusions) {
        exclusions.push_back(Json{{"task_id", e.task_id}, {"context_id", e.context_id}, {"reason", e.reason}});
    }
    write_json_file(records_path.string() + ".meta.json",
                    Json{{"bundle_name", table.bundle_name},
                         {"property_id", table.property_id},
                         {"scorer_id", table.scorer_id},
                         {"policy_version", table.policy_version},
                         {"judge_rounds", table.judge_rounds},
                         {"tasks", task_meta},
                         {"exclusions", exclusions},
                         {"warnings", table.warnings}});
}

ScoreTable load_score_table(const std::filesystem::path& records_path) {
    const Json meta = load_json_file(records_path.string() + ".meta.json");
    ScoreTable table;
    table.bundle_name = meta.at("bundle_name").get<std::string>();
    table.property_id = meta.at("property_id").get<std::string>();
    table.scorer_id = meta.at("scorer_id").get<std::string>();
    table.policy_version = meta.at("policy_version").get<std::string>();
    table.judge_rounds = meta.at("judge_rounds").get<int>();
    for (const Json& raw_task : meta.at("tasks")) {
        TaskData task;
        task.task_id = raw_task.at("task_id").get<std::string>();
        task.nu_weight = raw_task.at("nu_weight").get<double>();
        for (const Json& raw_cell : raw_task.at("cells")) {
            CellData cell;
            cell.context_id = raw_cell.at("context_id").get<std::string>();
            cell.weight = raw_cell.at("weight").get<double>();
            cell.scores.resize(raw_cell.at("n_samples").get<std::size_t>());
            task.cells.push_back(std::move(cell));
        }
        table.tasks.push_back(std::move(task));
    }
    for (const Json& raw : meta.at("exclusions")) {
        table.exclusions.push_back(Exclusion{raw.at("task_id").get<std::string>(),
                                             raw.at("context_id").get<std::string>(),
                                             raw.at("reason").get<std::string>()});
    }
    for (const Json& raw : meta.at("warnings")) table.warnings.push_back(raw.get<std::string>());

    std::ifstream in(records_path);
    if (!in) fail(Errc::io_error, "cannot read " + records_path.string());
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const Json record = Json::parse(line, nullptr, false);
        if (record.is_discarded()) fail(Errc::parse_error, "bad record in " + records_path.string());
        const std::string task_id = record.at("task_id").get<std::string>();
        const std::string context_id = record.at("context_id").get<std::string>();
        const std::size_t sample = record.at("sample_index").get<std::size_t>();
        auto task_it = std::find_if(table.tasks.begin(), table.tasks.end(),
                                    [&](const TaskData& t) { return t.task_id == task_id; });
        if (task_it == table.tasks.end()) fail(Errc::parse_error, "record for unknown task " + task_id);
        auto cell_it = std::find_if(task_it->cells.begin(), task_it->cells.end(),
                                    [&](const CellData& c) { return c.context_id == context_id; });
        if (cell_it == task_it->cells.end()) {
            fail(Errc::parse_error, "record for unknown cell " + task_id + "/" + context_id);
        }
        if (sample >= cell_it->scores.size()) {
            fail(Errc::parse_error, "sample index out of range in " + records_path.string());
        }
        cell_it->scores[sample].push_back(record.at("score").get<double>());
    }
    return table;
}

}  // namespace edaudit
