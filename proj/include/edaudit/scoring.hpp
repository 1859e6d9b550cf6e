#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "edaudit/json_util.hpp"
#include "edaudit/property_catalog.hpp"
#include "edaudit/types.hpp"

namespace edaudit {

// A bounded scoring function s_P. `evaluator` receives a judge seed so
// judge-based scorers can produce per-round scores; plain scorers ignore it.
// When context_dependent is false the evaluator must be a function of
// (task, response) only; check_measurement_invariance verifies that.
struct ScoringFunction {
    std::string property_id;
    std::string scorer_id;
    ScoreRange range;
    bool context_dependent = false;
    bool judge_based = false;
    int judge_rounds = 1;
    std::function<double(const Task&, const ContextTemplate&, const std::string& response,
                         std::uint64_t judge_seed)>
        evaluator;

    double score(const Task& task, const ContextTemplate& context, const std::string& response,
                 std::uint64_t judge_seed = 0) const;
};

// response == success_text scores range.b, anything else range.a.
ScoringFunction literal_scorer(const PropertyInfo& property, const std::string& success_text);
// response containing `needle` scores range.b, anything else range.a.
ScoringFunction substring_scorer(const PropertyInfo& property, const std::string& needle);
// Wraps a binary scorer in a noisy judge: each round flips the verdict with
// probability flip_probability, seeded per (response, round).
ScoringFunction noisy_judge_scorer(ScoringFunction base, double flip_probability, int rounds);

// Scorer selection from config: {"mode": "literal"|"substring"|"judge",
// "match": ..., "judge_rounds": 3, "judge_flip_probability": 0.1}
ScoringFunction make_scorer(const PropertyInfo& property, const Json& config);

struct InvarianceViolation {
    std::string task_id;
    std::string response_preview;
    std::string context_a;
    std::string context_b;
    double score_a = 0.0;
    double score_b = 0.0;
};

struct InvarianceReport {
    int pairs_probed = 0;
    int contexts_probed = 0;
    std::vector<InvarianceViolation> violations;

    bool invariant() const { return violations.empty(); }
};

// Scores every probe (task, response) pair under every supplied context and
// reports any pair whose score depends on the context. Violations are
// findings, not faults: they signal scoring-rule drift or judge bias that
// would confound the behavioural differential.
InvarianceReport check_measurement_invariance(
    const ScoringFunction& scorer,
    const std::vector<std::pair<Task, std::string>>& probe_pairs,
    const std::vector<ContextTemplate>& contexts);

Json invariance_to_json(const InvarianceReport& report);

}  // namespace edaudit
