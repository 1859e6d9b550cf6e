#include "edaudit/scoring.hpp"

#include <algorithm>
#include <cmath>

#include "edaudit/rng.hpp"

namespace edaudit {

double ScoringFunction::score(const Task& task, const ContextTemplate& context,
                              const std::string& response, std::uint64_t judge_seed) const {
    const double value = evaluator(task, context, response, judge_seed);
    if (!std::isfinite(value) || !range.contains(value)) {
        fail(Errc::scorer_mismatch, "scorer " + scorer_id + " produced " + std::to_string(value) +
                                        " outside its declared range");
    }
    return value;
}

ScoringFunction literal_scorer(const PropertyInfo& property, const std::string& success_text) {
    ScoringFunction scorer;
    scorer.property_id = property.id;
    scorer.scorer_id = "literal:" + property.id;
    scorer.range = property.range;
    scorer.context_dependent = false;
    const double hi = property.range.b;
    const double lo = property.range.a;
    scorer.evaluator = [success_text, hi, lo](const Task&, const ContextTemplate&,
                                              const std::string& response, std::uint64_t) {
        return response == success_text ? hi : lo;
    };
    return scorer;
}

ScoringFunction substring_scorer(const PropertyInfo& property, const std::string& needle) {
    ScoringFunction scorer;
    scorer.property_id = property.id;
    scorer.scorer_id = "substring:" + property.id;
    scorer.range = property.range;
    scorer.context_dependent = false;
    const double hi = property.range.b;
    const double lo = property.range.a;
    scorer.evaluator = [needle, hi, lo](const Task&, const ContextTemplate&,
                                        const std::string& response, std::uint64_t) {
        return response.find(needle) != std::string::npos ? hi : lo;
    };
    return scorer;
}

ScoringFunction noisy_judge_scorer(ScoringFunction base, double flip_probability, int rounds) {
    if (flip_probability < 0.0 || flip_probability >= 0.5) {
        fail(Errc::invalid_config, "judge flip probability must be in [0, 0.5)");
    }
    if (rounds < 1) fail(Errc::invalid_config, "judge rounds must be >= 1");
    ScoringFunction scorer = base;
    scorer.scorer_id = "judge:" + base.scorer_id;
    scorer.judge_based = true;
    scorer.judge_rounds = rounds;
    const double hi = base.range.b;
    const double lo = base.range.a;
    auto inner = base.evaluator;
    scorer.evaluator = [inner, flip_probability, hi, lo](const Task& task,
                                                         const ContextTemplate& context,
                                                         const std::string& response,
                                                         std::uint64_t judge_seed) {
        const double verdict = inner(task, context, response, judge_seed);
        const SeededStream stream(judge_seed);
        if (stream.bernoulli(0, flip_probability)) {
            return verdict == hi ? lo : hi;
        }
        return verdict;
    };
    return scorer;
}

ScoringFunction make_scorer(const PropertyInfo& property, const Json& config) {
    StrictObject doc(config, "scorer config");
    const std::string mode = doc.optional_string("mode", "literal");
    const std::string match = doc.optional_string("match", "RESPONSE_POSITIVE");
    const int rounds = static_cast<int>(doc.optional_number("judge_rounds", 3));
    const double flip = doc.optional_number("judge_flip_probability", 0.1);
    doc.finish();

    if (mode == "literal") return literal_scorer(property, match);
    if (mode == "substring") return substring_scorer(property, match);
    if (mode == "judge") return noisy_judge_scorer(literal_scorer(property, match), flip, rounds);
    fail(Errc::invalid_config, "unknown scorer mode '" + mode + "'");
}

InvarianceReport check_measurement_invariance(
    const ScoringFunction& scorer, const std::vector<std::pair<Task, std::string>>& probe_pairs,
    const std::vector<ContextTemplate>& contexts) {
    InvarianceReport report;
    report.pairs_probed = static_cast<int>(probe_pairs.size());
    report.contexts_probed = static_cast<int>(contexts.size());
    if (contexts.size() < 2) return report;

    for (const auto& [task, response] : probe_pairs) {
        // Judge seed fixed per pair so only context varies across probes.
        const std::uint64_t probe_seed = derive_stream_seed(fnv1a64(task.id), response);
        const double reference = scorer.score(task, contexts.front(), response, probe_seed);
        for (std::size_t i = 1; i < contexts.size(); ++i) {
            const double other = scorer.score(task, contexts[i], response, probe_seed);
            if (other != reference) {
                InvarianceViolation violation;
                violation.task_id = task.id;
                violation.response_preview = response.substr(0, 80);
                violation.context_a = contexts.front().id;
                violation.context_b = contexts[i].id;
                violation.score_a = reference;
                violation.score_b = other;
                report.violations.push_back(std::move(violation));
            }
        }
    }
    return report;
}

Json invariance_to_json(const InvarianceReport& report) {
    Json violations = Json::array();
    for (const InvarianceViolation& v : report.violations) {
        violations.push_back(Json{{"task_id", v.task_id},
                                  {"response_preview", v.response_preview},
                                  {"context_a", v.context_a},
                                  {"context_b", v.context_b},
                                  {"score_a", v.score_a},
                                  {"score_b", v.score_b}});
    }
    return Json{{"pairs_probed", report.pairs_probed},
                {"contexts_probed", report.contexts_probed},
                {"invariant", report.invariant()},
                {"violations", violations}};
}

}  // namespace edaudit
