#include "edaudit/synthetic_policy.hpp"

#include "edaudit/rng.hpp"

namespace edaudit {

bool ContextPredicate::matches(const ContextTemplate& context) const {
    switch (kind) {
        case Kind::has_cue: return context.carries_cue(value);
        case Kind::template_is: return context.id == value;
        case Kind::always: return true;
    }
    return false;
}

double SyntheticPolicy::probability_for(const ContextTemplate& context) const {
    for (const SyntheticRule& rule : config_.rules) {
        if (rule.predicate.matches(context)) return rule.success_probability;
    }
    return config_.default_probability;
}

std::vector<ResponseSample> SyntheticPolicy::sample(const Task& task, const ContextTemplate& context,
                                                    const SamplingParams& params) const {
    const double p = probability_for(context);
    const SeededStream stream(derive_cell_seed(params.seed, task.id, context.id));

    std::vector<ResponseSample> out;
    out.reserve(static_cast<std::size_t>(params.n_samples));
    for (int i = 0; i < params.n_samples; ++i) {
        ResponseSample sample;
        sample.task_id = task.id;
        sample.context_id = context.id;
        sample.text = stream.bernoulli(static_cast<std::uint64_t>(i), p) ? config_.success_text
                                                                         : config_.failure_text;
        sample.provenance = Provenance::synthetic;
        out.push_back(std::move(sample));
    }
    count_queries(out.size());
    return out;
}

SyntheticPolicyConfig parse_synthetic_config(const Json& raw, const std::string& where) {
    StrictObject doc(raw, where);
    SyntheticPolicyConfig config;
    if (const Json* rules = doc.optional("rules")) {
        if (!rules->is_array()) fail(Errc::parse_error, where + ": rules must be an array");
        for (const Json& raw_rule : *rules) {
            StrictObject rule_doc(raw_rule, where + ".rule");
            SyntheticRule rule;
            const Json& raw_pred = rule_doc.require("predicate");
            StrictObject pred_doc(raw_pred, where + ".predicate");
            const std::string kind = pred_doc.require_string("kind");
            if (kind == "has_cue") {
                rule.predicate.kind = ContextPredicate::Kind::has_cue;
                rule.predicate.value = pred_doc.require_string("value");
            } else if (kind == "template_is") {
                rule.predicate.kind = ContextPredicate::Kind::template_is;
                rule.predicate.value = pred_doc.require_string("value");
            } else if (kind == "always") {
                rule.predicate.kind = ContextPredicate::Kind::always;
            } else {
                fail(Errc::parse_error, where + ": unknown predicate kind '" + kind + "'");
            }
            pred_doc.finish();
            rule.success_probability = rule_doc.require_number("success_probability");
            rule_doc.finish();
            if (rule.success_probability < 0.0 || rule.success_probability > 1.0) {
                fail(Errc::parse_error, where + ": success_probability outside [0,1]");
            }
            config.rules.push_back(std::move(rule));
        }
    }
    config.default_probability = doc.optional_number("default_probability", 0.0);
    if (config.default_probability < 0.0 || config.default_probability > 1.0) {
        fail(Errc::parse_error, where + ": default_probability outside [0,1]");
    }
    config.success_text = doc.optional_string("success_text", config.success_text);
    config.failure_text = doc.optional_string("failure_text", config.failure_text);
    config.version = doc.optional_string("version", config.version);
    doc.finish();
    return config;
}

std::pair<std::unique_ptr<SyntheticPolicy>, std::unique_ptr<SyntheticPolicy>>
make_nonidentifiable_pair(const ScoreRange& range) {
    (void)range;  // the literals are scored onto range ends by the paired scorer

    SyntheticPolicyConfig conditioned;
    conditioned.rules.push_back(
        SyntheticRule{ContextPredicate{ContextPredicate::Kind::has_cue, kTestMarkerCue}, 1.0});
    conditioned.default_probability = 0.0;
    conditioned.version = "synthetic-conditioned";

    SyntheticPolicyConfig coin;
    coin.default_probability = 0.5;
    coin.version = "synthetic-coin";

    return {std::make_unique<SyntheticPolicy>(std::move(conditioned)),
            std::make_unique<SyntheticPolicy>(std::move(coin))};
}

}  // namespace edaudit
