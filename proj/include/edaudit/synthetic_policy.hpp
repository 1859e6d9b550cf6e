#pragma once

#include <memory>
#include <utility>

#include "edaudit/json_util.hpp"
#include "edaudit/policy.hpp"

namespace edaudit {

// Predicate over the context a sample is drawn in. First matching rule wins.
struct ContextPredicate {
    enum class Kind { has_cue, template_is, always };
    Kind kind = Kind::always;
    std::string value;

    bool matches(const ContextTemplate& context) const;
};

struct SyntheticRule {
    ContextPredicate predicate;
    double success_probability = 0.0;
};

// A configurable Bernoulli responder: per matching rule (or the default), it
// emits `success_text` with the rule's probability and `failure_text`
// otherwise. The paired scorer maps the two literals onto the ends of the
// property's score range.
struct SyntheticPolicyConfig {
    std::vector<SyntheticRule> rules;
    double default_probability = 0.0;
    std::string success_text = "RESPONSE_POSITIVE";
    std::string failure_text = "RESPONSE_NEGATIVE";
    std::string version = "synthetic-v1";
};

SyntheticPolicyConfig parse_synthetic_config(const Json& raw, const std::string& where);

class SyntheticPolicy : public PolicyKernel {
public:
    explicit SyntheticPolicy(SyntheticPolicyConfig config) : config_(std::move(config)) {}

    std::vector<ResponseSample> sample(const Task& task, const ContextTemplate& context,
                                       const SamplingParams& params) const override;
    std::string model_version() const override { return config_.version; }
    std::string describe() const override { return "synthetic"; }

    double probability_for(const ContextTemplate& context) const;
    const SyntheticPolicyConfig& config() const { return config_; }

private:
    SyntheticPolicyConfig config_;
};

// The cue id the marginal non-identifiability pair conditions on.
inline constexpr const char* kTestMarkerCue = "test_marker";

// Two policies with equal mixture-averaged scores but different Evaluation
// Differentials: pi1 scores the range maximum on any template carrying the
// test-marker cue and the minimum elsewhere; pi2 is a fair coin everywhere.
// No marginal score over the mixture can tell them apart.
std::pair<std::unique_ptr<SyntheticPolicy>, std::unique_ptr<SyntheticPolicy>>
make_nonidentifiable_pair(const ScoreRange& range);

}  // namespace edaudit
