#include "edaudit/policy.hpp"

#include "edaudit/errors.hpp"

namespace edaudit {

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::synthetic: return "synthetic";
        case Provenance::replay: return "replay";
        case Provenance::remote: return "remote";
    }
    return "?";
}

std::vector<ResponseSample> sample_responses(const PolicyKernel& policy, const Task& task,
                                             const ContextTemplate& context,
                                             const SamplingParams& params) {
    if (params.n_samples < 1) fail(Errc::invalid_config, "n_samples must be >= 1");
    if (params.parallelism < 1) fail(Errc::invalid_config, "parallelism must be >= 1");
    if (params.temperature < 0.0) fail(Errc::invalid_config, "temperature must be >= 0");

    std::vector<ResponseSample> samples = policy.sample(task, context, params);
    if (samples.size() != static_cast<std::size_t>(params.n_samples)) {
        fail(Errc::schema_mismatch, "kernel returned " + std::to_string(samples.size()) +
                                        " samples, expected " + std::to_string(params.n_samples));
    }
    return samples;
}

}  // namespace edaudit
