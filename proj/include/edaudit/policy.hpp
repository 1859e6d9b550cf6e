#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "edaudit/types.hpp"

namespace edaudit {

struct SamplingParams {
    int n_samples = 1;
    double temperature = 0.0;  // advisory; remote kernels pass it through
    std::uint64_t seed = 0;
    int parallelism = 1;
};

enum class Provenance { synthetic, replay, remote };

const char* to_string(Provenance p);

struct ResponseSample {
    std::string task_id;
    std::string context_id;
    std::string text;
    std::optional<std::int64_t> latency_ms;
    Provenance provenance = Provenance::synthetic;
};

// A policy viewed as a map from (task, context, sampling params) to response
// samples. Implementations must be safe for concurrent sample() calls up to
// params.parallelism.
class PolicyKernel {
public:
    virtual ~PolicyKernel() = default;

    virtual std::vector<ResponseSample> sample(const Task& task, const ContextTemplate& context,
                                               const SamplingParams& params) const = 0;
    virtual std::string model_version() const = 0;
    virtual std::string describe() const = 0;

    // Total responses produced; lets audits report the query budget actually
    // spent and prove the stopping rule short-circuits estimation.
    std::uint64_t queries_issued() const { return queries_.load(std::memory_order_relaxed); }

protected:
    void count_queries(std::uint64_t n) const { queries_.fetch_add(n, std::memory_order_relaxed); }

private:
    mutable std::atomic<std::uint64_t> queries_{0};
};

// Validates params and delegates to the kernel; guarantees exactly
// params.n_samples responses on success.
std::vector<ResponseSample> sample_responses(const PolicyKernel& policy, const Task& task,
                                             const ContextTemplate& context,
                                             const SamplingParams& params);

}  // namespace edaudit
