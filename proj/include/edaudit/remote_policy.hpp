#pragma once

#include <memory>
#include <mutex>
#include <string>

#include "edaudit/policy.hpp"

namespace edaudit {

struct RemoteEndpointConfig {
    std::string base_url;             // e.g. http://127.0.0.1:8200
    std::string path = "/v1/sample";  // POST target
    std::string auth_token_env;       // env var holding the bearer token; empty = no auth
    int timeout_ms = 30000;
    int max_retries = 3;  // attempts beyond the first
};

// HTTP client kernel. Renders the context template around the task payload
// and issues one request per sample index. Wire format:
//   request  {task_id, rendered_prompt: {system, user}, scaffold,
//             sampling: {temperature, seed, index}}
//   response {model_version, samples: [text]}
class RemotePolicy : public PolicyKernel {
public:
    explicit RemotePolicy(RemoteEndpointConfig config);

    std::vector<ResponseSample> sample(const Task& task, const ContextTemplate& context,
                                       const SamplingParams& params) const override;
    std::string model_version() const override;
    std::string describe() const override { return config_.base_url + config_.path; }

private:
    RemoteEndpointConfig config_;
    std::string auth_token_;
    mutable std::mutex version_mutex_;
    mutable std::string last_model_version_;
};

std::unique_ptr<PolicyKernel> remote_policy(const RemoteEndpointConfig& config);

}  // namespace edaudit
