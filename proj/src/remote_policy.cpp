#include "edaudit/remote_policy.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>

#include "edaudit/bundle_io.hpp"
#include "edaudit/json_util.hpp"

namespace edaudit {

RemotePolicy::RemotePolicy(RemoteEndpointConfig config) : config_(std::move(config)) {
    if (!config_.auth_token_env.empty()) {
        const char* token = std::getenv(config_.auth_token_env.c_str());
        if (!token || *token == '\0') {
            fail(Errc::auth_failure, "env var " + config_.auth_token_env + " unset or empty");
        }
        auth_token_ = token;
    }
}

std::string RemotePolicy::model_version() const {
    std::lock_guard lock(version_mutex_);
    return last_model_version_.empty() ? "remote-unknown" : last_model_version_;
}

std::vector<ResponseSample> RemotePolicy::sample(const Task& task, const ContextTemplate& context,
                                                 const SamplingParams& params) const {
    Json scaffold = Json::object();
    for (const auto& [k, v] : context.scaffold) scaffold[k] = v;

    std::vector<ResponseSample> out;
    out.reserve(static_cast<std::size_t>(params.n_samples));

    for (int index = 0; index < params.n_samples; ++index) {
        const Json request{
            {"task_id", task.id},
            {"rendered_prompt", Json{{"system", context.system_prompt},
                                     {"user", render_user_prompt(context, task)}}},
            {"scaffold", scaffold},
            {"sampling", Json{{"temperature", params.temperature},
                              {"seed", params.seed},
                              {"index", index}}},
        };
        const std::string body = request.dump();

        httplib::Result result;
        int attempts = 0;
        for (;;) {
            httplib::Client client(config_.base_url);
            client.set_connection_timeout(0, config_.timeout_ms * 1000);
            client.set_read_timeout(config_.timeout_ms / 1000, (config_.timeout_ms % 1000) * 1000);
            if (!auth_token_.empty()) client.set_bearer_token_auth(auth_token_);

            const auto started = std::chrono::steady_clock::now();
            result = client.Post(config_.path, body, "application/json");
            const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                                     std::chrono::steady_clock::now() - started)
                                     .count();

            if (result && result->status == 200) {
                StrictObject doc(Json::parse(result->body, nullptr, false), "remote response");
                const Json* version = doc.optional("model_version");
                const Json* samples = doc.optional("samples");
                if (!version || !version->is_string() || !samples || !samples->is_array() ||
                    samples->empty() || !samples->front().is_string()) {
                    fail(Errc::schema_mismatch, "remote response missing model_version or samples");
                }
                {
                    std::lock_guard lock(version_mutex_);
                    last_model_version_ = version->get<std::string>();
                }
                ResponseSample sample;
                sample.task_id = task.id;
                sample.context_id = context.id;
                sample.text = samples->front().get<std::string>();
                sample.latency_ms = elapsed;
                sample.provenance = Provenance::remote;
                out.push_back(std::move(sample));
                count_queries(1);
                break;
            }
            if (result && (result->status == 401 || result->status == 403)) {
                fail(Errc::auth_failure, "remote endpoint rejected credentials (HTTP " +
                                             std::to_string(result->status) + ")");
            }
            if (result && result->status >= 400 && result->status < 500 && result->status != 429) {
                fail(Errc::schema_mismatch,
                     "remote endpoint returned HTTP " + std::to_string(result->status));
            }
            // connection failure, 429, or 5xx: retry with linear backoff
            if (++attempts > config_.max_retries) {
                fail(Errc::remote_unavailable,
                     "retries exhausted for (" + task.id + ", " + context.id + ")");
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(50 * attempts));
        }
    }
    return out;
}

std::unique_ptr<PolicyKernel> remote_policy(const RemoteEndpointConfig& config) {
    return std::make_unique<RemotePolicy>(config);
}

}  // namespace edaudit
