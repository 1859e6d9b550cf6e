#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "edaudit/policy.hpp"

namespace edaudit {

// Recorded responses keyed by (task_id, context_id). Absent keys are an
// error, never silently empty.
class TranscriptStore {
public:
    void add(const std::string& task_id, const std::string& context_id,
             std::vector<std::string> responses);

    const std::vector<std::string>& lookup(const std::string& task_id,
                                           const std::string& context_id) const;
    bool contains(const std::string& task_id, const std::string& context_id) const;
    std::size_t size() const { return records_.size(); }

    // One JSON file per (task, context): {task_id, context_id, responses}.
    static TranscriptStore load_dir(const std::filesystem::path& dir);

private:
    std::map<std::pair<std::string, std::string>, std::vector<std::string>> records_;
};

class ReplayPolicy : public PolicyKernel {
public:
    ReplayPolicy(TranscriptStore store, std::string version)
        : store_(std::move(store)), version_(std::move(version)) {}

    std::vector<ResponseSample> sample(const Task& task, const ContextTemplate& context,
                                       const SamplingParams& params) const override;
    std::string model_version() const override { return version_; }
    std::string describe() const override { return "replay"; }

private:
    TranscriptStore store_;
    std::string version_;
};

}  // namespace edaudit
