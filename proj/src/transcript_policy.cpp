#include "edaudit/transcript_policy.hpp"

#include "edaudit/json_util.hpp"

namespace edaudit {

void TranscriptStore::add(const std::string& task_id, const std::string& context_id,
                          std::vector<std::string> responses) {
    records_[{task_id, context_id}] = std::move(responses);
}

bool TranscriptStore::contains(const std::string& task_id, const std::string& context_id) const {
    return records_.count({task_id, context_id}) > 0;
}

const std::vector<std::string>& TranscriptStore::lookup(const std::string& task_id,
                                                        const std::string& context_id) const {
    auto it = records_.find({task_id, context_id});
    if (it == records_.end()) {
        fail(Errc::transcript_miss, "no transcript for (" + task_id + ", " + context_id + ")");
    }
    return it->second;
}

TranscriptStore TranscriptStore::load_dir(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
        fail(Errc::parse_error, "transcript directory " + dir.string() + " not found");
    }
    TranscriptStore store;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
        StrictObject doc(load_json_file(file), "transcript " + file.filename().string());
        const std::string task_id = doc.require_string("task_id");
        const std::string context_id = doc.require_string("context_id");
        const Json& raw = doc.require("responses");
        if (!raw.is_array()) fail(Errc::parse_error, file.string() + ": responses must be an array");
        std::vector<std::string> responses;
        for (const Json& r : raw) responses.push_back(r.get<std::string>());
        doc.finish();
        store.add(task_id, context_id, std::move(responses));
    }
    return store;
}

std::vector<ResponseSample> ReplayPolicy::sample(const Task& task, const ContextTemplate& context,
                                                 const SamplingParams& params) const {
    const std::vector<std::string>& recorded = store_.lookup(task.id, context.id);
    if (recorded.empty()) {
        fail(Errc::transcript_miss, "empty transcript for (" + task.id + ", " + context.id + ")");
    }
    std::vector<ResponseSample> out;
    out.reserve(static_cast<std::size_t>(params.n_samples));
    for (int i = 0; i < params.n_samples; ++i) {
        ResponseSample sample;
        sample.task_id = task.id;
        sample.context_id = context.id;
        sample.text = recorded[static_cast<std::size_t>(i) % recorded.size()];
        sample.provenance = Provenance::replay;
        out.push_back(std::move(sample));
    }
    count_queries(out.size());
    return out;
}

}  // namespace edaudit
