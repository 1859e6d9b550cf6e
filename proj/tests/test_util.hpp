#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "edaudit/types.hpp"

namespace edaudit::test {

// Unique scratch directory, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::mt19937_64 rng{std::random_device{}()};
        path_ = std::filesystem::temp_directory_path() /
                ("edaudit_" + tag + "_" + std::to_string(rng()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline std::vector<Task> make_corpus(int n, const std::string& prefix = "t") {
    std::vector<Task> corpus;
    for (int i = 0; i < n; ++i) {
        Task task;
        task.id = prefix + std::to_string(i);
        task.payload = "task payload " + std::to_string(i);
        corpus.push_back(std::move(task));
    }
    return corpus;
}

inline ContextTemplate make_template(const std::string& id, std::vector<std::string> cue_ids,
                                     double weight = 1.0) {
    ContextTemplate tmpl;
    tmpl.id = id;
    tmpl.user_frame = "Please handle: {task}";
    tmpl.cue_ids = std::move(cue_ids);
    tmpl.weight = weight;
    return tmpl;
}

inline Cue make_phrase_cue(const std::string& id, const std::string& phrase) {
    Cue cue;
    cue.id = id;
    cue.description = "marker phrase " + phrase;
    cue.ablation_rule.kind = AblationRule::Kind::delete_phrase;
    cue.ablation_rule.phrase = phrase;
    return cue;
}

// A one-template bundle; the template's user_frame carries the cue phrase so
// deleting it is a real content change.
inline ContextBundle make_bundle(const std::string& name, BundleKind kind,
                                 const std::vector<std::string>& cue_ids = {}) {
    ContextBundle bundle;
    bundle.name = name;
    bundle.kind = kind;
    ContextTemplate tmpl = make_template(name + "_ctx", cue_ids);
    for (const std::string& cue_id : cue_ids) {
        bundle.cue_inventory.push_back(make_phrase_cue(cue_id, "[" + cue_id + "]"));
        tmpl.user_frame = "[" + cue_id + "] " + tmpl.user_frame;
    }
    bundle.templates.push_back(std::move(tmpl));
    return bundle;
}

}  // namespace edaudit::test
