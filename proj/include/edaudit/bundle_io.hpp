#pragma once

#include <filesystem>

#include "edaudit/json_util.hpp"
#include "edaudit/types.hpp"

namespace edaudit {

ContextBundle load_context_bundle(const std::filesystem::path& path);
ContextBundle parse_context_bundle(const Json& raw, const std::string& where);

Json bundle_to_json(const ContextBundle& bundle);
// Construction summary used by reports: documents prompts, scaffolds and
// markers without the full template bodies.
Json bundle_summary(const ContextBundle& bundle);

// Applies `cue`'s ablation rule to one template. Returns the transformed
// template with the cue id removed; `changed` reports whether the rule
// actually altered the template content or cue list.
ContextTemplate apply_ablation(const ContextTemplate& tmpl, const Cue& cue, bool* changed);

// Bundle copy with `cue_id` ablated from every template carrying it and the
// cue dropped from the inventory. Throws UnknownCue / AblationNoOp.
ContextBundle ablate_bundle(const ContextBundle& bundle, const std::string& cue_id);

// Renders a template around a task payload: user_frame with the task slot
// substituted. Exactly one slot is guaranteed by bundle validation.
std::string render_user_prompt(const ContextTemplate& tmpl, const Task& task);

}  // namespace edaudit
