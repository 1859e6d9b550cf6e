#include "edaudit/bundle_io.hpp"

#include <algorithm>

namespace edaudit {

namespace {

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    if (needle.empty()) return 0;
    std::size_t count = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size())) {
        ++count;
    }
    return count;
}

bool erase_all(std::string& text, const std::string& needle) {
    if (needle.empty()) return false;
    bool changed = false;
    for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle)) {
        text.erase(pos, needle.size());
        changed = true;
    }
    return changed;
}

AblationRule parse_ablation_rule(const Json& raw, const std::string& where) {
    StrictObject doc(raw, where);
    AblationRule rule;
    const std::string kind = doc.require_string("kind");
    if (kind == "delete_phrase") {
        rule.kind = AblationRule::Kind::delete_phrase;
        rule.phrase = doc.require_string("phrase");
    } else if (kind == "swap_frame") {
        rule.kind = AblationRule::Kind::swap_frame;
        rule.replacement = doc.require_string("replacement");
        if (count_occurrences(rule.replacement, kTaskSlot) != 1) {
            fail(Errc::parse_error, where + ": swap_frame replacement must contain exactly one task slot");
        }
    } else if (kind == "drop_scaffold_key") {
        rule.kind = AblationRule::Kind::drop_scaffold_key;
        rule.scaffold_key = doc.require_string("scaffold_key");
    } else {
        fail(Errc::parse_error, where + ": unknown ablation kind '" + kind + "'");
    }
    doc.finish();
    return rule;
}

Json ablation_rule_to_json(const AblationRule& rule) {
    switch (rule.kind) {
        case AblationRule::Kind::delete_phrase:
            return Json{{"kind", "delete_phrase"}, {"phrase", rule.phrase}};
        case AblationRule::Kind::swap_frame:
            return Json{{"kind", "swap_frame"}, {"replacement", rule.replacement}};
        case AblationRule::Kind::drop_scaffold_key:
            return Json{{"kind", "drop_scaffold_key"}, {"scaffold_key", rule.scaffold_key}};
    }
    return Json::object();
}

ContextTemplate parse_template(const Json& raw, const std::string& where) {
    StrictObject doc(raw, where);
    ContextTemplate tmpl;
    tmpl.id = doc.require_string("id");
    tmpl.system_prompt = doc.optional_string("system_prompt");
    tmpl.user_frame = doc.require_string("user_frame");
    if (const Json* scaffold = doc.optional("scaffold")) {
        if (!scaffold->is_object()) fail(Errc::parse_error, where + ": scaffold must be an object");
        for (auto it = scaffold->begin(); it != scaffold->end(); ++it) {
            if (!it.value().is_string())
                fail(Errc::parse_error, where + ": scaffold values must be strings");
            tmpl.scaffold[it.key()] = it.value().get<std::string>();
        }
    }
    if (const Json* cues = doc.optional("cue_ids")) {
        if (!cues->is_array()) fail(Errc::parse_error, where + ": cue_ids must be an array");
        for (const Json& c : *cues) tmpl.cue_ids.push_back(c.get<std::string>());
    }
    tmpl.weight = doc.optional_number("weight", 1.0);
    doc.finish();

    if (tmpl.weight < 0.0) fail(Errc::parse_error, where + ": negative template weight");
    if (count_occurrences(tmpl.user_frame, kTaskSlot) != 1) {
        fail(Errc::parse_error,
             where + ": user_frame of '" + tmpl.id + "' must contain exactly one " + kTaskSlot);
    }
    return tmpl;
}

}  // namespace

ContextBundle parse_context_bundle(const Json& raw, const std::string& where) {
    StrictObject doc(raw, where);
    ContextBundle bundle;
    bundle.name = doc.require_string("name");

    const std::string kind = doc.require_string("kind");
    if (kind == "test_like") {
        bundle.kind = BundleKind::test_like;
    } else if (kind == "deployment_continuous") {
        bundle.kind = BundleKind::deployment_continuous;
    } else {
        fail(Errc::parse_error, where + ": unknown bundle kind '" + kind + "'");
    }

    const std::string feas = doc.optional_string("feasibility", "feasible");
    if (feas == "feasible") {
        bundle.feasibility = Feasibility::feasible;
    } else if (feas == "infeasible_technical") {
        bundle.feasibility = Feasibility::infeasible_technical;
    } else if (feas == "infeasible_ontological") {
        bundle.feasibility = Feasibility::infeasible_ontological;
    } else {
        fail(Errc::parse_error, where + ": unknown feasibility '" + feas + "'");
    }

    bundle.provenance_note = doc.optional_string("provenance_note");

    if (const Json* inventory = doc.optional("cue_inventory")) {
        if (!inventory->is_array()) fail(Errc::parse_error, where + ": cue_inventory must be an array");
        for (const Json& raw_cue : *inventory) {
            StrictObject cue_doc(raw_cue, where + ".cue");
            Cue cue;
            cue.id = cue_doc.require_string("id");
            cue.description = cue_doc.optional_string("description");
            cue.ablation_rule = parse_ablation_rule(cue_doc.require("ablation_rule"), where + ".ablation_rule");
            cue_doc.finish();
            if (bundle.find_cue(cue.id)) fail(Errc::parse_error, where + ": duplicate cue '" + cue.id + "'");
            bundle.cue_inventory.push_back(std::move(cue));
        }
    }

    if (const Json* templates = doc.optional("templates")) {
        if (!templates->is_array()) fail(Errc::parse_error, where + ": templates must be an array");
        for (const Json& raw_tmpl : *templates) {
            bundle.templates.push_back(parse_template(raw_tmpl, where + ".template"));
        }
    }
    doc.finish();

    for (const ContextTemplate& tmpl : bundle.templates) {
        for (const std::string& cue_id : tmpl.cue_ids) {
            if (!bundle.find_cue(cue_id)) {
                fail(Errc::dangling_cue_reference,
                     "template '" + tmpl.id + "' cites cue '" + cue_id + "' absent from inventory");
            }
        }
    }

    if (bundle.feasibility == Feasibility::feasible) {
        if (bundle.templates.empty()) {
            fail(Errc::empty_feasible_bundle, "feasible bundle '" + bundle.name + "' has no templates");
        }
        double total = 0.0;
        for (const ContextTemplate& t : bundle.templates) total += t.weight;
        if (!(total > 0.0)) {
            fail(Errc::parse_error, where + ": template weights must sum to a positive value");
        }
    }
    return bundle;
}

ContextBundle load_context_bundle(const std::filesystem::path& path) {
    return parse_context_bundle(load_json_file(path), "bundle " + path.filename().string());
}

Json bundle_to_json(const ContextBundle& bundle) {
    Json templates = Json::array();
    for (const ContextTemplate& t : bundle.templates) {
        Json scaffold = Json::object();
        for (const auto& [k, v] : t.scaffold) scaffold[k] = v;
        templates.push_back(Json{{"id", t.id},
                                 {"system_prompt", t.system_prompt},
                                 {"user_frame", t.user_frame},
                                 {"scaffold", scaffold},
                                 {"cue_ids", t.cue_ids},
                                 {"weight", t.weight}});
    }
    Json cues = Json::array();
    for (const Cue& c : bundle.cue_inventory) {
        cues.push_back(Json{{"id", c.id},
                            {"description", c.description},
                            {"ablation_rule", ablation_rule_to_json(c.ablation_rule)}});
    }
    return Json{{"name", bundle.name},
                {"kind", to_string(bundle.kind)},
                {"feasibility", to_string(bundle.feasibility)},
                {"provenance_note", bundle.provenance_note},
                {"cue_inventory", cues},
                {"templates", templates}};
}

Json bundle_summary(const ContextBundle& bundle) {
    Json templates = Json::array();
    for (const ContextTemplate& t : bundle.templates) {
        std::vector<std::string> scaffold_keys;
        for (const auto& [k, v] : t.scaffold) scaffold_keys.push_back(k);
        templates.push_back(Json{{"id", t.id},
                                 {"system_prompt", t.system_prompt},
                                 {"user_frame", t.user_frame},
                                 {"scaffold_keys", scaffold_keys},
                                 {"cue_ids", t.cue_ids},
                                 {"weight", t.weight}});
    }
    std::vector<std::string> cue_ids;
    for (const Cue& c : bundle.cue_inventory) cue_ids.push_back(c.id);
    return Json{{"name", bundle.name},
                {"kind", to_string(bundle.kind)},
                {"feasibility", to_string(bundle.feasibility)},
                {"provenance_note", bundle.provenance_note},
                {"n_templates", bundle.templates.size()},
                {"cue_inventory", cue_ids},
                {"templates", templates}};
}

ContextTemplate apply_ablation(const ContextTemplate& tmpl, const Cue& cue, bool* changed) {
    ContextTemplate out = tmpl;
    bool content_changed = false;
    switch (cue.ablation_rule.kind) {
        case AblationRule::Kind::delete_phrase:
            content_changed |= erase_all(out.system_prompt, cue.ablation_rule.phrase);
            content_changed |= erase_all(out.user_frame, cue.ablation_rule.phrase);
            break;
        case AblationRule::Kind::swap_frame:
            if (out.user_frame != cue.ablation_rule.replacement) {
                out.user_frame = cue.ablation_rule.replacement;
                content_changed = true;
            }
            break;
        case AblationRule::Kind::drop_scaffold_key:
            content_changed |= out.scaffold.erase(cue.ablation_rule.scaffold_key) > 0;
            break;
    }
    auto it = std::remove(out.cue_ids.begin(), out.cue_ids.end(), cue.id);
    const bool cue_removed = it != out.cue_ids.end();
    out.cue_ids.erase(it, out.cue_ids.end());
    if (changed) *changed = content_changed || cue_removed;
    return out;
}

ContextBundle ablate_bundle(const ContextBundle& bundle, const std::string& cue_id) {
    const Cue* cue = bundle.find_cue(cue_id);
    if (!cue) fail(Errc::unknown_cue, "cue '" + cue_id + "' not in inventory of '" + bundle.name + "'");

    ContextBundle out = bundle;
    bool any_changed = false;
    for (ContextTemplate& tmpl : out.templates) {
        if (!tmpl.carries_cue(cue_id)) continue;
        bool changed = false;
        tmpl = apply_ablation(tmpl, *cue, &changed);
        any_changed |= changed;
    }
    if (!any_changed) {
        fail(Errc::ablation_noop, "ablating '" + cue_id + "' changed no template in '" + bundle.name + "'");
    }
    out.cue_inventory.erase(
        std::remove_if(out.cue_inventory.begin(), out.cue_inventory.end(),
                       [&](const Cue& c) { return c.id == cue_id; }),
        out.cue_inventory.end());
    return out;
}

std::string render_user_prompt(const ContextTemplate& tmpl, const Task& task) {
    std::string out = tmpl.user_frame;
    const std::size_t pos = out.find(kTaskSlot);
    if (pos != std::string::npos) out.replace(pos, std::string(kTaskSlot).size(), task.payload);
    return out;
}

}  // namespace edaudit
