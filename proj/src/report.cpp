#include "edaudit/report.hpp"

#include <sstream>

#include "edaudit/claim_io.hpp"

namespace edaudit {

namespace {

Json sampling_to_json(const SamplingParams& params) {
    return Json{{"n_samples", params.n_samples},
                {"temperature", params.temperature},
                {"seed", params.seed},
                {"parallelism", params.parallelism}};
}

Json exclusions_to_json(const std::vector<Exclusion>& exclusions) {
    Json out = Json::array();
    for (const Exclusion& e : exclusions) {
        out.push_back(Json{{"task_id", e.task_id}, {"context_id", e.context_id}, {"reason", e.reason}});
    }
    return out;
}

Json evidence_layers_section(const AuditDossier& dossier) {
    std::vector<std::string> accessed;
    auto add = [&](const char* name) {
        for (const std::string& a : accessed) {
            if (a == name) return;
        }
        accessed.push_back(name);
    };
    if (dossier.ed) add("behavioural_differential");
    bool latent_available = false;
    for (const EvidenceRecord& record : dossier.evidence) {
        add(to_string(record.layer));
        if (record.layer == EvidenceLayer::latent_recognition) latent_available = true;
    }
    if (!dossier.ablations.empty()) add("context_cue_sensitivity");
    return Json{{"accessed", accessed},
                {"latent_available", latent_available},
                {"records", evidence_to_json(dossier.evidence)}};
}

std::string fixed6(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

// Human rendering walks the machine document so the two forms cannot drift.
std::string render_markdown(const Json& report) {
    std::ostringstream md;
    const Json& claim = report.at("claim");
    md << "# Restricted claim report: " << claim.at("claim_id").get<std::string>() << "\n\n";
    md << "- toolkit: " << report.at("toolkit_version").get<std::string>() << "\n";
    md << "- generated: " << report.at("timestamp").get<std::string>() << "\n";
    md << "- model version: " << report.at("provenance").at("model_version").get<std::string>() << "\n\n";

    const Json& restricted = report.at("restricted_claim");
    md << "## Claim, original vs restricted\n\n";
    md << "| | text |\n|---|---|\n";
    md << "| original | " << restricted.at("original").get<std::string>() << " |\n";
    md << "| restricted | " << restricted.at("restricted").get<std::string>() << " |\n";
    md << "| scope | " << restricted.at("scope_note").get<std::string>() << " |\n";
    md << "| delta | " << restricted.at("delta_summary").get<std::string>() << " |\n\n";

    const Json& classification = report.at("classification");
    md << "## Classification\n\n";
    md << "- type: **" << classification.at("claim_type").get<std::string>() << "** ("
       << classification.at("confidence_mode").get<std::string>() << ")\n";
    md << "- rationale: " << classification.at("rationale").get<std::string>() << "\n";
    if (classification.contains("implied_p_d")) {
        md << "- implied deployment value: " << fixed6(classification.at("implied_p_d").get<double>())
           << "\n";
    }
    md << "\n## Claim specification\n\n";
    md << "- property: " << claim.at("property_id").get<std::string>() << "\n";
    md << "- form: " << claim.at("claim_form").get<std::string>() << "\n";
    md << "- safety direction: " << claim.at("safety_direction").get<std::string>() << "\n";
    if (claim.contains("tau")) md << "- tau: " << fixed6(claim.at("tau").get<double>()) << "\n";
    md << "- evidence source: " << claim.at("evidence_source").get<std::string>() << "\n";

    md << "\n## Context distributions\n\n";
    const Json& bundles = report.at("bundles");
    for (const char* key : {"mu_t", "mu_d"}) {
        if (!bundles.contains(key)) continue;
        const Json& b = bundles.at(key);
        md << "- " << key << ": `" << b.at("name").get<std::string>() << "` ("
           << b.at("feasibility").get<std::string>() << ", " << b.at("n_templates").get<std::size_t>()
           << " templates, cues: ";
        bool first = true;
        for (const Json& cue : b.at("cue_inventory")) {
            if (!first) md << ", ";
            md << cue.get<std::string>();
            first = false;
        }
        md << ")\n";
    }
    if (bundles.contains("multi_mu_d_spread")) {
        const Json& spread = bundles.at("multi_mu_d_spread");
        md << "- candidate mu_d spread: max-min corpus differential "
           << fixed6(spread.at("corpus_ed_spread").get<double>()) << " over "
           << spread.at("candidates").size() << " specifications\n";
    }

    if (report.contains("naturalness")) {
        const Json& nat = report.at("naturalness");
        md << "\n## Cue naturalness audit\n\n";
        md << "- rater accuracy: " << fixed6(nat.at("rater_accuracy").get<double>()) << " over "
           << nat.at("n_rated").get<int>() << " labels (exact p vs chance: "
           << fixed6(nat.at("p_value_vs_chance").get<double>()) << ")\n";
        md << "- verdict: " << nat.at("verdict").get<std::string>() << "\n";
        if (nat.contains("model_judge_accuracy")) {
            md << "- model-judge accuracy (sensitivity check): "
               << fixed6(nat.at("model_judge_accuracy").get<double>()) << "\n";
        }
    }

    if (report.contains("stopping")) {
        const Json& stopping = report.at("stopping");
        md << "\n## Stopping rule\n\n";
        md << "- mode: " << stopping.at("mode").get<std::string>() << "\n";
        md << "- resolving evidence: " << stopping.at("required_evidence_note").get<std::string>() << "\n";
    }

    if (report.contains("estimate")) {
        const Json& est = report.at("estimate");
        md << "\n## Differential estimate\n\n";
        md << "- property: " << est.at("property_id").get<std::string>() << "\n";
        md << "- P_T = " << fixed6(est.at("p_t").get<double>()) << ", P_D = "
           << fixed6(est.at("p_d").get<double>()) << "\n";
        md << "- corpus differential: " << fixed6(est.at("corpus_ed").get<double>()) << "\n";
        md << "- normalised: " << fixed6(est.at("ned").get<double>()) << " (sigma_pool "
           << fixed6(est.at("sigma_pool").get<double>()) << ", epsilon "
           << fixed6(est.at("epsilon").get<double>()) << ")\n";
        const Json& ci = est.at("ci");
        md << "- interval: [" << fixed6(ci.at("low").get<double>()) << ", "
           << fixed6(ci.at("high").get<double>()) << "] at alpha "
           << fixed6(est.at("alpha").get<double>()) << "\n";
        if (est.contains("judge_uncertainty")) {
            const Json& judge = est.at("judge_uncertainty");
            md << "- judge-scoring uncertainty: [" << fixed6(judge.at("low").get<double>()) << ", "
               << fixed6(judge.at("high").get<double>()) << "]\n";
        }
        const Json& sizes = est.at("sample_sizes");
        md << "- sample sizes: " << sizes.at("mu_t_samples").get<std::size_t>() << " test-like, "
           << sizes.at("mu_d_samples").get<std::size_t>() << " deployment-continuous, "
           << sizes.at("tasks").get<std::size_t>() << " shared tasks\n";
        if (est.contains("measurement_invariance")) {
            const Json& inv = est.at("measurement_invariance");
            md << "- measurement invariance: "
               << (inv.at("invariant").get<bool>() ? "no violation" : "VIOLATIONS FOUND") << " ("
               << inv.at("pairs_probed").get<int>() << " probe pairs)\n";
        }
        md << "- variance pooling: within-distribution variance pooled over all raw cell scores "
              "in each bundle\n";
    }

    const Json& layers = report.at("evidence_layers");
    md << "\n## Evidence layers\n\n";
    md << "- accessed: ";
    bool first = true;
    for (const Json& layer : layers.at("accessed")) {
        if (!first) md << ", ";
        md << layer.get<std::string>();
        first = false;
    }
    if (layers.at("accessed").empty()) md << "none";
    md << "\n- latent evidence available: "
       << (layers.at("latent_available").get<bool>() ? "yes" : "no") << "\n";

    if (report.contains("cue_ablations") && !report.at("cue_ablations").empty()) {
        md << "\n## Cue ablations\n\n";
        md << "| cue | baseline | ablated | delta | material |\n|---|---|---|---|---|\n";
        for (const Json& ablation : report.at("cue_ablations")) {
            md << "| " << ablation.at("cue_id").get<std::string>() << " | "
               << fixed6(ablation.at("ed_baseline").get<double>()) << " | "
               << fixed6(ablation.at("ed_ablated").get<double>()) << " | "
               << fixed6(ablation.at("delta").get<double>()) << " | "
               << (ablation.at("material").get<bool>() ? "yes" : "no") << " |\n";
        }
    }

    if (report.contains("coverage")) {
        const Json& coverage = report.at("coverage");
        md << "\n## Replay coverage\n\n";
        md << "- " << coverage.at("replayed").get<std::size_t>() << " of "
           << coverage.at("corpus_size").get<std::size_t>() << " tasks replayed (fraction "
           << fixed6(coverage.at("fraction").get<double>()) << ")\n";
    }

    const Json& provenance = report.at("provenance");
    md << "\n## Operational provenance\n\n";
    md << "- endpoint: " << provenance.at("model_endpoint").get<std::string>() << "\n";
    md << "- model version: " << provenance.at("model_version").get<std::string>() << "\n";
    md << "- access date: " << provenance.at("access_date").get<std::string>() << "\n";
    if (provenance.at("sampling_params").is_object() && !provenance.at("sampling_params").empty()) {
        const Json& sampling = provenance.at("sampling_params");
        md << "- sampling: n=" << sampling.at("n_samples").get<int>() << ", temperature "
           << fixed6(sampling.at("temperature").get<double>()) << ", seed "
           << sampling.at("seed").get<std::uint64_t>() << "\n";
    }
    md << "- query budget spent: "
       << provenance.at("query_budget").at("queries_issued").get<std::uint64_t>() << "\n";
    md << "- excluded cases: " << provenance.at("exclusions").size() << "\n";
    return md.str();
}

bool has_pointer(const Json& report, const std::string& pointer) {
    return report.contains(Json::json_pointer(pointer));
}

void require_field(const Json& report, std::vector<LintFinding>& findings, const char* row,
                   const std::string& pointer, const std::string& message) {
    if (!has_pointer(report, pointer)) {
        findings.push_back(LintFinding{row, pointer, message, LintSeverity::error});
    }
}

bool classified_undetermined(const Json& report) {
    return has_pointer(report, "/classification/claim_type") &&
           report.at(Json::json_pointer("/classification/claim_type")) == "undetermined";
}

}  // namespace

RenderedReport render_report(const AuditDossier& dossier) {
    if (!dossier.classification) {
        fail(Errc::incomplete_bundle, "cannot render a report without a classification");
    }

    Json report;
    report["toolkit_version"] = kToolkitVersion;
    report["timestamp"] = dossier.timestamp;
    report["claim"] = claim_to_json(dossier.claim);

    Json bundles = Json::object();
    bundles["mu_t"] = dossier.mu_t_summary;
    if (dossier.mu_d_summary) bundles["mu_d"] = *dossier.mu_d_summary;
    if (dossier.multi_mu_d_spread) bundles["multi_mu_d_spread"] = *dossier.multi_mu_d_spread;
    report["bundles"] = bundles;

    if (dossier.naturalness) report["naturalness"] = naturalness_to_json(*dossier.naturalness);
    if (dossier.stopping) report["stopping"] = finding_to_json(*dossier.stopping);

    if (dossier.ed) {
        Json estimate = ed_to_json(*dossier.ed);
        estimate["judge_based"] = dossier.judge_based;
        Json sizes{{"mu_t_samples", dossier.est_t ? dossier.est_t->total_samples : 0},
                   {"mu_d_samples", dossier.est_d ? dossier.est_d->total_samples : 0},
                   {"tasks", dossier.ed->pointwise.size()}};
        estimate["sample_sizes"] = sizes;
        if (dossier.invariance) {
            estimate["measurement_invariance"] = invariance_to_json(*dossier.invariance);
        }
        report["estimate"] = estimate;
    }

    report["evidence_layers"] = evidence_layers_section(dossier);

    Json ablations = Json::array();
    for (const CueMaterialityResult& ablation : dossier.ablations) {
        ablations.push_back(ablation_to_json(ablation));
    }
    report["cue_ablations"] = ablations;

    if (dossier.coverage) report["coverage"] = coverage_to_json(*dossier.coverage);
    report["classification"] = classification_to_json(*dossier.classification);

    const RestrictedClaim restricted =
        dossier.restricted ? *dossier.restricted : restrict_claim(dossier.claim, *dossier.classification);
    report["restricted_claim"] = restricted_claim_to_json(restricted);

    Json provenance{{"model_endpoint", dossier.provenance.model_endpoint},
                    {"model_version", dossier.provenance.model_version},
                    {"access_date", dossier.provenance.access_date},
                    {"scaffold_config", dossier.provenance.scaffold_config},
                    {"query_budget", Json{{"queries_issued", dossier.provenance.queries_issued}}},
                    {"exclusions", exclusions_to_json(dossier.provenance.exclusions)}};
    provenance["sampling_params"] =
        dossier.provenance.sampling ? sampling_to_json(*dossier.provenance.sampling) : Json::object();
    report["provenance"] = provenance;

    RenderedReport rendered;
    rendered.machine = report;
    rendered.human = render_markdown(report);
    return rendered;
}

std::vector<LintFinding> lint_report(const Json& report) {
    std::vector<LintFinding> findings;
    if (!report.is_object()) {
        findings.push_back(LintFinding{"document", "/", "report is not an object", LintSeverity::error});
        return findings;
    }

    // Row 1: task-context mapping.
    require_field(report, findings, "task_context_mapping", "/bundles/mu_t",
                  "test-like distribution construction missing");
    if (!classified_undetermined(report)) {
        require_field(report, findings, "task_context_mapping", "/bundles/mu_d",
                      "matched deployment-continuous construction missing on a determined claim");
    }

    // Row 2: statistical and threshold reporting.
    const bool has_estimate = report.contains("estimate");
    if (has_estimate) {
        for (const char* field : {"corpus_ed", "ned", "sigma_pool", "epsilon", "sample_sizes", "ci"}) {
            require_field(report, findings, "statistical_threshold_reporting",
                          std::string("/estimate/") + field,
                          std::string("estimate lacks ") + field);
        }
        if (has_pointer(report, "/estimate/judge_based") &&
            report.at(Json::json_pointer("/estimate/judge_based")).is_boolean() &&
            report.at(Json::json_pointer("/estimate/judge_based")).get<bool>()) {
            require_field(report, findings, "statistical_threshold_reporting",
                          "/estimate/judge_uncertainty",
                          "judge-based scoring without a separate judge interval");
        }
    } else if (!has_pointer(report, "/stopping") && !classified_undetermined(report)) {
        findings.push_back(LintFinding{"statistical_threshold_reporting", "/estimate",
                                       "neither a differential estimate nor an undetermined status",
                                       LintSeverity::error});
    }
    require_field(report, findings, "statistical_threshold_reporting", "/claim/safety_direction",
                  "safety direction not pre-specified");
    if (has_pointer(report, "/claim/claim_form") &&
        report.at(Json::json_pointer("/claim/claim_form")) == "threshold") {
        require_field(report, findings, "statistical_threshold_reporting", "/claim/tau",
                      "threshold claim without a pre-specified tau");
    }

    // Row 3: operational provenance.
    for (const char* field : {"model_endpoint", "model_version", "access_date", "sampling_params",
                              "scaffold_config", "query_budget", "exclusions"}) {
        require_field(report, findings, "operational_provenance", std::string("/provenance/") + field,
                      std::string("provenance lacks ") + field);
    }

    // Row 4: evidence and property specificity.
    require_field(report, findings, "evidence_property_specificity", "/evidence_layers/accessed",
                  "evidence layers accessed not reported");
    require_field(report, findings, "evidence_property_specificity", "/evidence_layers/latent_available",
                  "latent-evidence availability not stated");
    require_field(report, findings, "evidence_property_specificity", "/claim/property_id",
                  "claim does not name the behavioural property");
    if (has_estimate) {
        require_field(report, findings, "evidence_property_specificity", "/estimate/property_id",
                      "differential not tied to a single property");
        if (has_pointer(report, "/estimate/aggregated_across_properties") &&
            report.at(Json::json_pointer("/estimate/aggregated_across_properties")).get<bool>()) {
            findings.push_back(LintFinding{"evidence_property_specificity",
                                           "/estimate/aggregated_across_properties",
                                           "differential aggregated across properties into one number",
                                           LintSeverity::error});
        }
    }

    // Stylistic expectations (warnings only).
    for (const char* field : {"/toolkit_version", "/timestamp"}) {
        if (!has_pointer(report, field)) {
            findings.push_back(
                LintFinding{"style", field, "report metadata incomplete", LintSeverity::warning});
        }
    }
    return findings;
}

bool lint_clean(const std::vector<LintFinding>& findings) {
    for (const LintFinding& finding : findings) {
        if (finding.severity == LintSeverity::error) return false;
    }
    return true;
}

Json lint_to_json(const std::vector<LintFinding>& findings) {
    Json out = Json::array();
    for (const LintFinding& finding : findings) {
        out.push_back(Json{{"requirement_row", finding.requirement_row},
                           {"missing_field", finding.missing_field},
                           {"message", finding.message},
                           {"severity", finding.severity == LintSeverity::error ? "error" : "warning"}});
    }
    return out;
}

std::vector<std::string> lint_field_pointers(const Json& report) {
    std::vector<std::string> pointers = {"/bundles/mu_t", "/claim/safety_direction",
                                         "/claim/property_id"};
    if (!classified_undetermined(report)) pointers.push_back("/bundles/mu_d");
    if (has_pointer(report, "/claim/claim_form") &&
        report.at(Json::json_pointer("/claim/claim_form")) == "threshold") {
        pointers.push_back("/claim/tau");
    }
    if (report.contains("estimate")) {
        for (const char* field : {"corpus_ed", "ned", "sigma_pool", "epsilon", "sample_sizes", "ci",
                                  "property_id"}) {
            pointers.push_back(std::string("/estimate/") + field);
        }
        if (has_pointer(report, "/estimate/judge_based") &&
            report.at(Json::json_pointer("/estimate/judge_based")).get<bool>()) {
            pointers.push_back("/estimate/judge_uncertainty");
        }
    }
    for (const char* field : {"model_endpoint", "model_version", "access_date", "sampling_params",
                              "scaffold_config", "query_budget", "exclusions"}) {
        pointers.push_back(std::string("/provenance/") + field);
    }
    pointers.push_back("/evidence_layers/accessed");
    pointers.push_back("/evidence_layers/latent_available");
    return pointers;
}

}  // namespace edaudit
