#include "edaudit/typology.hpp"

#include <cmath>
#include <sstream>

namespace edaudit {

namespace {

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

// Quantitative keys evidence records use to document that test-like contexts
// plausibly bias the measured property in the claim-favourable direction.
bool suppression_risk_documented(const std::vector<EvidenceRecord>& evidence, std::string* why) {
    for (const EvidenceRecord& record : evidence) {
        if (record.layer == EvidenceLayer::latent_recognition) {
            auto test = record.quantitative.find("recognition_rate_test");
            auto deploy = record.quantitative.find("recognition_rate_deployment");
            if (test != record.quantitative.end() && deploy != record.quantitative.end() &&
                test->second > deploy->second) {
                if (why) {
                    *why = "latent recognition is elevated in test contexts (" + fmt(test->second) +
                           " vs " + fmt(deploy->second) + " in deployment-continuous use): " +
                           record.summary;
                }
                return true;
            }
        }
        if (record.layer == EvidenceLayer::behavioural_differential) {
            auto base = record.quantitative.find("p_t");
            auto suppressed = record.quantitative.find("p_t_awareness_suppressed");
            if (base != record.quantitative.end() && suppressed != record.quantitative.end() &&
                suppressed->second > base->second) {
                if (why) {
                    *why = "awareness-mediation: the measured property rises from " +
                           fmt(base->second) + " to " + fmt(suppressed->second) +
                           " when awareness reasoning is suppressed: " + record.summary;
                }
                return true;
            }
        }
    }
    return false;
}

bool behavioural_divergence_documented(const std::vector<EvidenceRecord>& evidence,
                                       std::string* why) {
    for (const EvidenceRecord& record : evidence) {
        if (record.layer == EvidenceLayer::behavioural_differential) {
            if (why) *why = record.summary;
            return true;
        }
    }
    return false;
}

bool latent_only(const std::vector<EvidenceRecord>& evidence) {
    bool any = false;
    for (const EvidenceRecord& record : evidence) {
        if (record.layer == EvidenceLayer::behavioural_differential) return false;
        any = true;
    }
    return any;
}

}  // namespace

const char* to_string(ClaimType t) {
    switch (t) {
        case ClaimType::stable: return "stable";
        case ClaimType::degraded: return "degraded";
        case ClaimType::inverted: return "inverted";
        case ClaimType::undetermined: return "undetermined";
    }
    return "?";
}

const char* to_string(ConfidenceMode m) {
    switch (m) {
        case ConfidenceMode::point: return "point";
        case ConfidenceMode::ci_conservative: return "ci_conservative";
        case ConfidenceMode::candidate: return "candidate";
    }
    return "?";
}

const char* to_string(InversionStatus s) {
    switch (s) {
        case InversionStatus::not_inverted: return "not_inverted";
        case InversionStatus::candidate_inverted: return "candidate_inverted";
        case InversionStatus::inverted: return "inverted";
    }
    return "?";
}

InversionResult inversion_test(const ClaimSpec& claim, double p_t, const EDEstimate& ed) {
    if (claim.claim_form != ClaimForm::threshold || !claim.tau) {
        fail(Errc::not_threshold_claim, "inversion test applies only to threshold claims");
    }
    const double boundary = p_t - *claim.tau;

    InversionResult result;
    result.margin = std::abs(ed.corpus_ed - boundary);

    const bool lower_safer = claim.safety_direction == SafetyDirection::lower_is_safer;
    const bool point_inverts = lower_safer ? ed.corpus_ed < boundary : ed.corpus_ed > boundary;
    if (!point_inverts) {
        result.status = InversionStatus::not_inverted;
        return result;
    }
    const bool ci_inverts =
        ed.ci && (lower_safer ? ed.ci->high < boundary : ed.ci->low > boundary);
    result.status = ci_inverts ? InversionStatus::inverted : InversionStatus::candidate_inverted;
    return result;
}

ClaimClassification classify(const ClaimSpec& claim, const std::optional<EDEstimate>& ed,
                             std::optional<double> p_t,
                             const std::optional<UndeterminedFinding>& stopping,
                             const std::vector<EvidenceRecord>& evidence,
                             const ClassifyOptions& options) {
    if (!stopping && !ed && evidence.empty()) {
        fail(Errc::insufficient_input,
             "classification needs a stopping finding, a differential estimate, or evidence records");
    }

    ClaimClassification out;
    out.claim_id = claim.claim_id;

    if (!p_t && ed) p_t = ed->p_t;
    if (ed && p_t) out.implied_p_d = *p_t - ed->corpus_ed;

    // Stopping precedence: an infeasible deployment distribution overrides
    // anything already estimated.
    if (stopping) {
        out.claim_type = ClaimType::undetermined;
        out.confidence_mode = ConfidenceMode::point;
        out.rationale = std::string("no defensible deployment-continuous distribution (") +
                        to_string(stopping->mode) + "); " + stopping->required_evidence_note;
        return out;
    }

    if (ed) {
        if (ed->ci && (ed->ci->high - ed->ci->low) >
                          options.noise_ci_width_fraction * options.range.width()) {
            out.claim_type = ClaimType::undetermined;
            out.confidence_mode = ConfidenceMode::point;
            out.rationale = "differential estimate too noisy: interval width " +
                            fmt(ed->ci->high - ed->ci->low) + " exceeds " +
                            fmt(options.noise_ci_width_fraction) + " of the score range; " +
                            "narrower intervals (more samples or tasks) would resolve the state";
            return out;
        }

        const double materiality =
            options.materiality.raw_threshold(ed->sigma_pool, ed->epsilon);

        switch (claim.claim_form) {
            case ClaimForm::threshold: {
                const InversionResult inv = inversion_test(claim, *p_t, *ed);
                const double boundary = *p_t - *claim.tau;
                if (inv.status == InversionStatus::inverted) {
                    out.claim_type = ClaimType::inverted;
                    out.confidence_mode = ConfidenceMode::ci_conservative;
                    out.rationale = "the whole interval satisfies the inversion condition (corpus_ed " +
                                    fmt(ed->corpus_ed) + " vs boundary " + fmt(boundary) +
                                    ", margin " + fmt(inv.margin) + "): the deployment threshold fails " +
                                    "despite the evaluation appearing to satisfy it";
                } else if (inv.status == InversionStatus::candidate_inverted) {
                    out.claim_type = ClaimType::inverted;
                    out.confidence_mode = ConfidenceMode::candidate;
                    out.rationale = "the point estimate satisfies the inversion condition (corpus_ed " +
                                    fmt(ed->corpus_ed) + " vs boundary " + fmt(boundary) +
                                    ") but the interval does not verify it";
                } else {
                    out.claim_type = ClaimType::stable;
                    const bool lower_safer = claim.safety_direction == SafetyDirection::lower_is_safer;
                    const bool ci_excludes_inversion =
                        ed->ci && (lower_safer ? ed->ci->low >= boundary : ed->ci->high <= boundary);
                    out.confidence_mode =
                        ci_excludes_inversion ? ConfidenceMode::ci_conservative : ConfidenceMode::point;
                    out.rationale = "the implied deployment value " + fmt(*out.implied_p_d) +
                                    " stays on the safe side of tau " + fmt(*claim.tau);
                }
                return out;
            }
            case ClaimForm::existence: {
                out.claim_type = ClaimType::stable;
                out.confidence_mode = ConfidenceMode::point;
                out.rationale = "existence claims are preserved under the observed condition; "
                                "measured differential " +
                                fmt(ed->corpus_ed) + " does not touch the observed instance";
                return out;
            }
            case ClaimForm::bound_upper:
            case ClaimForm::bound_lower: {
                const bool upper = claim.claim_form == ClaimForm::bound_upper;
                // Upper bound P_D <= P_T needs corpus_ed >= 0; lower bound mirrors.
                const double signed_ed = upper ? ed->corpus_ed : -ed->corpus_ed;
                if (signed_ed >= -materiality) {
                    out.claim_type = ClaimType::stable;
                    const bool direction_verified =
                        ed->ci && (upper ? ed->ci->low >= 0.0 : ed->ci->high <= 0.0);
                    out.confidence_mode =
                        direction_verified ? ConfidenceMode::ci_conservative : ConfidenceMode::point;
                    out.rationale = std::string("differential direction is consistent with the bound") +
                                    (direction_verified ? " and the interval excludes the adverse sign"
                                                        : "; the interval does not yet verify the direction");
                } else {
                    out.claim_type = ClaimType::degraded;
                    out.confidence_mode = ConfidenceMode::point;
                    out.rationale = "differential direction (corpus_ed " + fmt(ed->corpus_ed) +
                                    ") is adverse to the claimed bound beyond the materiality threshold " +
                                    fmt(materiality);
                }
                return out;
            }
            case ClaimForm::prevalence: {
                if (std::abs(ed->corpus_ed) > materiality) {
                    out.claim_type = ClaimType::degraded;
                    out.confidence_mode = ConfidenceMode::point;
                    out.rationale = "non-trivial differential (corpus_ed " + fmt(ed->corpus_ed) +
                                    ", threshold " + fmt(materiality) +
                                    "): the evaluation constrains plausible deployment behaviour " +
                                    "but does not support a point claim";
                } else {
                    out.claim_type = ClaimType::stable;
                    out.confidence_mode = ConfidenceMode::point;
                    out.rationale = "measured differential " + fmt(ed->corpus_ed) +
                                    " is below the materiality threshold " + fmt(materiality);
                }
                return out;
            }
        }
    }

    // No estimate and no stopping finding: the evidence records decide.
    std::string why;
    switch (claim.claim_form) {
        case ClaimForm::existence:
            out.claim_type = ClaimType::stable;
            out.confidence_mode = ConfidenceMode::point;
            out.rationale = "preserved as an observed-condition existence claim; no differential "
                            "estimate is needed for the observed instance";
            break;
        case ClaimForm::threshold:
            if (suppression_risk_documented(evidence, &why)) {
                out.claim_type = ClaimType::inverted;
                out.confidence_mode = ConfidenceMode::candidate;
                out.rationale = "structural inversion risk for a suppressible-property threshold "
                                "claim without deployment replay; " +
                                why;
            } else {
                out.claim_type = ClaimType::undetermined;
                out.confidence_mode = ConfidenceMode::point;
                out.rationale = "threshold claim without a differential estimate; matched "
                                "deployment-continuous replay would resolve the state";
            }
            break;
        case ClaimForm::prevalence:
            if (behavioural_divergence_documented(evidence, &why)) {
                out.claim_type = ClaimType::degraded;
                out.confidence_mode = ConfidenceMode::candidate;
                out.rationale = "behavioural divergence documented without a corpus-level "
                                "differential estimate: " +
                                why + "; the deployment point claim is not supported without replay";
            } else {
                out.claim_type = ClaimType::undetermined;
                out.confidence_mode = ConfidenceMode::point;
                out.rationale =
                    latent_only(evidence)
                        ? "latent recognition evidences context representation, not claim-relevant "
                          "behavioural divergence; paired behavioural replay under matched "
                          "deployment-continuous contexts would resolve the state"
                        : "no behavioural evidence and no differential estimate; matched "
                          "deployment-continuous replay would resolve the state";
            }
            break;
        case ClaimForm::bound_upper:
        case ClaimForm::bound_lower:
            out.claim_type = ClaimType::undetermined;
            out.confidence_mode = ConfidenceMode::point;
            out.rationale = "bound claims need a verified differential direction; no estimate "
                            "was supplied, so the direction cannot be verified";
            break;
    }
    return out;
}

RestrictedClaim restrict_claim(const ClaimSpec& claim, const ClaimClassification& classification) {
    RestrictedClaim out;
    out.original = claim.verbatim_claim;
    out.scope_note = "test-like contexts as audited; model version " + claim.model_version +
                     (claim.deployment_context_note.empty()
                          ? ""
                          : "; intended deployment: " + claim.deployment_context_note);

    switch (classification.claim_type) {
        case ClaimType::stable:
            out.restricted = claim.verbatim_claim + " [scope: holds under the observed test-like "
                             "conditions; deployment extension rests on the verified differential "
                             "direction or the observed instance, not on the evaluation score alone]";
            out.delta_summary = "scope annotation added; substance unchanged";
            break;
        case ClaimType::degraded:
            out.restricted = "The evaluation result constrains plausible deployment behaviour for '" +
                             claim.property_id + "' but does not support the deployment point claim: " +
                             classification.rationale;
            out.delta_summary = "deployment point claim weakened to a constraint statement";
            break;
        case ClaimType::inverted: {
            std::string retained = "measured behaviour under the audited test-like contexts";
            if (classification.implied_p_d) {
                retained += "; implied deployment value " + fmt(*classification.implied_p_d) +
                            (claim.tau ? " vs claimed threshold " + fmt(*claim.tau) : "");
            }
            out.restricted = "Withdrawn for deployment: the original claim is supported only for the "
                             "test-like context region. Retained: " +
                             retained + ". " + classification.rationale;
            out.delta_summary = classification.confidence_mode == ConfidenceMode::candidate
                                    ? "deployment claim suspended as a candidate inversion pending "
                                      "deployment-continuous replay"
                                    : "deployment claim withdrawn; test-like-region claim retained";
            break;
        }
        case ClaimType::undetermined:
            out.restricted = "Weakened pending further audit: the differential cannot be assessed. " +
                             classification.rationale;
            out.delta_summary = "claim held undetermined with the resolving evidence named";
            break;
    }
    return out;
}

Json classification_to_json(const ClaimClassification& classification) {
    Json out{{"claim_id", classification.claim_id},
             {"claim_type", to_string(classification.claim_type)},
             {"confidence_mode", to_string(classification.confidence_mode)},
             {"rationale", classification.rationale}};
    if (classification.implied_p_d) out["implied_p_d"] = *classification.implied_p_d;
    return out;
}

Json restricted_claim_to_json(const RestrictedClaim& restricted) {
    return Json{{"original", restricted.original},
                {"restricted", restricted.restricted},
                {"scope_note", restricted.scope_note},
                {"delta_summary", restricted.delta_summary}};
}

std::vector<EvidenceRecord> load_evidence_records(const std::filesystem::path& path) {
    const Json raw = load_json_file(path);
    if (!raw.is_array()) fail(Errc::parse_error, path.string() + ": expected an array of records");
    std::vector<EvidenceRecord> records;
    for (const Json& raw_record : raw) {
        StrictObject doc(raw_record, "evidence record");
        EvidenceRecord record;
        const std::string layer = doc.require_string("layer");
        if (layer == "behavioural_differential") {
            record.layer = EvidenceLayer::behavioural_differential;
        } else if (layer == "verbalised_recognition") {
            record.layer = EvidenceLayer::verbalised_recognition;
        } else if (layer == "latent_recognition") {
            record.layer = EvidenceLayer::latent_recognition;
        } else if (layer == "context_cue_sensitivity") {
            record.layer = EvidenceLayer::context_cue_sensitivity;
        } else {
            fail(Errc::parse_error, "unknown evidence layer '" + layer + "'");
        }
        const std::string access = doc.require_string("access_level");
        if (access == "api_only") {
            record.access_level = AccessLevel::api_only;
        } else if (access == "lab_cooperation") {
            record.access_level = AccessLevel::lab_cooperation;
        } else if (access == "interpretability_access") {
            record.access_level = AccessLevel::interpretability_access;
        } else {
            fail(Errc::parse_error, "unknown access level '" + access + "'");
        }
        record.summary = doc.require_string("summary");
        if (const Json* quantitative = doc.optional("quantitative")) {
            for (auto it = quantitative->begin(); it != quantitative->end(); ++it) {
                record.quantitative[it.key()] = it.value().get<double>();
            }
        }
        doc.finish();
        // latent findings cannot come from plain API access
        if (record.layer == EvidenceLayer::latent_recognition &&
            record.access_level == AccessLevel::api_only) {
            fail(Errc::parse_error, "latent_recognition evidence requires more than api_only access");
        }
        records.push_back(std::move(record));
    }
    return records;
}

Json evidence_to_json(const std::vector<EvidenceRecord>& records) {
    Json out = Json::array();
    for (const EvidenceRecord& record : records) {
        Json quantitative = Json::object();
        for (const auto& [k, v] : record.quantitative) quantitative[k] = v;
        out.push_back(Json{{"layer", to_string(record.layer)},
                           {"access_level", to_string(record.access_level)},
                           {"summary", record.summary},
                           {"quantitative", quantitative}});
    }
    return out;
}

}  // namespace edaudit
