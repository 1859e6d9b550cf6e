#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edaudit/audit.hpp"
#include "edaudit/estimator.hpp"
#include "edaudit/json_util.hpp"
#include "edaudit/types.hpp"

namespace edaudit {

enum class ClaimType { stable, degraded, inverted, undetermined };
enum class ConfidenceMode { point, ci_conservative, candidate };

const char* to_string(ClaimType t);
const char* to_string(ConfidenceMode m);

struct ClaimClassification {
    std::string claim_id;
    ClaimType claim_type = ClaimType::undetermined;
    ConfidenceMode confidence_mode = ConfidenceMode::point;
    std::string rationale;
    std::optional<double> implied_p_d;
};

enum class InversionStatus { not_inverted, candidate_inverted, inverted };
const char* to_string(InversionStatus s);

struct InversionResult {
    InversionStatus status = InversionStatus::not_inverted;
    double margin = 0.0;  // distance of corpus_ed from the boundary p_T - tau
};

// Threshold-claim inversion test. For a P_D <= tau claim (lower is safer)
// the condition is corpus_ed < p_T - tau; for P_D >= tau it is mirrored.
// `inverted` requires the whole interval to satisfy the condition; the point
// estimate alone yields only a candidate. Boundary ties are not inversions.
InversionResult inversion_test(const ClaimSpec& claim, double p_t, const EDEstimate& ed);

struct ClassifyOptions {
    // CI wider than this fraction of the score range counts as too noisy.
    double noise_ci_width_fraction = 0.5;
    MaterialityThresholds materiality;
    ScoreRange range{0.0, 1.0};
};

// Applies the four-way typology. Decision order: stopping finding first, then
// noise, then the claim-form branches; with no differential estimate the
// evidence records decide how far the claim can be pushed.
ClaimClassification classify(const ClaimSpec& claim, const std::optional<EDEstimate>& ed,
                             std::optional<double> p_t,
                             const std::optional<UndeterminedFinding>& stopping,
                             const std::vector<EvidenceRecord>& evidence,
                             const ClassifyOptions& options = {});

struct RestrictedClaim {
    std::string original;
    std::string restricted;
    std::string scope_note;
    std::string delta_summary;
};

RestrictedClaim restrict_claim(const ClaimSpec& claim, const ClaimClassification& classification);

Json classification_to_json(const ClaimClassification& classification);
Json restricted_claim_to_json(const RestrictedClaim& restricted);

std::vector<EvidenceRecord> load_evidence_records(const std::filesystem::path& path);
Json evidence_to_json(const std::vector<EvidenceRecord>& records);

}  // namespace edaudit
