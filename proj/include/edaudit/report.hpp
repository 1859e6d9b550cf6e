#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edaudit/audit.hpp"
#include "edaudit/bootstrap.hpp"
#include "edaudit/estimator.hpp"
#include "edaudit/json_util.hpp"
#include "edaudit/scoring.hpp"
#include "edaudit/typology.hpp"
#include "edaudit/types.hpp"

namespace edaudit {

inline constexpr const char* kToolkitVersion = "edaudit 0.1.0";

struct ProvenanceBlock {
    std::string model_endpoint;  // "synthetic", "replay", or the URL
    std::string model_version;
    std::string access_date;  // injected timestamp date in deterministic runs
    std::optional<SamplingParams> sampling;
    Json scaffold_config = Json::object();  // scaffold descriptors per bundle
    std::uint64_t queries_issued = 0;
    std::vector<Exclusion> exclusions;
};

// Everything an audit produced, gathered for rendering. Optional sections
// stay absent in the output rather than rendering empty.
struct AuditDossier {
    ClaimSpec claim;
    Json mu_t_summary = Json::object();
    std::optional<Json> mu_d_summary;
    std::optional<Json> multi_mu_d_spread;
    std::optional<NaturalnessReport> naturalness;
    std::optional<UndeterminedFinding> stopping;
    std::optional<PropertyEstimate> est_t;
    std::optional<PropertyEstimate> est_d;
    std::optional<EDEstimate> ed;
    bool judge_based = false;
    std::optional<InvarianceReport> invariance;
    std::vector<EvidenceRecord> evidence;
    std::vector<CueMaterialityResult> ablations;
    std::optional<CoverageRecord> coverage;
    std::optional<ClaimClassification> classification;
    std::optional<RestrictedClaim> restricted;
    ProvenanceBlock provenance;
    std::string timestamp;  // ISO-8601; injectable for byte-stable output
};

struct RenderedReport {
    Json machine;
    std::string human;  // markdown, derived from the same structure
};

// Renders the restricted-claim report in both forms. Throws IncompleteBundle
// when no classification is present. Byte-deterministic given the timestamp.
RenderedReport render_report(const AuditDossier& dossier);

enum class LintSeverity { error, warning };

struct LintFinding {
    std::string requirement_row;
    std::string missing_field;
    std::string message;
    LintSeverity severity = LintSeverity::error;
};

// Checks a machine-readable report against the four minimum-reporting rows:
// task-context mapping, statistical and threshold reporting, operational
// provenance, and evidence/property specificity.
std::vector<LintFinding> lint_report(const Json& report);

bool lint_clean(const std::vector<LintFinding>& findings);
Json lint_to_json(const std::vector<LintFinding>& findings);

// JSON pointers of every requirement-mapped field applicable to `report`;
// knocking any of them out must trip the lint.
std::vector<std::string> lint_field_pointers(const Json& report);

}  // namespace edaudit
