#include "edaudit/errors.hpp"

namespace edaudit {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::missing_threshold: return "MissingThreshold";
        case Errc::tau_out_of_range: return "TauOutOfRange";
        case Errc::unknown_property: return "UnknownProperty";
        case Errc::empty_claim_text: return "EmptyClaimText";
        case Errc::parse_error: return "ParseError";
        case Errc::dangling_cue_reference: return "DanglingCueReference";
        case Errc::empty_feasible_bundle: return "EmptyFeasibleBundle";
        case Errc::remote_unavailable: return "RemoteUnavailable";
        case Errc::auth_failure: return "AuthFailure";
        case Errc::schema_mismatch: return "SchemaMismatch";
        case Errc::transcript_miss: return "TranscriptMiss";
        case Errc::infeasible_bundle: return "InfeasibleBundle";
        case Errc::all_cells_excluded: return "AllCellsExcluded";
        case Errc::corpus_mismatch: return "CorpusMismatch";
        case Errc::scorer_mismatch: return "ScorerMismatch";
        case Errc::non_positive_epsilon: return "NonPositiveEpsilon";
        case Errc::insufficient_data: return "InsufficientData";
        case Errc::too_few_samples: return "TooFewSamples";
        case Errc::unknown_cue: return "UnknownCue";
        case Errc::ablation_noop: return "AblationNoOp";
        case Errc::foreign_task_id: return "ForeignTaskId";
        case Errc::not_threshold_claim: return "NotThresholdClaim";
        case Errc::insufficient_input: return "InsufficientInput";
        case Errc::incomplete_bundle: return "IncompleteBundle";
        case Errc::lint_failure: return "LintFailure";
        case Errc::duplicate_digest: return "DuplicateDigest";
        case Errc::corrupt_registry: return "CorruptRegistry";
        case Errc::unknown_fixture: return "UnknownFixture";
        case Errc::invalid_config: return "InvalidConfig";
        case Errc::io_error: return "IoError";
    }
    return "UnknownError";
}

}  // namespace edaudit
