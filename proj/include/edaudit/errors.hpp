#pragma once

#include <stdexcept>
#include <string>

namespace edaudit {

// Error codes shared across the toolkit. The CLI maps these onto exit codes;
// tests match on them instead of message text.
enum class Errc {
    // claim specs
    missing_threshold,
    tau_out_of_range,
    unknown_property,
    empty_claim_text,
    // bundles
    parse_error,
    dangling_cue_reference,
    empty_feasible_bundle,
    // policies
    remote_unavailable,
    auth_failure,
    schema_mismatch,
    transcript_miss,
    // estimation
    infeasible_bundle,
    all_cells_excluded,
    corpus_mismatch,
    scorer_mismatch,
    non_positive_epsilon,
    insufficient_data,
    // audit
    too_few_samples,
    unknown_cue,
    ablation_noop,
    foreign_task_id,
    // typology
    not_threshold_claim,
    insufficient_input,
    // report / registry
    incomplete_bundle,
    lint_failure,
    duplicate_digest,
    corrupt_registry,
    // fixtures / cli
    unknown_fixture,
    invalid_config,
    io_error,
};

const char* errc_name(Errc code);

class AuditError : public std::runtime_error {
public:
    AuditError(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw AuditError(code, message);
}

}  // namespace edaudit
