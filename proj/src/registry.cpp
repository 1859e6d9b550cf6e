#include "edaudit/registry.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <fstream>

#include "edaudit/digest.hpp"
#include "edaudit/report.hpp"

namespace edaudit {

namespace {

// Canonical bytes for digesting: nlohmann keeps object keys sorted, so dump()
// is stable for equal content.
std::string canonical(const Json& value) { return value.dump(); }

Json entry_payload(const RegistryEntry& entry) {
    Json out{{"registry_claim_id", entry.registry_claim_id},
             {"claim_id", entry.claim_id},
             {"model_version", entry.model_version},
             {"report_digest", entry.report_digest},
             {"classification", entry.classification}};
    out["supersedes"] = entry.supersedes ? Json(*entry.supersedes) : Json(nullptr);
    return out;
}

RegistryEntry parse_entry(const Json& raw, std::size_t line_number) {
    if (!raw.is_object() || !raw.contains("entry_digest")) {
        fail(Errc::corrupt_registry, "line " + std::to_string(line_number) + " is not a registry entry");
    }
    RegistryEntry entry;
    try {
        entry.registry_claim_id = raw.at("registry_claim_id").get<std::string>();
        entry.claim_id = raw.at("claim_id").get<std::string>();
        entry.model_version = raw.at("model_version").get<std::string>();
        entry.report_digest = raw.at("report_digest").get<std::string>();
        entry.classification = raw.at("classification").get<std::string>();
        if (!raw.at("supersedes").is_null()) {
            entry.supersedes = raw.at("supersedes").get<std::string>();
        }
    } catch (const Json::exception&) {
        fail(Errc::corrupt_registry, "malformed entry at line " + std::to_string(line_number));
    }
    const std::string stored = raw.at("entry_digest").get<std::string>();
    if (stored != sha256_hex(canonical(entry_payload(entry)))) {
        fail(Errc::corrupt_registry, "digest mismatch at line " + std::to_string(line_number));
    }
    return entry;
}

std::vector<RegistryEntry> read_all(const std::filesystem::path& registry_path) {
    std::vector<RegistryEntry> entries;
    std::ifstream in(registry_path);
    if (!in) return entries;  // absent registry reads as empty
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        const Json raw = Json::parse(line, nullptr, false);
        if (raw.is_discarded()) {
            fail(Errc::corrupt_registry, "unparseable line " + std::to_string(line_number));
        }
        entries.push_back(parse_entry(raw, line_number));
    }
    return entries;
}

// Advisory single-writer lock for the append path.
class FileLock {
public:
    explicit FileLock(const std::filesystem::path& path) {
        fd_ = ::open((path.string() + ".lock").c_str(), O_CREAT | O_RDWR, 0644);
        if (fd_ >= 0) ::flock(fd_, LOCK_EX);
    }
    ~FileLock() {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }

private:
    int fd_ = -1;
};

}  // namespace

RegistryEntry registry_append(const std::filesystem::path& registry_path, const Json& report) {
    const std::vector<LintFinding> findings = lint_report(report);
    if (!lint_clean(findings)) {
        std::string detail;
        for (const LintFinding& finding : findings) {
            if (finding.severity == LintSeverity::error) {
                detail += (detail.empty() ? "" : "; ") + finding.missing_field;
            }
        }
        fail(Errc::lint_failure, "report fails minimum reporting requirements: " + detail);
    }

    RegistryEntry entry;
    entry.claim_id = report.at("claim").at("claim_id").get<std::string>();
    entry.model_version = report.at("provenance").at("model_version").get<std::string>();
    entry.classification = report.at("classification").at("claim_type").get<std::string>();
    entry.report_digest = sha256_hex(canonical(report));
    entry.registry_claim_id =
        "rc-" + sha256_hex(entry.claim_id + "\x1f" + entry.model_version + "\x1f" + entry.report_digest)
                    .substr(0, 16);

    FileLock lock(registry_path);
    const std::vector<RegistryEntry> existing = read_all(registry_path);
    for (const RegistryEntry& prior : existing) {
        if (prior.report_digest == entry.report_digest) {
            fail(Errc::duplicate_digest, "identical report already registered as " + prior.registry_claim_id);
        }
    }
    for (auto it = existing.rbegin(); it != existing.rend(); ++it) {
        if (it->claim_id == entry.claim_id) {
            entry.supersedes = it->registry_claim_id;
            break;
        }
    }

    Json line = entry_payload(entry);
    line["entry_digest"] = sha256_hex(canonical(entry_payload(entry)));

    std::ofstream out(registry_path, std::ios::app);
    if (!out) fail(Errc::io_error, "cannot append to " + registry_path.string());
    out << line.dump() << "\n";
    return entry;
}

std::vector<RegistryEntry> registry_query(const std::filesystem::path& registry_path,
                                          const RegistryFilter& filter) {
    std::vector<RegistryEntry> entries = read_all(registry_path);
    std::vector<RegistryEntry> out;
    for (RegistryEntry& entry : entries) {
        if (filter.claim_id && entry.claim_id != *filter.claim_id) continue;
        if (filter.model_version && entry.model_version != *filter.model_version) continue;
        if (filter.classification && entry.classification != *filter.classification) continue;
        out.push_back(std::move(entry));
    }
    return out;
}

Json registry_entry_to_json(const RegistryEntry& entry) { return entry_payload(entry); }

}  // namespace edaudit
