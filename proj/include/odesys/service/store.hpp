#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "odesys/hooks.hpp"
#include "odesys/solver.hpp"

namespace odesys::service {

enum class RunStatus { queued, running, done, failed };

std::string to_string(RunStatus status);
RunStatus run_status_from(const std::string& text);

struct RunRecord {
    std::string id;
    std::string problem_id;
    std::string method;
    GAConfig config;
    std::vector<std::vector<double>> seeds;
    RunStatus status = RunStatus::queued;
    std::string snapshot_hash;   ///< hash of the problem document the run used
    std::string created;         ///< UTC, ISO 8601
    std::string finished;        ///< empty until done or failed
    std::string error_code;
    std::string error_message;
    bool has_result = false;
};

Document record_to_json(const RunRecord& record);
RunRecord record_from_json(const Document& doc);

/// FNV-1a 64-bit of the compact document text, as 16 hex digits.
std::string snapshot_hash(const Document& document);

/// Writes through a temporary file in the same directory followed by an
/// fsync and rename, so readers see either the old or the new file.
void atomic_write(const std::filesystem::path& path, const std::string& text);

/// File-backed problems and run records. Layout under the root:
///   problems/<id>.json
///   runs/<id>.json          record
///   runs/<id>.result.json   result bytes, written once
/// Every mutation goes through one mutex.
class SessionStore {
public:
    /// Creates the directories and seeds the bundled problems that are not
    /// present yet.
    explicit SessionStore(std::filesystem::path root);

    /// ODESYS_STORE_DIR when set, otherwise ./odesys_store.
    static std::filesystem::path default_root();

    const std::filesystem::path& root() const noexcept { return root_; }

    std::vector<std::pair<std::string, std::string>> list_problems() const;  ///< (id, name)
    std::optional<Document> get_problem(const std::string& id) const;
    void put_problem(const std::string& id, const Document& document);

    std::string next_run_id();
    void put_run(const RunRecord& record);
    void put_run_result(const std::string& id, const std::string& bytes);
    std::optional<RunRecord> get_run(const std::string& id) const;
    std::optional<std::string> get_run_result(const std::string& id) const;
    /// Ordered by id, which follows submission order.
    std::vector<RunRecord> list_runs(const std::optional<std::string>& problem_id = std::nullopt) const;

    static bool valid_id(const std::string& id);

private:
    std::filesystem::path problems_dir() const { return root_ / "problems"; }
    std::filesystem::path runs_dir() const { return root_ / "runs"; }

    std::filesystem::path root_;
    mutable std::mutex mutex_;
    unsigned long long run_counter_ = 0;
};

}  // namespace odesys::service
