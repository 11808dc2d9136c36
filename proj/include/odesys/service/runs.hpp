#pragma once

#include <condition_variable>
#include <cstddef>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "odesys/baselines.hpp"
#include "odesys/error.hpp"
#include "odesys/service/store.hpp"

namespace odesys::service {

/// Raised when the bounded run queue is full.
class QueueFullError : public Error {
public:
    explicit QueueFullError(const std::string& message) : Error("queue_full", message) {}
};

class NotFoundError : public Error {
public:
    explicit NotFoundError(const std::string& message) : Error("not_found", message) {}
};

/// Executes runs on background threads, one per run, with at most
/// `capacity` runs queued or running at a time.
class RunManager {
public:
    RunManager(SessionStore& store, const HookRegistry& hooks, std::size_t capacity = 4);
    ~RunManager();

    RunManager(const RunManager&) = delete;
    RunManager& operator=(const RunManager&) = delete;

    /// Validates the request, stores a queued record and starts the run.
    /// Throws NotFoundError, ValidationError or QueueFullError.
    RunRecord submit(const std::string& problem_id, const std::string& method, const GAConfig& config,
                     const std::vector<std::vector<double>>& seeds);

    /// True while a run on the problem is queued or running.
    bool has_pending(const std::string& problem_id) const;

    /// Blocks until no run is queued or running.
    void wait_idle();

private:
    void execute(RunRecord record, Document document);

    SessionStore& store_;
    const HookRegistry& hooks_;
    std::size_t capacity_;

    mutable std::mutex mutex_;
    std::condition_variable idle_;
    std::multiset<std::string> pending_;  ///< problem ids of active runs
    std::vector<std::thread> threads_;
};

}  // namespace odesys::service
