#include "odesys/service/runs.hpp"

#include <chrono>
#include <ctime>

#include "odesys/io.hpp"

namespace odesys::service {

namespace {

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

RunManager::RunManager(SessionStore& store, const HookRegistry& hooks, std::size_t capacity)
    : store_(store), hooks_(hooks), capacity_(capacity) {}

RunManager::~RunManager() {
    for (auto& t : threads_) {
        if (t.joinable()) t.join();
    }
}

RunRecord RunManager::submit(const std::string& problem_id, const std::string& method, const GAConfig& config,
                             const std::vector<std::vector<double>>& seeds) {
    auto document = store_.get_problem(problem_id);
    if (!document) throw NotFoundError("no problem with id '" + problem_id + "'");

    // Reject bad requests before they take a queue slot.
    const auto label = MethodLabel::parse(method);
    config.validate();
    const auto problem = load_problem(*document, hooks_);
    if (label.kind == MethodLabel::Kind::sodo) problem.objective_index(label.objective);
    for (const auto& s : seeds) {
        if (s.size() != problem.variables().size()) {
            throw SeedDimensionError("seed has " + std::to_string(s.size()) + " values for " +
                                     std::to_string(problem.variables().size()) + " variables");
        }
    }

    RunRecord record;
    record.problem_id = problem_id;
    record.method = method;
    record.config = config;
    record.seeds = seeds;
    record.snapshot_hash = snapshot_hash(*document);
    record.created = utc_now();

    std::lock_guard lock(mutex_);
    if (pending_.size() >= capacity_) {
        throw QueueFullError("run queue is full (" + std::to_string(capacity_) + " runs pending)");
    }
    record.id = store_.next_run_id();
    store_.put_run(record);
    pending_.insert(problem_id);
    threads_.emplace_back([this, record, doc = std::move(*document)]() mutable { execute(std::move(record), std::move(doc)); });
    return record;
}

bool RunManager::has_pending(const std::string& problem_id) const {
    std::lock_guard lock(mutex_);
    return pending_.contains(problem_id);
}

void RunManager::wait_idle() {
    std::unique_lock lock(mutex_);
    idle_.wait(lock, [&] { return pending_.empty(); });
}

void RunManager::execute(RunRecord record, Document document) {
    record.status = RunStatus::running;
    store_.put_run(record);
    try {
        const auto problem = load_problem(document, hooks_);
        const auto result = run_method(problem, MethodLabel::parse(record.method), record.config, record.seeds);
        store_.put_run_result(record.id, render_run_result(problem, result));
        record.has_result = true;
        record.status = RunStatus::done;
    } catch (const Error& e) {
        record.status = RunStatus::failed;
        record.error_code = e.code();
        record.error_message = e.what();
    } catch (const std::exception& e) {
        record.status = RunStatus::failed;
        record.error_code = "internal_error";
        record.error_message = e.what();
    }
    record.finished = utc_now();
    store_.put_run(record);

    std::lock_guard lock(mutex_);
    pending_.erase(pending_.find(record.problem_id));
    if (pending_.empty()) idle_.notify_all();
}

}  // namespace odesys::service
