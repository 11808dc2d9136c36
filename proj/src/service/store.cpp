#include "odesys/service/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "odesys/cases.hpp"
#include "odesys/error.hpp"
#include "odesys/io.hpp"

namespace fs = std::filesystem;

namespace odesys::service {

std::string to_string(RunStatus s) {
    switch (s) {
        case RunStatus::queued: return "queued";
        case RunStatus::running: return "running";
        case RunStatus::done: return "done";
        case RunStatus::failed: return "failed";
    }
    return "failed";
}

RunStatus run_status_from(const std::string& t) {
    if (t == "queued") return RunStatus::queued;
    if (t == "running") return RunStatus::running;
    if (t == "done") return RunStatus::done;
    if (t == "failed") return RunStatus::failed;
    throw ValidationError("unknown run status '" + t + "'");
}

Document record_to_json(const RunRecord& r) {
    Document d = Document::object();
    d["id"] = r.id;
    d["problem_id"] = r.problem_id;
    d["method"] = r.method;
    d["config"] = config_to_json(r.config);
    d["seeds"] = r.seeds;
    d["status"] = to_string(r.status);
    d["snapshot_hash"] = r.snapshot_hash;
    d["created"] = r.created;
    d["finished"] = r.finished.empty() ? Document(nullptr) : Document(r.finished);
    if (!r.error_code.empty()) d["error"] = {{"code", r.error_code}, {"message", r.error_message}};
    d["has_result"] = r.has_result;
    return d;
}

RunRecord record_from_json(const Document& d) {
    RunRecord r;
    r.id = d.at("id").get<std::string>();
    r.problem_id = d.at("problem_id").get<std::string>();
    r.method = d.at("method").get<std::string>();
    r.config = config_from_json(d.at("config"));
    r.seeds = d.at("seeds").get<std::vector<std::vector<double>>>();
    r.status = run_status_from(d.at("status").get<std::string>());
    r.snapshot_hash = d.at("snapshot_hash").get<std::string>();
    r.created = d.at("created").get<std::string>();
    if (!d.at("finished").is_null()) r.finished = d.at("finished").get<std::string>();
    if (d.contains("error")) {
        r.error_code = d.at("error").at("code").get<std::string>();
        r.error_message = d.at("error").at("message").get<std::string>();
    }
    r.has_result = d.value("has_result", false);
    return r;
}

std::string snapshot_hash(const Document& document) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : document.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void atomic_write(const fs::path& path, const std::string& text) {
    static std::atomic<unsigned long> counter{0};
    const fs::path tmp = path.parent_path() /
                         ("." + path.filename().string() + ".tmp." + std::to_string(::getpid()) + "." +
                          std::to_string(counter++));
    const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (fd < 0) throw std::runtime_error("cannot create " + tmp.string() + ": " + std::strerror(errno));
    std::size_t off = 0;
    while (off < text.size()) {
        const auto n = ::write(fd, text.data() + off, text.size() - off);
        if (n < 0) {
            if (errno == EINTR) continue;
            ::close(fd);
            ::unlink(tmp.c_str());
            throw std::runtime_error("write to " + tmp.string() + " failed: " + std::strerror(errno));
        }
        off += static_cast<std::size_t>(n);
    }
    ::fsync(fd);
    ::close(fd);
    if (::rename(tmp.c_str(), path.c_str()) != 0) {
        ::unlink(tmp.c_str());
        throw std::runtime_error("rename to " + path.string() + " failed: " + std::strerror(errno));
    }
}

namespace {

std::optional<std::string> slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

bool SessionStore::valid_id(const std::string& id) {
    if (id.empty() || id.size() > 128 || id.front() == '.') return false;
    return std::all_of(id.begin(), id.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    });
}

SessionStore::SessionStore(fs::path root) : root_(std::move(root)) {
    fs::create_directories(problems_dir());
    fs::create_directories(runs_dir());
    for (const auto& name : bundled_problem_names()) {
        const auto p = problems_dir() / (name + ".json");
        if (!fs::exists(p)) atomic_write(p, bundled_document(name).dump(2) + "\n");
    }
    for (const auto& entry : fs::directory_iterator(runs_dir())) {
        const auto name = entry.path().filename().string();
        if (name.rfind("run-", 0) != 0) continue;
        run_counter_ = std::max(run_counter_, std::strtoull(name.c_str() + 4, nullptr, 10));
    }
}

fs::path SessionStore::default_root() {
    if (const char* env = std::getenv("ODESYS_STORE_DIR"); env && *env) return env;
    return fs::current_path() / "odesys_store";
}

std::vector<std::pair<std::string, std::string>> SessionStore::list_problems() const {
    std::lock_guard lock(mutex_);
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& entry : fs::directory_iterator(problems_dir())) {
        const auto& p = entry.path();
        if (p.extension() != ".json" || p.filename().string().front() == '.') continue;
        std::string name;
        if (auto text = slurp(p)) {
            try {
                name = Document::parse(*text).value("name", "");
            } catch (const std::exception&) {
            }
        }
        out.emplace_back(p.stem().string(), name);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Document> SessionStore::get_problem(const std::string& id) const {
    if (!valid_id(id)) return std::nullopt;
    std::lock_guard lock(mutex_);
    auto text = slurp(problems_dir() / (id + ".json"));
    if (!text) return std::nullopt;
    return Document::parse(*text);
}

void SessionStore::put_problem(const std::string& id, const Document& document) {
    if (!valid_id(id)) throw ValidationError("invalid problem id '" + id + "'");
    std::lock_guard lock(mutex_);
    atomic_write(problems_dir() / (id + ".json"), document.dump(2) + "\n");
}

std::string SessionStore::next_run_id() {
    std::lock_guard lock(mutex_);
    char buf[32];
    std::snprintf(buf, sizeof buf, "run-%06llu", ++run_counter_);
    return buf;
}

void SessionStore::put_run(const RunRecord& record) {
    std::lock_guard lock(mutex_);
    atomic_write(runs_dir() / (record.id + ".json"), record_to_json(record).dump(2) + "\n");
}

void SessionStore::put_run_result(const std::string& id, const std::string& bytes) {
    std::lock_guard lock(mutex_);
    atomic_write(runs_dir() / (id + ".result.json"), bytes);
}

std::optional<RunRecord> SessionStore::get_run(const std::string& id) const {
    if (!valid_id(id)) return std::nullopt;
    std::lock_guard lock(mutex_);
    auto text = slurp(runs_dir() / (id + ".json"));
    if (!text) return std::nullopt;
    return record_from_json(Document::parse(*text));
}

std::optional<std::string> SessionStore::get_run_result(const std::string& id) const {
    if (!valid_id(id)) return std::nullopt;
    std::lock_guard lock(mutex_);
    return slurp(runs_dir() / (id + ".result.json"));
}

std::vector<RunRecord> SessionStore::list_runs(const std::optional<std::string>& problem_id) const {
    std::lock_guard lock(mutex_);
    std::vector<RunRecord> out;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(runs_dir())) {
        const auto name = entry.path().filename().string();
        if (name.rfind("run-", 0) == 0 && name.find(".result.") == std::string::npos &&
            entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        auto text = slurp(f);
        if (!text) continue;
        auto rec = record_from_json(Document::parse(*text));
        if (!problem_id || rec.problem_id == *problem_id) out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace odesys::service
