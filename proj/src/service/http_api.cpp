#include "odesys/service/http_api.hpp"

#include "httplib.h"
#include "odesys/io.hpp"

namespace odesys::service {

namespace {

constexpr const char* kJson = "application/json";

class ConflictError : public Error {
public:
    explicit ConflictError(const std::string& message) : Error("conflict", message) {}
};

class BadRequestError : public Error {
public:
    explicit BadRequestError(const std::string& message) : Error("bad_request", message) {}
};

int status_for(const Error& e) {
    if (dynamic_cast<const NotFoundError*>(&e)) return 404;
    if (dynamic_cast<const ConflictError*>(&e)) return 409;
    if (dynamic_cast<const QueueFullError*>(&e)) return 503;
    if (dynamic_cast<const BadRequestError*>(&e)) return 400;
    return 422;
}

void send_json(httplib::Response& res, int status, const Document& body) {
    res.status = status;
    res.set_content(body.dump(2) + "\n", kJson);
}

void send_error(httplib::Response& res, int status, const std::string& code, const std::string& message,
                const std::string* path = nullptr) {
    Document body = {{"code", code}, {"message", message}};
    if (path) body["path"] = *path;
    send_json(res, status, body);
}

Document parse_body(const httplib::Request& req) {
    try {
        auto doc = Document::parse(req.body);
        if (!doc.is_object()) throw BadRequestError("request body must be a JSON object");
        return doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw BadRequestError(std::string("invalid JSON body: ") + e.what());
    }
}

/// Runs a handler and renders library errors as {code, message, path?}.
template <class Handler>
httplib::Server::Handler guarded(Handler handler) {
    return [handler](const httplib::Request& req, httplib::Response& res) {
        try {
            handler(req, res);
        } catch (const SchemaError& e) {
            send_error(res, 422, e.code(), e.what(), &e.path());
        } catch (const Error& e) {
            send_error(res, status_for(e), e.code(), e.what());
        } catch (const nlohmann::json::exception& e) {
            send_error(res, 422, "schema_error", e.what());
        } catch (const std::exception& e) {
            send_error(res, 500, "internal_error", e.what());
        }
    };
}

Document require_problem(SessionStore& store, const std::string& id) {
    auto doc = store.get_problem(id);
    if (!doc) throw NotFoundError("no problem with id '" + id + "'");
    return *doc;
}

Document run_view(SessionStore& store, const RunRecord& record) {
    auto view = record_to_json(record);
    if (record.has_result) {
        if (auto bytes = store.get_run_result(record.id)) view["result"] = Document::parse(*bytes);
    } else {
        view["result"] = nullptr;
    }
    return view;
}

}  // namespace

void mount_routes(httplib::Server& server, SessionStore& store, RunManager& runs, const HookRegistry& hooks) {
    server.Get("/problems", guarded([&](const httplib::Request&, httplib::Response& res) {
        Document list = Document::array();
        for (const auto& [id, name] : store.list_problems()) list.push_back({{"id", id}, {"name", name}});
        send_json(res, 200, list);
    }));

    server.Get(R"(/problems/([^/]+))", guarded([&](const httplib::Request& req, httplib::Response& res) {
        send_json(res, 200, require_problem(store, req.matches[1]));
    }));

    server.Put(R"(/problems/([^/]+)/preferences)", guarded([&](const httplib::Request& req, httplib::Response& res) {
        const std::string id = req.matches[1];
        auto doc = require_problem(store, id);
        const auto body = parse_body(req);
        if (!body.contains("stakeholders")) {
            throw SchemaError("/stakeholders", "required field is missing");
        }
        if (runs.has_pending(id)) {
            throw ConflictError("problem '" + id + "' has a queued or running run");
        }
        doc["stakeholders"] = body.at("stakeholders");
        load_problem(doc, hooks);
        store.put_problem(id, doc);
        send_json(res, 200, doc);
    }));

    server.Post("/runs", guarded([&](const httplib::Request& req, httplib::Response& res) {
        const auto body = parse_body(req);
        if (!body.contains("problem_id") || !body.at("problem_id").is_string()) {
            throw SchemaError("/problem_id", "required string field is missing");
        }
        const std::string method = body.contains("method") ? body.at("method").get<std::string>() : "imap";
        const auto config = config_from_json(body.contains("config") ? body.at("config") : Document(nullptr));
        std::vector<std::vector<double>> seeds;
        if (body.contains("seeds")) seeds = seeds_from_json(body.at("seeds"), "/seeds");
        const auto record = runs.submit(body.at("problem_id").get<std::string>(), method, config, seeds);
        send_json(res, 202, {{"id", record.id}, {"status", to_string(record.status)}});
    }));

    server.Get("/runs", guarded([&](const httplib::Request& req, httplib::Response& res) {
        std::optional<std::string> problem;
        if (req.has_param("problem_id")) problem = req.get_param_value("problem_id");
        Document list = Document::array();
        for (const auto& r : store.list_runs(problem)) list.push_back(record_to_json(r));
        send_json(res, 200, list);
    }));

    server.Get(R"(/runs/([^/]+))", guarded([&](const httplib::Request& req, httplib::Response& res) {
        auto record = store.get_run(req.matches[1]);
        if (!record) throw NotFoundError("no run with id '" + std::string(req.matches[1]) + "'");
        send_json(res, 200, run_view(store, *record));
    }));

    server.Get(R"(/runs/([^/]+)/result)", guarded([&](const httplib::Request& req, httplib::Response& res) {
        const std::string id = req.matches[1];
        auto record = store.get_run(id);
        if (!record) throw NotFoundError("no run with id '" + id + "'");
        if (!record->has_result) throw ConflictError("run '" + id + "' has no result (status " + to_string(record->status) + ")");
        auto bytes = store.get_run_result(id);
        if (!bytes) throw NotFoundError("result of run '" + id + "' is missing");
        res.status = 200;
        res.set_content(*bytes, kJson);
    }));

    server.Post("/evaluate", guarded([&](const httplib::Request& req, httplib::Response& res) {
        const auto body = parse_body(req);
        if (!body.contains("problem_id") || !body.at("problem_id").is_string()) {
            throw SchemaError("/problem_id", "required string field is missing");
        }
        if (!body.contains("designs")) throw SchemaError("/designs", "required field is missing");
        const auto doc = require_problem(store, body.at("problem_id").get<std::string>());
        const auto problem = load_problem(doc, hooks);
        const auto designs = alternatives_from_json(body.at("designs"), "/designs");
        send_json(res, 200, comparison_to_json(evaluate_alternatives(problem, designs)));
    }));
}

void serve(const std::string& host, int port, SessionStore& store, const HookRegistry& hooks) {
    RunManager runs(store, hooks);
    httplib::Server server;
    mount_routes(server, store, runs, hooks);
    if (!server.listen(host, port)) throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port));
}

}  // namespace odesys::service
