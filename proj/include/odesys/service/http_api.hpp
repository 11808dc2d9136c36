#pragma once

#include <string>

#include "odesys/service/runs.hpp"
#include "odesys/service/store.hpp"

namespace httplib {
class Server;
}

namespace odesys::service {

/// JSON endpoints over a store and a run manager:
///   GET  /problems                      [{id, name}]
///   GET  /problems/{id}                 problem document
///   PUT  /problems/{id}/preferences     {stakeholders: [...]} replaces weights and curves
///   POST /runs                          {problem_id, method, config?, seeds?} -> 202
///   GET  /runs?problem_id=              run records
///   GET  /runs/{id}                     run record, result embedded when done
///   GET  /runs/{id}/result              result bytes as written by the CLI
///   POST /evaluate                      {problem_id, designs} -> comparison table
/// Errors carry {code, message, path?}.
void mount_routes(httplib::Server& server, SessionStore& store, RunManager& runs, const HookRegistry& hooks);

/// Blocks serving on host:port until the server is stopped.
void serve(const std::string& host, int port, SessionStore& store, const HookRegistry& hooks);

}  // namespace odesys::service
