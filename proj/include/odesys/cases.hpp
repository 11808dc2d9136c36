#pragma once

#include <string>
#include <vector>

#include "odesys/hooks.hpp"
#include "odesys/problem.hpp"

namespace odesys {

/// Generic hooks plus every hook of the bundled case studies.
const HookRegistry& builtin_registry();

/// Names of the bundled problems: "rail_crossing", "floating_wind".
std::vector<std::string> bundled_problem_names();

/// Bundled document by name; ValidationError for unknown names.
Document bundled_document(const std::string& name);

Problem load_bundled_problem(const std::string& name);

}  // namespace odesys
