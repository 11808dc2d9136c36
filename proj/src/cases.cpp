#include "odesys/cases.hpp"

#include "odesys/error.hpp"
#include "odesys/floating_wind.hpp"
#include "odesys/rail.hpp"

namespace odesys {

const HookRegistry& builtin_registry() {
    static const HookRegistry registry = [] {
        auto r = HookRegistry::generic();
        rail::register_hooks(r);
        fw::register_hooks(r);
        return r;
    }();
    return registry;
}

std::vector<std::string> bundled_problem_names() { return {"rail_crossing", "floating_wind"}; }

Document bundled_document(const std::string& name) {
    if (name == "rail_crossing") return rail::problem_document();
    if (name == "floating_wind") return fw::problem_document();
    throw ValidationError("no bundled problem named '" + name + "'");
}

Problem load_bundled_problem(const std::string& name) {
    return load_problem(bundled_document(name), builtin_registry());
}

}  // namespace odesys
