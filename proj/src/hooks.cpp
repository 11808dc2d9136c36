#include "odesys/hooks.hpp"

#include <algorithm>
#include <numeric>

#include "odesys/error.hpp"

namespace odesys {

ExogenousParams::ExogenousParams(std::vector<std::pair<std::string, double>> values)
    : values_(std::move(values)) {}

bool ExogenousParams::contains(const std::string& name) const {
    return std::any_of(values_.begin(), values_.end(), [&](const auto& p) { return p.first == name; });
}

double ExogenousParams::at(const std::string& name) const {
    for (const auto& [key, value] : values_) {
        if (key == name) return value;
    }
    throw SchemaError("/exogenous/" + name, "required exogenous constant is missing");
}

double ExogenousParams::value_or(const std::string& name, double fallback) const {
    for (const auto& [key, value] : values_) {
        if (key == name) return value;
    }
    return fallback;
}

void HookRegistry::add(std::string name, HookFactory factory, std::optional<std::size_t> arity) {
    entries_.insert_or_assign(std::move(name), Entry{std::move(factory), arity});
}

bool HookRegistry::contains(const std::string& name) const { return entries_.contains(name); }

std::optional<std::size_t> HookRegistry::arity(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) throw UnknownHookError("no hook registered as '" + name + "'");
    return it->second.arity;
}

std::vector<std::string> HookRegistry::names() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& [name, entry] : entries_) out.push_back(name);
    return out;
}

HookFn HookRegistry::bind(const std::string& name, const HookBinding& binding) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) throw UnknownHookError("no hook registered as '" + name + "'");
    return it->second.factory(binding);
}

HookRegistry HookRegistry::generic() {
    HookRegistry r;
    r.add("identity", [](const HookBinding&) -> HookFn {
        return [](std::span<const double> in) { return in[0]; };
    }, 1);
    r.add("negate", [](const HookBinding&) -> HookFn {
        return [](std::span<const double> in) { return -in[0]; };
    }, 1);
    r.add("difference", [](const HookBinding&) -> HookFn {
        return [](std::span<const double> in) { return in[0] - in[1]; };
    }, 2);
    r.add("sum", [](const HookBinding&) -> HookFn {
        return [](std::span<const double> in) { return std::accumulate(in.begin(), in.end(), 0.0); };
    });
    r.add("product", [](const HookBinding&) -> HookFn {
        return [](std::span<const double> in) {
            return std::accumulate(in.begin(), in.end(), 1.0, std::multiplies<>());
        };
    });
    return r;
}

}  // namespace odesys
