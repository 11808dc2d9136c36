#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace odesys {

using Document = nlohmann::ordered_json;

/// Named real constants y_1..y_M of a problem.
class ExogenousParams {
public:
    ExogenousParams() = default;
    explicit ExogenousParams(std::vector<std::pair<std::string, double>> values);

    bool contains(const std::string& name) const;
    /// Throws SchemaError naming the missing constant.
    double at(const std::string& name) const;
    double value_or(const std::string& name, double fallback) const;
    const std::vector<std::pair<std::string, double>>& values() const noexcept { return values_; }

private:
    std::vector<std::pair<std::string, double>> values_;
};

/// Evaluator bound to one document entry. Receives the entry's inputs in
/// declaration order.
using HookFn = std::function<double(std::span<const double> inputs)>;

/// Everything a hook factory may consult when binding: the document's free
/// `model` section, the exogenous constants, and the entry's own `params`.
struct HookBinding {
    const Document& model;
    const ExogenousParams& exogenous;
    const Document& params;
    std::size_t input_count;
};

using HookFactory = std::function<HookFn(const HookBinding&)>;

/// Coded hooks resolved by name when a problem document is loaded. A
/// registry is a plain value: copy one and extend it to add test hooks.
class HookRegistry {
public:
    /// `arity` pins the number of inputs; std::nullopt accepts any count >= 1.
    void add(std::string name, HookFactory factory, std::optional<std::size_t> arity = std::nullopt);

    bool contains(const std::string& name) const;
    std::optional<std::size_t> arity(const std::string& name) const;
    std::vector<std::string> names() const;

    /// Throws UnknownHookError for unregistered names.
    HookFn bind(const std::string& name, const HookBinding& binding) const;

    /// Registry holding only the generic hooks ("identity", "sum", "product",
    /// "negate", "difference").
    static HookRegistry generic();

private:
    struct Entry {
        HookFactory factory;
        std::optional<std::size_t> arity;
    };
    std::map<std::string, Entry> entries_;
};

}  // namespace odesys
