#pragma once

// Shared fixtures for the unit tests: small hand-written problems and an
// extended hook registry.

#include <cmath>
#include <span>
#include <string>

#include "odesys/cases.hpp"
#include "odesys/hooks.hpp"
#include "odesys/problem.hpp"

namespace odesys::testing {

/// Built-in hooks plus test.sum_squares.
inline const HookRegistry& test_registry() {
    static const HookRegistry registry = [] {
        HookRegistry r = builtin_registry();
        r.add("test.sum_squares", [](const HookBinding&) -> HookFn {
            return [](std::span<const double> in) {
                double s = 0.0;
                for (double v : in) s += v * v;
                return s;
            };
        });
        return r;
    }();
    return registry;
}

/// Sphere sum(x^2) over three variables on [-5, 5], one stakeholder with a
/// descending linear curve.
inline Document sphere_document() {
    return Document::parse(R"({
      "name": "sphere",
      "variables": [
        {"name": "a", "lower": -5, "upper": 5},
        {"name": "b", "lower": -5, "upper": 5},
        {"name": "c", "lower": -5, "upper": 5}
      ],
      "performance": [
        {"name": "pa", "kind": "variable", "variable": "a"},
        {"name": "pb", "kind": "variable", "variable": "b"},
        {"name": "pc", "kind": "variable", "variable": "c"}
      ],
      "objectives": [
        {"name": "sphere", "hook": "test.sum_squares", "inputs": ["pa", "pb", "pc"], "unit": "-"}
      ],
      "stakeholders": [
        {"name": "user", "weight": 1.0,
         "objectives": {"sphere": {"weight": 1.0, "curve": [[0, 100], [75, 0]]}}}
      ]
    })");
}

/// One variable t on [0, 10] with two opposing objectives: `low` = t
/// preferred small and `high` = t preferred large.
inline Document tradeoff_document(double w1 = 0.5, double w2 = 0.5) {
    auto doc = Document::parse(R"({
      "name": "tradeoff",
      "variables": [{"name": "t", "lower": 0, "upper": 10}],
      "performance": [{"name": "pt", "kind": "variable", "variable": "t"}],
      "objectives": [
        {"name": "low", "hook": "identity", "inputs": ["pt"]},
        {"name": "high", "hook": "identity", "inputs": ["pt"]}
      ],
      "stakeholders": [
        {"name": "s1", "weight": 0.5, "objectives": {"low": {"weight": 1.0, "curve": [[0, 100], [10, 0]]}}},
        {"name": "s2", "weight": 0.5, "objectives": {"high": {"weight": 1.0, "curve": [[0, 0], [10, 100]]}}}
      ]
    })");
    doc["stakeholders"][0]["weight"] = w1;
    doc["stakeholders"][1]["weight"] = w2;
    return doc;
}

inline Problem sphere_problem() { return load_problem(sphere_document(), test_registry()); }

}  // namespace odesys::testing
