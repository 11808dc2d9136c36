#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <stdexcept>

#include "odesys/cases.hpp"
#include "odesys/error.hpp"
#include "odesys/problem.hpp"
#include "support.hpp"

using namespace odesys;
using odesys::testing::test_registry;

namespace {

/// Registry with a polynomial hook (params.coefficients, lowest order first)
/// and hooks that fail in different ways.
HookRegistry poly_registry() {
    HookRegistry r = test_registry();
    r.add("test.poly", [](const HookBinding& b) -> HookFn {
        const auto coeffs = b.params.at("coefficients").get<std::vector<double>>();
        return [coeffs](std::span<const double> in) {
            double v = 0.0, p = 1.0;
            for (double c : coeffs) {
                v += c * p;
                p *= in[0];
            }
            return v;
        };
    }, 1);
    r.add("test.throws", [](const HookBinding&) -> HookFn {
        return [](std::span<const double>) -> double { throw std::runtime_error("boom"); };
    }, 1);
    r.add("test.nan", [](const HookBinding&) -> HookFn {
        return [](std::span<const double>) { return std::nan(""); };
    }, 1);
    r.add("test.hull", [](const HookBinding&) -> HookFn {
        return [](std::span<const double>) -> double { throw OutOfHullError("outside"); };
    }, 1);
    return r;
}

Document single_variable_document() {
    return Document::parse(R"({
      "name": "single",
      "variables": [{"name": "t", "lower": 0, "upper": 10}],
      "performance": [{"name": "pt", "kind": "variable", "variable": "t"}],
      "objectives": [{"name": "o", "hook": "identity", "inputs": ["pt"], "unit": "-"}],
      "stakeholders": [{"name": "s", "weight": 1,
                        "objectives": {"o": {"weight": 1, "curve": [[0, 100], [10, 0]]}}}]
    })");
}

void expect_schema_path(const Document& doc, const std::string& path) {
    try {
        load_problem(doc, test_registry());
        FAIL() << "expected an error at " << path;
    } catch (const SchemaError& e) {
        EXPECT_EQ(e.path(), path) << e.what();
    }
}

}  // namespace

TEST(DesignVector, ChecksBoundsAndIntegrality) {
    const auto rail = load_bundled_problem("rail_crossing");
    EXPECT_NO_THROW(rail.design({0.5, 7}));
    EXPECT_THROW(rail.design({0.9, 7}), BoundsError);
    EXPECT_THROW(rail.design({0.5, 7.5}), BoundsError);
    EXPECT_THROW(rail.design({0.5}), SeedDimensionError);
}

TEST(DesignVector, RepairClipsAndRounds) {
    const auto rail = load_bundled_problem("rail_crossing");
    const auto [values, warnings] = repair_design(rail.variables(), {0.9, 6.6});
    EXPECT_DOUBLE_EQ(values[0], 0.7);
    EXPECT_DOUBLE_EQ(values[1], 7.0);
    EXPECT_EQ(warnings.size(), 2u);
    const auto [same, none] = repair_design(rail.variables(), {0.4, 5});
    EXPECT_TRUE(none.empty());
    EXPECT_DOUBLE_EQ(same[0], 0.4);
}

TEST(TabulatedGrid, NodesMidpointsAndHull) {
    TabulatedGrid g({{0.0, 1.0, 2.0}, {10.0, 20.0}}, {1, 2, 3, 4, 5, 6});
    const std::vector<double> node{1.0, 20.0};
    EXPECT_DOUBLE_EQ(g(node), 4.0);
    const std::vector<double> mid{0.5, 10.0};
    EXPECT_DOUBLE_EQ(g(mid), (1.0 + 3.0) / 2.0);
    const std::vector<double> centre{0.5, 15.0};
    EXPECT_DOUBLE_EQ(g(centre), 2.5);
    const std::vector<double> outside{2.5, 10.0};
    EXPECT_THROW(g(outside), OutOfHullError);
    EXPECT_THROW(TabulatedGrid({{0.0, 0.0}}, {1, 2}), ShapeError);
    EXPECT_THROW(TabulatedGrid({{0.0, 1.0}}, {1, 2, 3}), ShapeError);
}

TEST(LoadProblem, RailStructure) {
    const auto p = load_bundled_problem("rail_crossing");
    EXPECT_EQ(p.variables().size(), 2u);
    EXPECT_EQ(p.objectives().size(), 3u);
    EXPECT_EQ(p.criteria().size(), 3u);
    EXPECT_TRUE(p.variables()[1].is_integer());
    EXPECT_EQ(p.criterion_label(0), "maintenance/maintenance_costs");
}

TEST(LoadProblem, WeightSumBreach) {
    auto doc = bundled_document("rail_crossing");
    doc["stakeholders"][2]["weight"] = 0.1;  // 0.4 + 0.4 + 0.1 = 0.9
    EXPECT_THROW(load_problem(doc, test_registry()), WeightError);
}

TEST(LoadProblem, UnknownHook) {
    auto doc = single_variable_document();
    doc["objectives"][0]["hook"] = "no_such_fn";
    EXPECT_THROW(load_problem(doc, test_registry()), UnknownHookError);
}

TEST(LoadProblem, SchemaErrorsCarryPaths) {
    auto missing = single_variable_document();
    missing["variables"][0].erase("upper");
    expect_schema_path(missing, "/variables/0/upper");

    auto inverted = single_variable_document();
    inverted["variables"][0]["lower"] = 20;
    expect_schema_path(inverted, "/variables/0");

    auto bad_input = single_variable_document();
    bad_input["objectives"][0]["inputs"][0] = "nope";
    expect_schema_path(bad_input, "/objectives/0/inputs/0");

    auto bad_curve = single_variable_document();
    bad_curve["stakeholders"][0]["objectives"]["o"]["curve"] = Document::parse("[[0, 100], [0, 0]]");
    expect_schema_path(bad_curve, "/stakeholders/0/objectives/o/curve");

    auto no_curve = single_variable_document();
    no_curve["stakeholders"][0]["objectives"]["o"].erase("curve");
    expect_schema_path(no_curve, "/stakeholders/0/objectives/o/curve");

    auto unknown_objective = single_variable_document();
    unknown_objective["stakeholders"][0]["objectives"]["zz"] = unknown_objective["stakeholders"][0]["objectives"]["o"];
    expect_schema_path(unknown_objective, "/stakeholders/0/objectives/zz");

    auto integer_bounds = single_variable_document();
    integer_bounds["variables"][0]["kind"] = "integer";
    integer_bounds["variables"][0]["upper"] = 9.5;
    expect_schema_path(integer_bounds, "/variables/0");
}

TEST(LoadProblem, ZeroWeightNeedsNoCurve) {
    auto doc = Document::parse(R"({
      "variables": [{"name": "t", "lower": 0, "upper": 10}],
      "performance": [{"name": "pt", "kind": "variable", "variable": "t"}],
      "objectives": [{"name": "o", "hook": "identity", "inputs": ["pt"]},
                     {"name": "q", "hook": "negate", "inputs": ["pt"]}],
      "stakeholders": [{"name": "s", "weight": 1,
                        "objectives": {"o": {"weight": 1, "curve": [[0, 100], [10, 0]]},
                                       "q": {"weight": 0}}}]
    })");
    const auto p = load_problem(doc, test_registry());
    EXPECT_EQ(p.criteria().size(), 1u);
}

TEST(LoadProblem, FuzzedDocumentsFailCleanly) {
    // Random structural mutations of both bundled documents must either load
    // or raise a library error. Removing the curve of a weighted criterion
    // must always be rejected.
    std::mt19937_64 gen(314);
    for (const auto& name : bundled_problem_names()) {
        const auto base = bundled_document(name);
        for (int trial = 0; trial < 150; ++trial) {
            auto doc = base;
            auto& holders = doc["stakeholders"];
            const auto k = std::uniform_int_distribution<std::size_t>(0, holders.size() - 1)(gen);
            auto& prefs = holders[k]["objectives"];
            auto it = prefs.begin();
            std::advance(it, std::uniform_int_distribution<long>(0, static_cast<long>(prefs.size()) - 1)(gen));
            switch (trial % 5) {
                case 0:
                    it.value().erase("curve");
                    EXPECT_THROW(load_problem(doc, test_registry()), SchemaError);
                    continue;
                case 1: it.value()["curve"] = Document::array(); break;
                case 2: it.value()["weight"] = -0.5; break;
                case 3: holders[k]["weight"] = std::uniform_real_distribution<double>(0, 1)(gen); break;
                case 4: it.value()["curve"][0][0] = 1e12; break;
            }
            try {
                const auto p = load_problem(doc, test_registry());
                for (const auto& c : p.criteria()) EXPECT_GT(c.weight, 0.0);
            } catch (const Error&) {
            } catch (const std::exception& e) {
                ADD_FAILURE() << "non-library exception: " << e.what();
            }
        }
    }
}

TEST(LoadProblem, IgnoresDescriptionAndReadsEvaluation) {
    const auto fw = load_bundled_problem("floating_wind");
    EXPECT_EQ(fw.comparison_objectives(), std::vector<std::string>{"installation_costs"});
    const auto single = load_problem(single_variable_document(), test_registry());
    EXPECT_EQ(single.comparison_objectives(), std::vector<std::string>{"o"});
}

TEST(EvaluateObjectives, Examples) {
    const auto rail = load_bundled_problem("rail_crossing");
    EXPECT_EQ(evaluate_objectives(rail, rail.design({0.70, 4}))[2], 3020.0);

    const auto fw = load_bundled_problem("floating_wind");
    const auto o = evaluate_objectives(fw, fw.design({0, 0, 1, 2.2, 8.0}));
    EXPECT_DOUBLE_EQ(o[fw.objective_index("fleet_utilisation")], 0.50);

    const auto single = load_problem(single_variable_document(), test_registry());
    EXPECT_EQ(evaluate_objectives(single, single.design({0.0}))[0], 0.0);
}

TEST(EvaluateObjectives, DeterministicBytes) {
    const auto fw = load_bundled_problem("floating_wind");
    const auto x = fw.design({1, 1, 2, 2.37, 5.11});
    const auto a = evaluate_objectives(fw, x);
    const auto b = evaluate_objectives(fw, x);
    ASSERT_EQ(a.size(), b.size());
    EXPECT_EQ(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)), 0);
}

TEST(EvaluateObjectives, HookFailuresBecomeEvaluationErrors) {
    const auto registry = poly_registry();
    auto doc = single_variable_document();
    doc["objectives"][0]["hook"] = "test.throws";
    const auto throws = load_problem(doc, registry);
    EXPECT_THROW(evaluate_objectives(throws, throws.design({1.0})), EvaluationError);

    doc["objectives"][0]["hook"] = "test.nan";
    const auto nan = load_problem(doc, registry);
    EXPECT_THROW(evaluate_objectives(nan, nan.design({1.0})), EvaluationError);

    doc["objectives"][0]["hook"] = "test.hull";
    const auto hull = load_problem(doc, registry);
    EXPECT_THROW(evaluate_objectives(hull, hull.design({1.0})), OutOfHullError);
}

TEST(EvaluateConstraints, FleetConstraint) {
    const auto fw = load_bundled_problem("floating_wind");
    const auto none = evaluate_constraints(fw, fw.design({0, 0, 0, 2.2, 8.0}));
    EXPECT_EQ(none[0].name, "min_vessels");
    EXPECT_DOUBLE_EQ(none[0].value, 1.0);
    EXPECT_FALSE(none[0].feasible);
    const auto one = evaluate_constraints(fw, fw.design({1, 0, 0, 2.2, 8.0}));
    EXPECT_DOUBLE_EQ(one[0].value, 0.0);
    EXPECT_TRUE(one[0].feasible);
    const auto three = evaluate_constraints(fw, fw.design({1, 0, 2, 2.2, 8.0}));
    EXPECT_DOUBLE_EQ(three[0].value, -2.0);
}

TEST(EvaluateConstraints, EqualityRewrite) {
    auto doc = single_variable_document();
    doc["performance"].push_back(Document::parse(
        R"({"name": "h", "kind": "hook", "hook": "test.poly", "inputs": ["t"], "params": {"coefficients": [-5, 1]}})"));
    doc["constraints"] = Document::parse(R"([{"name": "eq", "kind": "equality", "hook": "identity", "inputs": ["h"]}])");
    const auto p = load_problem(doc, poly_registry());
    const auto at = evaluate_constraints(p, p.design({5.0}));
    EXPECT_DOUBLE_EQ(at[0].value, -1e-6);
    EXPECT_TRUE(at[0].feasible);
    const auto off = evaluate_constraints(p, p.design({5.1}));
    EXPECT_FALSE(off[0].feasible);

    const auto e = evaluate(p, p.design({6.0}));
    EXPECT_FALSE(e.feasible);
    EXPECT_NEAR(e.violation, 1.0 - 1e-6 - 1e-9, 1e-12);
    EXPECT_TRUE(e.objectives.empty());
    EXPECT_TRUE(e.preferences.empty());
}

TEST(EvaluateConstraints, EqualityRewriteSoundness) {
    // Feasible exactly when |h(x)| <= epsilon, for random polynomials h.
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> coef(-2.0, 2.0), xs(0.0, 10.0), eps(1e-4, 0.5);
    const auto registry = poly_registry();
    for (int trial = 0; trial < 100; ++trial) {
        auto doc = single_variable_document();
        std::vector<double> c(1 + trial % 4);
        for (auto& v : c) v = coef(gen);
        const double epsilon = eps(gen);
        doc["performance"].push_back({{"name", "h"}, {"kind", "hook"}, {"hook", "test.poly"},
                                      {"inputs", {"t"}}, {"params", {{"coefficients", c}}}});
        doc["constraints"] = Document::array();
        doc["constraints"].push_back({{"name", "eq"}, {"kind", "equality"}, {"hook", "identity"},
                                      {"inputs", {"h"}}, {"epsilon", epsilon}, {"tolerance", 0.0}});
        const auto p = load_problem(doc, registry);
        for (int k = 0; k < 50; ++k) {
            const double x = xs(gen);
            double h = 0.0, pw = 1.0;
            for (double v : c) {
                h += v * pw;
                pw *= x;
            }
            const auto cv = evaluate_constraints(p, p.design({x}));
            ASSERT_EQ(cv[0].feasible, std::abs(h) <= epsilon) << "x=" << x << " h=" << h;
        }
    }
}

TEST(PreferenceVector, Examples) {
    auto doc = single_variable_document();
    const auto p = load_problem(doc, test_registry());
    EXPECT_DOUBLE_EQ(preference_vector(p, p.design({2.5}))[0], 75.0);

    const auto rail = load_bundled_problem("rail_crossing");
    EXPECT_DOUBLE_EQ(preference_vector(rail, rail.design({0.70, 4}))[2], 100.0);

    doc["stakeholders"][0]["objectives"]["o"]["curve"] = Document::parse("[[0, 50], [10, 50]]");
    const auto flat = load_problem(doc, test_registry());
    for (double v : preference_vector(flat, flat.design({7.0}))) EXPECT_DOUBLE_EQ(v, 50.0);
}
