#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "odesys/baselines.hpp"
#include "odesys/error.hpp"
#include "support.hpp"

using namespace odesys;
using namespace odesys::testing;

namespace {

/// Independent min-max value: max over criteria of w'(100 - P).
double minmax_oracle(const Problem& p, const DesignVector& x) {
    const auto prefs = preference_vector(p, x);
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < prefs.size(); ++c) {
        worst = std::max(worst, p.criteria()[c].weight * (100.0 - prefs[c]));
    }
    return worst;
}

GridSpec rail_grid(const Problem& p) { return GridSpec::stepped(p, {0.005, std::nullopt}); }

}  // namespace

TEST(MethodLabel, ParseAndFormat) {
    EXPECT_EQ(MethodLabel::parse("imap").kind, MethodLabel::Kind::imap);
    EXPECT_EQ(MethodLabel::parse("minmax").kind, MethodLabel::Kind::minmax);
    EXPECT_EQ(MethodLabel::parse("brute").kind, MethodLabel::Kind::brute);
    const auto s = MethodLabel::parse("sodo:investment_costs");
    EXPECT_EQ(s.kind, MethodLabel::Kind::sodo);
    EXPECT_EQ(s.objective, "investment_costs");
    EXPECT_FALSE(s.direction.has_value());
    EXPECT_EQ(MethodLabel::parse("sodo:o:max").direction, Direction::maximize);
    EXPECT_EQ(MethodLabel::parse("sodo:o:min").str(), "sodo:o:min");
    EXPECT_THROW(MethodLabel::parse("pareto"), ValidationError);
    EXPECT_THROW(MethodLabel::parse("sodo:"), ValidationError);
    EXPECT_THROW(MethodLabel::parse("sodo:o:sideways"), ValidationError);
}

TEST(Minmax, SingleCurveMaximizesThatPreference) {
    const auto p = sphere_problem();
    GAConfig c;
    c.rng_seed = 21;
    const auto r = run_minmax(p, c);
    for (std::size_t n = 0; n < 3; ++n) EXPECT_LE(std::abs(r.best[n]), 0.05);
    EXPECT_NEAR(r.preferences[0], 100.0, 0.01);
}

TEST(Minmax, OpposingCurvesEqualize) {
    const auto p = load_problem(tradeoff_document(), test_registry());
    GAConfig c;
    c.rng_seed = 22;
    const auto r = run_minmax(p, c);
    // Bisection oracle on P1(t) - P2(t), which is decreasing in t.
    double lo = 0.0, hi = 10.0;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        const auto pr = preference_vector(p, p.design({mid}));
        (pr[0] > pr[1] ? lo : hi) = mid;
    }
    EXPECT_LE(std::abs(r.preferences[0] - r.preferences[1]), 1.0);
    EXPECT_NEAR(r.best[0], lo, 0.1);
    EXPECT_NEAR(r.best_value, minmax_value(p, r.preferences), 1e-12);
}

TEST(Minmax, RailWithinOnePercentOfGridMinimum) {
    const auto p = load_bundled_problem("rail_crossing");
    double grid_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 80; ++i) {
        for (int k = 4; k <= 15; ++k) {
            grid_min = std::min(grid_min, minmax_oracle(p, p.design({0.3 + 0.005 * i, double(k)})));
        }
    }
    GAConfig c;
    c.rng_seed = 42;
    const auto r = run_minmax(p, c);
    const double value = minmax_oracle(p, r.best);
    EXPECT_NEAR(value, r.best_value, 1e-9);
    EXPECT_LE(std::abs(value - grid_min) / grid_min, 0.01) << "value " << value << " grid " << grid_min;
}

TEST(Sodo, RailInvestmentCorner) {
    const auto p = load_bundled_problem("rail_crossing");
    GAConfig c;
    c.rng_seed = 42;
    const auto r = run_sodo(p, "investment_costs", std::nullopt, c);
    EXPECT_EQ(r.best[0], 0.70);
    EXPECT_EQ(r.best[1], 4.0);
    EXPECT_EQ(r.best_value, 3020.0);
    EXPECT_EQ(r.method, "sodo:investment_costs:min");
}

TEST(Sodo, FloatingWindCostsUseOneBarge) {
    const auto p = load_bundled_problem("floating_wind");
    GAConfig c;
    c.rng_seed = 42;
    const auto r = run_sodo(p, "installation_costs", std::nullopt, c);
    EXPECT_EQ(r.best[0], 0.0);
    EXPECT_EQ(r.best[1], 0.0);
    EXPECT_EQ(r.best[2], 1.0);
}

TEST(Sodo, SphereAndDirections) {
    const auto p = sphere_problem();
    GAConfig c;
    c.rng_seed = 5;
    const auto r = run_sodo(p, "sphere", Direction::minimize, c);
    for (std::size_t n = 0; n < 3; ++n) EXPECT_LE(std::abs(r.best[n]), 0.05);
    EXPECT_EQ(infer_direction(p, "sphere"), Direction::minimize);
    const auto rail = load_bundled_problem("rail_crossing");
    EXPECT_EQ(infer_direction(rail, "travel_comfort"), Direction::maximize);
    const auto up = run_sodo(p, "sphere", Direction::maximize, c);
    EXPECT_NEAR(up.best_value, 75.0, 0.5);
    EXPECT_THROW(run_sodo(p, "nothing", std::nullopt, c), UnknownObjectiveError);
}

TEST(GridSpec, RailOracleSize) {
    const auto p = load_bundled_problem("rail_crossing");
    const auto g = rail_grid(p);
    EXPECT_EQ(g.axes[0].size(), 81u);
    EXPECT_EQ(g.axes[1].size(), 12u);
    EXPECT_EQ(g.size(), 972u);
    EXPECT_DOUBLE_EQ(g.axes[0].back(), 0.7);
}

TEST(BruteForce, RailOracleHasOneArgmax) {
    const auto p = load_bundled_problem("rail_crossing");
    const auto o = brute_force_imap(p, rail_grid(p));
    EXPECT_EQ(o.grid_points, 972u);
    EXPECT_EQ(o.members.size(), 972u);
    EXPECT_EQ(std::count(o.scores.begin(), o.scores.end(), 100.0), 1);
    EXPECT_DOUBLE_EQ(o.scores[o.argmax], 100.0);
}

TEST(BruteForce, Errors) {
    const auto p = sphere_problem();
    EXPECT_THROW(brute_force_imap(p, GridSpec::stepped(p, {}, 101)), GridTooLargeError);

    auto doc = tradeoff_document();
    doc["variables"][0]["kind"] = "integer";
    doc["variables"][0]["upper"] = 1;
    doc["constraints"] = Document::parse(R"([{"name": "pos", "kind": "inequality", "hook": "identity", "inputs": ["pt"]}])");
    const auto one = load_problem(doc, test_registry());
    EXPECT_THROW(brute_force_imap(one, GridSpec::stepped(one, {})), DegenerateError);

    doc["variables"][0]["lower"] = 1;
    doc["variables"][0]["upper"] = 3;
    const auto none = load_problem(doc, test_registry());
    EXPECT_THROW(brute_force_imap(none, GridSpec::stepped(none, {})), NoFeasiblePointError);
}

TEST(Percentile, NearestRank) {
    EXPECT_DOUBLE_EQ(percentile({1, 2, 3, 4, 5}, 100), 5);
    EXPECT_DOUBLE_EQ(percentile({5, 1, 4, 2, 3}, 50), 3);
    EXPECT_DOUBLE_EQ(percentile({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, 99), 10);
    EXPECT_DOUBLE_EQ(percentile({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, 20), 2);
}

TEST(EvaluateAlternatives, RailPrintedDesigns) {
    const auto p = load_bundled_problem("rail_crossing");
    const auto t = evaluate_alternatives(p, {{"SODO 1", {0.39, 5}},
                                             {"SODO 2", {0.35, 5}},
                                             {"SODO 3", {0.70, 4}},
                                             {"min-max", {0.35, 5}},
                                             {"IMAP", {0.38, 4}}});
    EXPECT_DOUBLE_EQ(t.rows[2].score, 0.0);
    EXPECT_DOUBLE_EQ(t.rows[4].score, 100.0);
    EXPECT_EQ(t.ranking.front(), 4u);
    EXPECT_EQ(t.rows[2].objectives[2], 3020.0);
    EXPECT_DOUBLE_EQ(t.rows[4].objectives[2], 3468.0);
}

TEST(EvaluateAlternatives, FloatingWindPrintedDesigns) {
    const auto p = load_bundled_problem("floating_wind");
    const auto t = evaluate_alternatives(p, {{"SODO costs", {0, 0, 1, 2.2, 8.0}},
                                             {"min-max", {1, 0, 2, 2.2, 8.0}},
                                             {"IMAP", {1, 0, 1, 2.2, 8.0}}});
    EXPECT_DOUBLE_EQ(t.rows[2].score, 100.0);
    EXPECT_EQ(t.ranking.front(), 2u);
}

TEST(EvaluateAlternatives, IdenticalAndTooFew) {
    const auto p = load_bundled_problem("rail_crossing");
    const auto t = evaluate_alternatives(p, {{"a", {0.5, 6}}, {"b", {0.5, 6}}, {"c", {0.5, 6}}});
    for (const auto& r : t.rows) EXPECT_DOUBLE_EQ(r.score, 100.0);
    EXPECT_THROW(evaluate_alternatives(p, {{"a", {0.5, 6}}, {"b", {0.4, 6}}}), TooFewAlternativesError);
    EXPECT_THROW(evaluate_alternatives(p, {{"a", {0.5, 6}}, {"b", {0.4, 6}}, {"c", {0.9, 6}}}), BoundsError);
}

TEST(ComparisonTable, CsvLayout) {
    const auto p = load_bundled_problem("rail_crossing");
    const auto t = evaluate_alternatives(p, {{"first, with comma", {0.3, 4}}, {"b", {0.5, 6}}, {"c", {0.7, 15}}});
    const auto csv = t.to_csv();
    const auto header_end = csv.find("\r\n");
    EXPECT_EQ(csv.substr(0, header_end),
              "method,x1,x2,maintenance_costs,travel_comfort,investment_costs,"
              "P:maintenance/maintenance_costs,P:passengers/travel_comfort,P:owner/investment_costs,score");
    EXPECT_NE(csv.find("\r\n\"first, with comma\",0.3,4,"), std::string::npos);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST(CompareMethods, OrderingOnBothCases) {
    for (const auto& name : bundled_problem_names()) {
        const auto p = load_bundled_problem(name);
        GAConfig c;
        c.rng_seed = 7;
        const auto cmp = compare_methods(p, c);
        const auto& rows = cmp.table.rows;
        ASSERT_EQ(rows.size(), p.comparison_objectives().size() + 2);
        const auto& imap = rows.back();
        const auto& minmax = rows[rows.size() - 2];
        EXPECT_EQ(imap.label, "imap");
        EXPECT_EQ(minmax.label, "minmax");
        EXPECT_DOUBLE_EQ(imap.score, 100.0) << name;
        EXPECT_GE(imap.score, minmax.score) << name;

        // Each single-objective row is best (within 0.5%) on its own axis.
        for (std::size_t s = 0; s < p.comparison_objectives().size(); ++s) {
            const auto o = p.objective_index(p.comparison_objectives()[s]);
            const bool low = infer_direction(p, p.comparison_objectives()[s]) == Direction::minimize;
            for (const auto& r : rows) {
                const double own = rows[s].objectives[o];
                const double slack = 0.005 * std::abs(own);
                if (low) EXPECT_LE(own, r.objectives[o] + slack) << name << " " << r.label;
                else EXPECT_GE(own, r.objectives[o] - slack) << name << " " << r.label;
            }
        }
    }
}
