#include "odesys/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "odesys/error.hpp"
#include "odesys/io.hpp"

namespace odesys {

MethodLabel MethodLabel::parse(const std::string& text) {
    MethodLabel m;
    if (text == "imap") return m;
    if (text == "minmax") {
        m.kind = Kind::minmax;
        return m;
    }
    if (text == "brute") {
        m.kind = Kind::brute;
        return m;
    }
    if (text.rfind("sodo:", 0) == 0) {
        m.kind = Kind::sodo;
        std::string rest = text.substr(5);
        const auto colon = rest.rfind(':');
        if (colon != std::string::npos) {
            const auto dir = rest.substr(colon + 1);
            if (dir == "min") m.direction = Direction::minimize;
            else if (dir == "max") m.direction = Direction::maximize;
            else throw ValidationError("unknown direction '" + dir + "' in method '" + text + "'");
            rest.resize(colon);
        }
        if (rest.empty()) throw ValidationError("method 'sodo' needs an objective name");
        m.objective = rest;
        return m;
    }
    throw ValidationError("unknown method '" + text + "'; expected imap, minmax, brute or sodo:<objective>");
}

std::string MethodLabel::str() const {
    switch (kind) {
        case Kind::imap: return "imap";
        case Kind::minmax: return "minmax";
        case Kind::brute: return "brute";
        case Kind::sodo: {
            std::string s = "sodo:" + objective;
            if (direction) s += *direction == Direction::minimize ? ":min" : ":max";
            return s;
        }
    }
    return "imap";
}

// ---------------------------------------------------------------------------
// Min-max and single-objective runs

double minmax_value(const Problem& problem, std::span<const double> preferences) {
    const auto& w = problem.criterion_weights();
    if (preferences.size() != w.size()) {
        throw ShapeError("expected " + std::to_string(w.size()) + " preference scores");
    }
    double u = 0.0;
    for (std::size_t c = 0; c < w.size(); ++c) u = std::max(u, w[c] * (kScoreCeiling - preferences[c]));
    return u;
}

RunResult run_minmax(const Problem& problem, const GAConfig& config, const std::vector<std::vector<double>>& seeds,
                     const GenerationObserver& observer) {
    auto fitness = [&](const Individual& ind) { return minmax_value(problem, ind.preferences); };
    auto result = run_scalar_ga(problem, config, fitness, seeds, observer);
    result.method = "minmax";
    return result;
}

Direction infer_direction(const Problem& problem, const std::string& objective) {
    const auto index = problem.objective_index(objective);
    for (const auto& c : problem.criteria()) {
        if (c.objective == index) {
            return c.curve.rewards_low_values() ? Direction::minimize : Direction::maximize;
        }
    }
    return Direction::minimize;
}

RunResult run_sodo(const Problem& problem, const std::string& objective, std::optional<Direction> direction,
                   const GAConfig& config, const std::vector<std::vector<double>>& seeds,
                   const GenerationObserver& observer) {
    const auto index = problem.objective_index(objective);
    const Direction dir = direction.value_or(infer_direction(problem, objective));
    const double sign = dir == Direction::minimize ? 1.0 : -1.0;
    auto fitness = [=](const Individual& ind) { return sign * ind.objectives[index]; };
    auto result = run_scalar_ga(problem, config, fitness, seeds, observer);
    result.method = MethodLabel{MethodLabel::Kind::sodo, objective, dir}.str();
    result.best_value *= sign;
    for (auto& h : result.history) {
        if (h) *h *= sign;
    }
    for (auto& d : result.diagnostics) {
        if (d.best_u) *d.best_u *= sign;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Grid oracle

std::size_t GridSpec::size() const {
    if (axes.empty()) return 0;
    std::size_t n = 1;
    for (const auto& a : axes) {
        if (a.empty()) return 0;
        if (n > kMaxGridPoints * 1000 / a.size()) return kMaxGridPoints * 1000;
        n *= a.size();
    }
    return n;
}

GridSpec GridSpec::stepped(const Problem& problem, const std::vector<std::optional<double>>& steps,
                           std::size_t default_points) {
    const auto& vars = problem.variables();
    if (!steps.empty() && steps.size() != vars.size()) {
        throw ShapeError("grid has " + std::to_string(steps.size()) + " steps for " + std::to_string(vars.size()) +
                         " variables");
    }
    GridSpec g;
    for (std::size_t n = 0; n < vars.size(); ++n) {
        const auto& v = vars[n];
        const double span = v.upper - v.lower;
        double h = 0.0;
        if (!steps.empty() && steps[n]) h = *steps[n];
        else if (v.is_integer()) h = 1.0;
        else if (default_points > 1) h = span / static_cast<double>(default_points - 1);
        std::vector<double> axis{v.lower};
        if (span > 0.0) {
            if (!(h > 0.0)) throw ValidationError("grid step for '" + v.name + "' must be positive");
            const auto count = static_cast<std::size_t>(std::floor(span / h + 1e-9));
            for (std::size_t k = 1; k <= count; ++k) axis.push_back(v.lower + static_cast<double>(k) * h);
            if (v.upper - axis.back() > 1e-9 * std::max(1.0, std::abs(v.upper))) axis.push_back(v.upper);
            else axis.back() = v.upper;
        }
        g.axes.push_back(std::move(axis));
    }
    return g;
}

OraclePopulation brute_force_imap(const Problem& problem, const GridSpec& grid) {
    const auto& vars = problem.variables();
    if (grid.axes.size() != vars.size()) {
        throw ShapeError("grid has " + std::to_string(grid.axes.size()) + " axes for " +
                         std::to_string(vars.size()) + " variables");
    }
    const std::size_t total = grid.size();
    if (total > kMaxGridPoints) {
        throw GridTooLargeError("grid holds more than " + std::to_string(kMaxGridPoints) + " points");
    }
    OraclePopulation oracle;
    oracle.grid_points = total;
    std::vector<std::size_t> idx(vars.size(), 0);
    std::vector<double> values(vars.size());
    for (std::size_t p = 0; p < total; ++p) {
        for (std::size_t n = 0; n < vars.size(); ++n) values[n] = grid.axes[n][idx[n]];
        auto ind = evaluate_individual(problem, DesignVector(vars, values));
        if (ind.feasible) oracle.members.push_back(std::move(ind));
        // Last variable varies fastest.
        for (std::size_t n = vars.size(); n-- > 0;) {
            if (++idx[n] < grid.axes[n].size()) break;
            idx[n] = 0;
        }
    }
    if (oracle.members.empty()) throw NoFeasiblePointError("no grid point is feasible");

    std::vector<std::vector<double>> rows;
    rows.reserve(oracle.members.size());
    for (const auto& m : oracle.members) rows.push_back(m.preferences);
    const auto agg = aggregate(ScoreMatrix::from_rows(rows), problem.criterion_weights());
    oracle.scores = agg.aggregated;
    oracle.argmax = agg.ranking.front();
    return oracle;
}

double percentile(std::vector<double> scores, double q) {
    if (scores.empty()) throw DegenerateError("percentile of an empty list");
    if (!(q > 0.0 && q <= 100.0)) throw ValidationError("percentile must lie in (0, 100]");
    std::sort(scores.begin(), scores.end());
    const auto rank = static_cast<std::size_t>(std::ceil(q / 100.0 * static_cast<double>(scores.size())));
    return scores[std::max<std::size_t>(rank, 1) - 1];
}

OracleStanding oracle_standing(const Problem& problem, const OraclePopulation& oracle, const Individual& candidate,
                               double q) {
    if (!candidate.feasible) throw ValidationError("an infeasible candidate has no preference scores");
    std::vector<std::vector<double>> rows;
    rows.reserve(oracle.members.size() + 1);
    for (const auto& m : oracle.members) rows.push_back(m.preferences);
    rows.push_back(candidate.preferences);
    auto scores = aggregate(ScoreMatrix::from_rows(rows), problem.criterion_weights()).aggregated;
    const double own = scores.back();
    scores.pop_back();
    return {own, percentile(std::move(scores), q)};
}

RunResult run_brute(const Problem& problem, const GridSpec& grid) {
    const auto oracle = brute_force_imap(problem, grid);
    RunResult result;
    result.method = "brute";
    const auto& best = oracle.members[oracle.argmax];
    result.best = best.x;
    result.objectives = best.objectives;
    result.preferences = best.preferences;
    result.feasible = true;
    result.best_value = oracle.scores[oracle.argmax];
    result.termination = "exhaustive";
    return result;
}

// ---------------------------------------------------------------------------
// Alternatives

ComparisonTable evaluate_alternatives(const Problem& problem, const std::vector<Alternative>& designs) {
    if (designs.size() < 3) {
        throw TooFewAlternativesError("a comparison needs at least three alternatives, got " +
                                      std::to_string(designs.size()));
    }
    ComparisonTable t;
    for (const auto& v : problem.variables()) t.variable_names.push_back(v.name);
    for (const auto& o : problem.objectives()) t.objective_names.push_back(o.name);
    for (std::size_t c = 0; c < problem.criteria().size(); ++c) t.criterion_labels.push_back(problem.criterion_label(c));

    std::vector<std::vector<double>> rows;
    for (const auto& d : designs) {
        ComparisonRow row;
        row.label = d.label;
        row.x = problem.design(d.values);
        const auto constraints = evaluate_constraints(problem, row.x);
        row.feasible = std::all_of(constraints.begin(), constraints.end(),
                                   [](const ConstraintValue& c) { return c.feasible; });
        row.objectives = evaluate_objectives(problem, row.x);
        row.preferences = preferences_from_objectives(problem, row.objectives);
        rows.push_back(row.preferences);
        t.rows.push_back(std::move(row));
    }
    const auto agg = aggregate(ScoreMatrix::from_rows(rows), problem.criterion_weights());
    for (std::size_t r = 0; r < t.rows.size(); ++r) t.rows[r].score = agg.aggregated[r];
    t.ranking = agg.ranking;
    return t;
}

std::string ComparisonTable::to_csv() const {
    std::vector<std::string> header{"method"};
    header.insert(header.end(), variable_names.begin(), variable_names.end());
    header.insert(header.end(), objective_names.begin(), objective_names.end());
    for (const auto& c : criterion_labels) header.push_back("P:" + c);
    header.push_back("score");

    std::vector<std::vector<std::string>> lines{header};
    for (const auto& r : rows) {
        std::vector<std::string> cells{r.label};
        for (double v : r.x.values()) cells.push_back(format_number(v));
        for (double v : r.objectives) cells.push_back(format_number(v));
        for (double v : r.preferences) cells.push_back(format_number(v));
        cells.push_back(format_number(r.score));
        lines.push_back(std::move(cells));
    }
    return to_csv_text(lines);
}

RunResult run_method(const Problem& problem, const MethodLabel& method, const GAConfig& config,
                     const std::vector<std::vector<double>>& seeds, const GenerationObserver& observer) {
    switch (method.kind) {
        case MethodLabel::Kind::imap: return run_imap(problem, config, seeds, observer);
        case MethodLabel::Kind::minmax: return run_minmax(problem, config, seeds, observer);
        case MethodLabel::Kind::sodo: return run_sodo(problem, method.objective, method.direction, config, seeds, observer);
        case MethodLabel::Kind::brute: return run_brute(problem, GridSpec::stepped(problem, {}));
    }
    throw ValidationError("unknown method");
}

MethodComparison compare_methods(const Problem& problem, const GAConfig& config) {
    MethodComparison out;
    std::vector<std::vector<double>> seeds;
    auto record = [&](RunResult r) {
        seeds.emplace_back(r.best.values().begin(), r.best.values().end());
        out.runs.push_back({r.method, std::move(r)});
    };
    for (const auto& objective : problem.comparison_objectives()) {
        record(run_sodo(problem, objective, std::nullopt, config));
    }
    record(run_minmax(problem, config));
    auto imap = run_imap(problem, config, seeds);
    out.runs.push_back({imap.method, std::move(imap)});

    std::vector<Alternative> designs;
    for (const auto& run : out.runs) {
        designs.push_back({run.label, {run.result.best.values().begin(), run.result.best.values().end()}});
    }
    out.table = evaluate_alternatives(problem, designs);
    return out;
}

}  // namespace odesys
