#pragma once

/// @file baselines.hpp
/// Reference methods the IMAP solver is compared against: min-max goal
/// attainment, single-objective optimization, exhaustive grid oracles and
/// the side-by-side evaluation of fixed alternatives.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "odesys/problem.hpp"
#include "odesys/solver.hpp"

namespace odesys {

enum class Direction { minimize, maximize };

struct MethodLabel {
    enum class Kind { imap, minmax, sodo, brute };

    Kind kind = Kind::imap;
    std::string objective;               ///< sodo only
    std::optional<Direction> direction;  ///< sodo only; inferred when empty

    /// Accepts "imap", "minmax", "brute" and "sodo:<objective>[:min|:max]".
    /// Throws ValidationError otherwise.
    static MethodLabel parse(const std::string& text);
    std::string str() const;

    friend bool operator==(const MethodLabel&, const MethodLabel&) = default;
};

/// max over criteria of w'(100 - P).
double minmax_value(const Problem& problem, std::span<const double> preferences);

RunResult run_minmax(const Problem& problem, const GAConfig& config,
                     const std::vector<std::vector<double>>& seeds = {},
                     const GenerationObserver& observer = {});

/// Direction implied by the objective's preference curve: a curve scoring
/// low values higher means minimize. Objectives without curves minimize.
Direction infer_direction(const Problem& problem, const std::string& objective);

/// Throws UnknownObjectiveError for an undeclared objective.
RunResult run_sodo(const Problem& problem, const std::string& objective, std::optional<Direction> direction,
                   const GAConfig& config, const std::vector<std::vector<double>>& seeds = {},
                   const GenerationObserver& observer = {});

/// Candidate values per variable.
struct GridSpec {
    std::vector<std::vector<double>> axes;

    std::size_t size() const;

    /// `steps[n]` spaces variable n from its lower bound; the upper bound is
    /// always included. Integer variables default to step 1, continuous ones
    /// to `default_points` evenly spaced values.
    static GridSpec stepped(const Problem& problem, const std::vector<std::optional<double>>& steps,
                            std::size_t default_points = 81);
};

inline constexpr std::size_t kMaxGridPoints = 1'000'000;

struct OraclePopulation {
    std::vector<Individual> members;  ///< feasible grid points in enumeration order
    std::vector<double> scores;       ///< aggregated over `members`
    std::size_t argmax = 0;
    std::size_t grid_points = 0;
};

/// Throws GridTooLargeError above 10^6 points, NoFeasiblePointError when no
/// grid point is feasible, DegenerateError for a single feasible point.
OraclePopulation brute_force_imap(const Problem& problem, const GridSpec& grid);

/// Nearest-rank percentile of a score list, q in (0, 100].
double percentile(std::vector<double> scores, double q);

struct OracleStanding {
    double score;       ///< candidate's score inside the augmented population
    double percentile;  ///< requested percentile of the grid members' scores
};

/// Adds `candidate` to the oracle population, re-aggregates, and reports its
/// score next to the q-th percentile of the original members.
OracleStanding oracle_standing(const Problem& problem, const OraclePopulation& oracle,
                               const Individual& candidate, double q = 99.0);

RunResult run_brute(const Problem& problem, const GridSpec& grid);

struct Alternative {
    std::string label;
    std::vector<double> values;
};

struct ComparisonRow {
    std::string label;
    DesignVector x;
    bool feasible = true;
    std::vector<double> objectives;
    std::vector<double> preferences;
    double score = 0.0;
};

struct ComparisonTable {
    std::vector<std::string> variable_names;
    std::vector<std::string> objective_names;
    std::vector<std::string> criterion_labels;
    std::vector<ComparisonRow> rows;
    std::vector<std::size_t> ranking;

    /// Header `method, x..., O..., P..., score`; RFC 4180 quoting.
    std::string to_csv() const;
};

/// Throws TooFewAlternativesError below three designs, BoundsError for an
/// out-of-bound design.
ComparisonTable evaluate_alternatives(const Problem& problem, const std::vector<Alternative>& designs);

/// Dispatches on the method label; brute force uses GridSpec::stepped
/// defaults.
RunResult run_method(const Problem& problem, const MethodLabel& method, const GAConfig& config,
                     const std::vector<std::vector<double>>& seeds = {},
                     const GenerationObserver& observer = {});

struct MethodRun {
    std::string label;
    RunResult result;
};

struct MethodComparison {
    std::vector<MethodRun> runs;
    ComparisonTable table;
};

/// Runs a single-objective optimization for every comparison objective,
/// then min-max, then IMAP seeded with all of their results, and tabulates
/// the outcomes in that order.
MethodComparison compare_methods(const Problem& problem, const GAConfig& config);

}  // namespace odesys
