#pragma once

/// @file solver.hpp
/// Mixed continuous/integer genetic algorithm. The IMAP variant ranks each
/// generation by the population-relative aggregated preference score and
/// keeps an archive of generation-best members that is re-aggregated every
/// generation to decide whether the search still improves. A scalar variant
/// with a plain best-so-far is shared by the min-max and single-objective
/// baselines.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "odesys/pfm.hpp"
#include "odesys/problem.hpp"
#include "odesys/rng.hpp"

namespace odesys {

struct GAConfig {
    std::size_t population_size = 120;
    std::size_t max_generations = 400;
    double crossover_rate = 0.85;
    /// Per-gene probability; defaults to 1/N for N design variables.
    std::optional<double> mutation_rate;
    std::size_t elite_count = 2;
    std::size_t tournament_size = 3;
    double relevance_threshold = 20.0;  ///< P*
    std::size_t stall_limit = 25;
    std::uint64_t rng_seed = 0;

    /// Throws ConfigError on any out-of-range field.
    void validate() const;
    double mutation_probability(std::size_t variable_count) const;
};

struct Individual {
    DesignVector x;
    bool feasible = false;
    double violation = 0.0;
    std::vector<double> objectives;   ///< empty when infeasible
    std::vector<double> preferences;  ///< empty when infeasible
};

Individual evaluate_individual(const Problem& problem, const DesignVector& x);

struct Population {
    std::vector<DesignVector> members;
    std::vector<std::string> warnings;
};

/// Seeds are repaired (clipped, integer-rounded) with a warning, then copied
/// to the front; the rest is sampled uniformly per variable. Throws
/// SeedDimensionError on a seed of the wrong length.
Population initialize_population(const Problem& problem, const std::vector<std::vector<double>>& seeds,
                                 const GAConfig& config, Rng& rng);

using Aggregator = std::function<AggregationResult(const ScoreMatrix&, std::span<const double>)>;

/// Fitness ordering of one generation.
struct GenerationRanking {
    std::vector<std::size_t> order;    ///< member indices, best first
    std::vector<double> first_pass;    ///< pass-one score, NaN when infeasible
    std::vector<double> second_pass;   ///< pass-two score, NaN when not re-aggregated
    std::size_t feasible_count = 0;
    std::size_t second_pass_count = 0;
};

/// Feasibility-first ranking. Feasible members are aggregated once; those
/// scoring above `p_star` are aggregated again among themselves and rank
/// first by that score. The remaining feasible members follow by pass-one
/// score, then infeasible members by ascending violation.
GenerationRanking evaluate_generation(std::span<const Individual> population, const Problem& problem,
                                      double p_star, const Aggregator& aggregator = {});

/// Elitism, tournament selection on rank, blend crossover on continuous
/// genes, uniform swap on integer genes and uniform-resample mutation.
std::vector<DesignVector> step_generation(std::span<const Individual> population,
                                          std::span<const std::size_t> order, const Problem& problem,
                                          const GAConfig& config, Rng& rng);

enum class ArchiveVerdict { improved, plateau, regressed, infeasible };

std::string to_string(ArchiveVerdict verdict);

struct ArchiveEntry {
    Individual member;
    std::size_t generation = 0;
};

/// Generation-best members with the plateau counter.
struct Archive {
    std::vector<ArchiveEntry> entries;
    std::vector<double> scores;     ///< latest aggregation of the whole archive
    std::size_t incumbent = 0;      ///< entry holding the best score
    std::size_t plateau_count = 0;

    bool empty() const noexcept { return entries.empty(); }
    /// First-ranked entry of the latest aggregation.
    const ArchiveEntry& best() const;
};

/// Appends a feasible generation best and re-aggregates the archive. The
/// newest entry improves when it scores 100 and the incumbent does not;
/// plateau when both score 100; otherwise it regresses. Plateau and
/// regression advance the counter, improvement resets it.
ArchiveVerdict update_archive(Archive& archive, Individual generation_best, std::size_t generation,
                              const Problem& problem, const Aggregator& aggregator = {});

struct GenerationRecord {
    std::size_t generation = 0;
    std::optional<double> best_u;
    ArchiveVerdict verdict = ArchiveVerdict::infeasible;
    double feasible_fraction = 0.0;
};

struct RunResult {
    std::string method;
    DesignVector best;
    std::vector<double> objectives;
    std::vector<double> preferences;
    bool feasible = false;
    /// Archive score (IMAP) or scalar value (min-max, single objective).
    double best_value = 0.0;
    std::vector<std::optional<double>> history;
    std::vector<GenerationRecord> diagnostics;
    std::size_t generations = 0;
    std::string termination;  ///< "stall" or "max_generations"
    std::vector<std::string> warnings;
    GAConfig config;
};

using GenerationObserver = std::function<void(const GenerationRecord&)>;

/// Throws NoFeasiblePointError when no feasible member was ever found.
RunResult run_imap(const Problem& problem, const GAConfig& config,
                   const std::vector<std::vector<double>>& seeds = {},
                   const GenerationObserver& observer = {});

/// Scalar fitness to minimize, evaluated on feasible members only.
using ScalarFitness = std::function<double(const Individual&)>;

/// Same operators with feasibility-first ranking on a scalar fitness and a
/// monotone best-so-far. Stops after `stall_limit` generations without a
/// strict improvement.
RunResult run_scalar_ga(const Problem& problem, const GAConfig& config, const ScalarFitness& fitness,
                        const std::vector<std::vector<double>>& seeds = {},
                        const GenerationObserver& observer = {});

}  // namespace odesys
