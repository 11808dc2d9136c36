#include "odesys/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "odesys/error.hpp"

namespace odesys {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

AggregationResult run_aggregator(const Aggregator& aggregator, const ScoreMatrix& scores,
                                 std::span<const double> weights) {
    return aggregator ? aggregator(scores, weights) : aggregate(scores, weights);
}

/// Aggregated scores of a set of preference rows; a lone row scores 100.
std::vector<double> aggregate_rows(const std::vector<std::vector<double>>& rows, const Problem& problem,
                                   const Aggregator& aggregator) {
    if (rows.size() == 1) return {kScoreCeiling};
    return run_aggregator(aggregator, ScoreMatrix::from_rows(rows), problem.criterion_weights()).aggregated;
}

/// Per-run memo of evaluations; GA populations repeat designs constantly.
class EvaluationCache {
public:
    explicit EvaluationCache(const Problem& problem) : problem_(problem) {}

    const Individual& get(const DesignVector& x) {
        std::vector<double> key(x.values().begin(), x.values().end());
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(std::move(key), evaluate_individual(problem_, x)).first;
        return it->second;
    }

    std::vector<Individual> evaluate(const std::vector<DesignVector>& members) {
        std::vector<Individual> out;
        out.reserve(members.size());
        for (const auto& m : members) out.push_back(get(m));
        return out;
    }

private:
    const Problem& problem_;
    std::map<std::vector<double>, Individual> cache_;
};

double feasible_fraction(std::span<const Individual> population) {
    const auto n = std::count_if(population.begin(), population.end(), [](const Individual& i) { return i.feasible; });
    return static_cast<double>(n) / static_cast<double>(population.size());
}

void fill_result(RunResult& result, const Individual& best) {
    result.best = best.x;
    result.objectives = best.objectives;
    result.preferences = best.preferences;
    result.feasible = best.feasible;
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

void GAConfig::validate() const {
    if (population_size < 4) {
        throw ConfigError("population size must be at least 4, got " + std::to_string(population_size));
    }
    if (max_generations < 1) throw ConfigError("max generations must be at least 1");
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) throw ConfigError("crossover rate must lie in [0, 1]");
    if (mutation_rate && !(*mutation_rate >= 0.0 && *mutation_rate <= 1.0)) {
        throw ConfigError("mutation rate must lie in [0, 1]");
    }
    if (elite_count >= population_size) throw ConfigError("elite count must be below the population size");
    if (tournament_size < 1) throw ConfigError("tournament size must be at least 1");
    if (!(relevance_threshold >= kScoreFloor && relevance_threshold <= kScoreCeiling)) {
        throw ConfigError("relevance threshold P* must lie in [0, 100]");
    }
    if (stall_limit < 1) throw ConfigError("stall limit must be at least 1");
}

double GAConfig::mutation_probability(std::size_t variable_count) const {
    if (mutation_rate) return *mutation_rate;
    return variable_count == 0 ? 0.0 : 1.0 / static_cast<double>(variable_count);
}

// ---------------------------------------------------------------------------
// Population

Individual evaluate_individual(const Problem& problem, const DesignVector& x) {
    auto ev = evaluate(problem, x);
    Individual ind;
    ind.x = x;
    ind.feasible = ev.feasible;
    ind.violation = ev.violation;
    ind.objectives = std::move(ev.objectives);
    ind.preferences = std::move(ev.preferences);
    return ind;
}

namespace {

double sample_gene(const DesignVariable& v, Rng& rng) {
    if (v.is_integer()) {
        return static_cast<double>(rng.integer(static_cast<std::int64_t>(v.lower), static_cast<std::int64_t>(v.upper)));
    }
    return rng.uniform(v.lower, v.upper);
}

}  // namespace

Population initialize_population(const Problem& problem, const std::vector<std::vector<double>>& seeds,
                                 const GAConfig& config, Rng& rng) {
    const auto& vars = problem.variables();
    Population pop;
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        auto [values, notes] = repair_design(vars, seeds[s]);
        for (auto& n : notes) pop.warnings.push_back("seed " + std::to_string(s) + ": " + n);
        if (pop.members.size() == config.population_size) {
            pop.warnings.push_back("seed " + std::to_string(s) + " dropped: population is full");
            continue;
        }
        pop.members.emplace_back(vars, std::move(values));
    }
    while (pop.members.size() < config.population_size) {
        std::vector<double> values;
        values.reserve(vars.size());
        for (const auto& v : vars) values.push_back(sample_gene(v, rng));
        pop.members.emplace_back(vars, std::move(values));
    }
    return pop;
}

// ---------------------------------------------------------------------------
// Ranking

GenerationRanking evaluate_generation(std::span<const Individual> population, const Problem& problem,
                                      double p_star, const Aggregator& aggregator) {
    if (population.empty()) throw DegenerateError("cannot rank an empty population");
    GenerationRanking r;
    r.first_pass.assign(population.size(), kNaN);
    r.second_pass.assign(population.size(), kNaN);

    std::vector<std::size_t> feasible;
    std::vector<std::size_t> infeasible;
    for (std::size_t i = 0; i < population.size(); ++i) {
        (population[i].feasible ? feasible : infeasible).push_back(i);
    }
    r.feasible_count = feasible.size();

    std::vector<std::size_t> relevant;
    std::vector<std::size_t> filtered;
    if (!feasible.empty()) {
        std::vector<std::vector<double>> rows;
        rows.reserve(feasible.size());
        for (auto i : feasible) rows.push_back(population[i].preferences);
        const auto scores = aggregate_rows(rows, problem, aggregator);
        for (std::size_t k = 0; k < feasible.size(); ++k) {
            r.first_pass[feasible[k]] = scores[k];
            (scores[k] > p_star ? relevant : filtered).push_back(feasible[k]);
        }
    }
    if (!relevant.empty()) {
        std::vector<std::vector<double>> rows;
        rows.reserve(relevant.size());
        for (auto i : relevant) rows.push_back(population[i].preferences);
        const auto scores = aggregate_rows(rows, problem, aggregator);
        for (std::size_t k = 0; k < relevant.size(); ++k) r.second_pass[relevant[k]] = scores[k];
        r.second_pass_count = relevant.size();
    }

    std::stable_sort(relevant.begin(), relevant.end(),
                     [&](std::size_t a, std::size_t b) { return r.second_pass[a] > r.second_pass[b]; });
    std::stable_sort(filtered.begin(), filtered.end(),
                     [&](std::size_t a, std::size_t b) { return r.first_pass[a] > r.first_pass[b]; });
    std::stable_sort(infeasible.begin(), infeasible.end(), [&](std::size_t a, std::size_t b) {
        return population[a].violation < population[b].violation;
    });
    r.order = std::move(relevant);
    r.order.insert(r.order.end(), filtered.begin(), filtered.end());
    r.order.insert(r.order.end(), infeasible.begin(), infeasible.end());
    return r;
}

// ---------------------------------------------------------------------------
// Variation

std::vector<DesignVector> step_generation(std::span<const Individual> population,
                                          std::span<const std::size_t> order, const Problem& problem,
                                          const GAConfig& config, Rng& rng) {
    const auto& vars = problem.variables();
    const std::size_t n = population.size();
    if (n == 0 || order.size() != n) throw ShapeError("ranking does not match the population");

    std::vector<std::size_t> position(n);
    for (std::size_t p = 0; p < n; ++p) position[order[p]] = p;

    auto tournament = [&]() {
        std::size_t best = static_cast<std::size_t>(rng.below(n));
        for (std::size_t t = 1; t < config.tournament_size; ++t) {
            const auto c = static_cast<std::size_t>(rng.below(n));
            if (position[c] < position[best]) best = c;
        }
        return best;
    };
    const double p_mut = config.mutation_probability(vars.size());

    std::vector<DesignVector> next;
    next.reserve(config.population_size);
    for (std::size_t e = 0; e < std::min(config.elite_count, n); ++e) next.push_back(population[order[e]].x);

    while (next.size() < config.population_size) {
        const auto& a = population[tournament()].x;
        const auto& b = population[tournament()].x;
        std::vector<double> c1(a.values().begin(), a.values().end());
        std::vector<double> c2(b.values().begin(), b.values().end());
        if (rng.bernoulli(config.crossover_rate)) {
            for (std::size_t g = 0; g < vars.size(); ++g) {
                const auto& v = vars[g];
                if (v.is_integer()) {
                    if (rng.bernoulli(0.5)) std::swap(c1[g], c2[g]);
                } else {
                    const double u = rng.uniform(-0.1, 1.1);
                    c1[g] = std::clamp(u * a[g] + (1.0 - u) * b[g], v.lower, v.upper);
                    c2[g] = std::clamp(u * b[g] + (1.0 - u) * a[g], v.lower, v.upper);
                }
            }
        }
        for (auto* child : {&c1, &c2}) {
            for (std::size_t g = 0; g < vars.size(); ++g) {
                if (rng.bernoulli(p_mut)) (*child)[g] = sample_gene(vars[g], rng);
            }
        }
        next.emplace_back(vars, std::move(c1));
        if (next.size() < config.population_size) next.emplace_back(vars, std::move(c2));
    }
    return next;
}

// ---------------------------------------------------------------------------
// Archive

std::string to_string(ArchiveVerdict verdict) {
    switch (verdict) {
        case ArchiveVerdict::improved: return "improved";
        case ArchiveVerdict::plateau: return "plateau";
        case ArchiveVerdict::regressed: return "regressed";
        case ArchiveVerdict::infeasible: return "infeasible";
    }
    return "unknown";
}

const ArchiveEntry& Archive::best() const {
    if (entries.empty()) throw NoFeasiblePointError("the archive is empty");
    return entries[rank(scores).front()];
}

ArchiveVerdict update_archive(Archive& archive, Individual generation_best, std::size_t generation,
                              const Problem& problem, const Aggregator& aggregator) {
    if (!generation_best.feasible) return ArchiveVerdict::infeasible;
    archive.entries.push_back({std::move(generation_best), generation});
    const std::size_t newest = archive.entries.size() - 1;
    if (newest == 0) {
        archive.scores = {kScoreCeiling};
        archive.incumbent = 0;
        archive.plateau_count = 0;
        return ArchiveVerdict::improved;
    }

    std::vector<std::vector<double>> rows;
    rows.reserve(archive.entries.size());
    for (const auto& e : archive.entries) rows.push_back(e.member.preferences);
    archive.scores = aggregate_rows(rows, problem, aggregator);

    const bool newest_top = archive.scores[newest] >= kScoreCeiling;
    const bool incumbent_top = archive.scores[archive.incumbent] >= kScoreCeiling;
    if (newest_top && !incumbent_top) {
        archive.incumbent = newest;
        archive.plateau_count = 0;
        return ArchiveVerdict::improved;
    }
    ++archive.plateau_count;
    return newest_top ? ArchiveVerdict::plateau : ArchiveVerdict::regressed;
}

// ---------------------------------------------------------------------------
// Drivers

RunResult run_imap(const Problem& problem, const GAConfig& config, const std::vector<std::vector<double>>& seeds,
                   const GenerationObserver& observer) {
    config.validate();
    Rng rng(config.rng_seed);
    EvaluationCache cache(problem);
    RunResult result;
    result.method = "imap";
    result.config = config;

    auto init = initialize_population(problem, seeds, config, rng);
    result.warnings = std::move(init.warnings);
    auto members = std::move(init.members);

    Archive archive;
    for (std::size_t g = 0; g < config.max_generations; ++g) {
        const auto population = cache.evaluate(members);
        const auto ranking = evaluate_generation(population, problem, config.relevance_threshold);
        const auto& best = population[ranking.order.front()];

        GenerationRecord rec;
        rec.generation = g;
        rec.feasible_fraction = feasible_fraction(population);
        rec.verdict = update_archive(archive, best, g, problem);
        if (rec.verdict != ArchiveVerdict::infeasible) rec.best_u = archive.scores.back();
        result.history.push_back(rec.best_u);
        result.diagnostics.push_back(rec);
        if (observer) observer(rec);
        result.generations = g + 1;

        if (archive.plateau_count >= config.stall_limit) {
            result.termination = "stall";
            break;
        }
        if (g + 1 == config.max_generations) {
            result.termination = "max_generations";
            break;
        }
        members = step_generation(population, ranking.order, problem, config, rng);
    }

    if (archive.empty()) {
        throw NoFeasiblePointError("no feasible design was found in " + std::to_string(result.generations) +
                                   " generations");
    }
    const auto& best = archive.best();
    fill_result(result, best.member);
    result.best_value = archive.scores[static_cast<std::size_t>(&best - archive.entries.data())];
    return result;
}

RunResult run_scalar_ga(const Problem& problem, const GAConfig& config, const ScalarFitness& fitness,
                        const std::vector<std::vector<double>>& seeds, const GenerationObserver& observer) {
    config.validate();
    Rng rng(config.rng_seed);
    EvaluationCache cache(problem);
    RunResult result;
    result.config = config;

    auto init = initialize_population(problem, seeds, config, rng);
    result.warnings = std::move(init.warnings);
    auto members = std::move(init.members);

    std::optional<Individual> incumbent;
    double incumbent_value = 0.0;
    std::size_t stall = 0;
    for (std::size_t g = 0; g < config.max_generations; ++g) {
        const auto population = cache.evaluate(members);
        std::vector<double> value(population.size(), kNaN);
        std::vector<std::size_t> feasible;
        std::vector<std::size_t> infeasible;
        for (std::size_t i = 0; i < population.size(); ++i) {
            if (population[i].feasible) {
                value[i] = fitness(population[i]);
                feasible.push_back(i);
            } else {
                infeasible.push_back(i);
            }
        }
        std::stable_sort(feasible.begin(), feasible.end(),
                         [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
        std::stable_sort(infeasible.begin(), infeasible.end(), [&](std::size_t a, std::size_t b) {
            return population[a].violation < population[b].violation;
        });
        std::vector<std::size_t> order = feasible;
        order.insert(order.end(), infeasible.begin(), infeasible.end());

        GenerationRecord rec;
        rec.generation = g;
        rec.feasible_fraction = feasible_fraction(population);
        if (feasible.empty()) {
            rec.verdict = ArchiveVerdict::infeasible;
        } else {
            const double v = value[feasible.front()];
            if (!incumbent || v < incumbent_value) {
                incumbent = population[feasible.front()];
                incumbent_value = v;
                stall = 0;
                rec.verdict = ArchiveVerdict::improved;
            } else {
                ++stall;
                rec.verdict = v == incumbent_value ? ArchiveVerdict::plateau : ArchiveVerdict::regressed;
            }
            rec.best_u = incumbent_value;
        }
        result.history.push_back(rec.best_u);
        result.diagnostics.push_back(rec);
        if (observer) observer(rec);
        result.generations = g + 1;

        if (stall >= config.stall_limit) {
            result.termination = "stall";
            break;
        }
        if (g + 1 == config.max_generations) {
            result.termination = "max_generations";
            break;
        }
        members = step_generation(population, order, problem, config, rng);
    }

    if (!incumbent) {
        throw NoFeasiblePointError("no feasible design was found in " + std::to_string(result.generations) +
                                   " generations");
    }
    fill_result(result, *incumbent);
    result.best_value = incumbent_value;
    return result;
}

}  // namespace odesys
