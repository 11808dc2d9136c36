#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "odesys/error.hpp"
#include "odesys/pfm.hpp"

using namespace odesys;

namespace {

PreferenceCurve descending() { return PreferenceCurve({{0, 100}, {10, 0}}); }

// Independent oracle: column min-max normalization followed by a grid
// search for the least-squares scalar, step 0.01 over [0, 100].
std::vector<std::vector<double>> normalize_columns(const std::vector<std::vector<double>>& rows) {
    auto out = rows;
    const std::size_t m = rows.front().size();
    for (std::size_t c = 0; c < m; ++c) {
        double lo = rows[0][c], hi = rows[0][c];
        for (const auto& r : rows) {
            lo = std::min(lo, r[c]);
            hi = std::max(hi, r[c]);
        }
        for (auto& r : out) r[c] = hi > lo ? 100.0 * (r[c] - lo) / (hi - lo) : 100.0;
    }
    return out;
}

double weighted_sse(const std::vector<double>& row, const std::vector<double>& w, double a) {
    double s = 0.0;
    for (std::size_t c = 0; c < row.size(); ++c) s += w[c] * (a - row[c]) * (a - row[c]);
    return s;
}

double grid_minimizer(const std::vector<double>& row, const std::vector<double>& w) {
    double best_a = 0.0, best = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 10000; ++k) {
        const double a = k * 0.01;
        const double v = weighted_sse(row, w, a);
        if (v < best) {
            best = v;
            best_a = a;
        }
    }
    return best_a;
}

struct RandomCase {
    std::vector<std::vector<double>> rows;
    std::vector<double> weights;
};

RandomCase random_case(std::mt19937_64& gen) {
    std::uniform_int_distribution<int> alts(2, 10), crits(2, 6);
    std::uniform_real_distribution<double> score(0.0, 100.0), weight(0.05, 1.0);
    RandomCase c;
    const int n = alts(gen), m = crits(gen);
    c.rows.assign(n, std::vector<double>(m));
    for (auto& r : c.rows) {
        for (auto& v : r) v = score(gen);
    }
    c.weights.resize(m);
    for (auto& w : c.weights) w = weight(gen);
    const double total = std::accumulate(c.weights.begin(), c.weights.end(), 0.0);
    for (auto& w : c.weights) w /= total;
    return c;
}

}  // namespace

TEST(PreferenceScore, RejectsOutOfScale) {
    EXPECT_NO_THROW(PreferenceScore(0.0));
    EXPECT_NO_THROW(PreferenceScore(100.0));
    EXPECT_THROW(PreferenceScore(-0.1), CurveError);
    EXPECT_THROW(PreferenceScore(100.1), CurveError);
    EXPECT_THROW(PreferenceScore(std::nan("")), CurveError);
}

TEST(PreferenceCurve, InterpolatesAndClamps) {
    const auto c = descending();
    EXPECT_DOUBLE_EQ(evaluate_curve(c, 5), 50.0);
    EXPECT_DOUBLE_EQ(evaluate_curve(c, 0), 100.0);
    EXPECT_DOUBLE_EQ(evaluate_curve(c, 15), 0.0);
    EXPECT_DOUBLE_EQ(evaluate_curve(c, -3), 100.0);
    EXPECT_DOUBLE_EQ(evaluate_curve(c, 2.5), 75.0);
}

TEST(PreferenceCurve, MultiKnotSegments) {
    PreferenceCurve c({{0, 0}, {1, 80}, {3, 100}});
    EXPECT_DOUBLE_EQ(c(0.5), 40.0);
    EXPECT_DOUBLE_EQ(c(1), 80.0);
    EXPECT_DOUBLE_EQ(c(2), 90.0);
    EXPECT_FALSE(c.rewards_low_values());
    EXPECT_TRUE(descending().rewards_low_values());
}

TEST(PreferenceCurve, RejectsInvalidKnots) {
    EXPECT_THROW(PreferenceCurve({{0, 100}}), CurveError);
    EXPECT_THROW(PreferenceCurve({{0, 100}, {0, 50}}), CurveError);
    EXPECT_THROW(PreferenceCurve({{1, 100}, {0, 50}}), CurveError);
    EXPECT_THROW(PreferenceCurve({{0, 100}, {1, 101}}), CurveError);
    EXPECT_THROW(PreferenceCurve({{0, -1}, {1, 50}}), CurveError);
}

TEST(PreferenceCurve, ScoresStayOnScale) {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> x(-1e6, 1e6);
    PreferenceCurve c({{-10, 20}, {0, 100}, {5, 0}, {30, 60}});
    for (int i = 0; i < 10000; ++i) {
        const double v = c(x(gen));
        ASSERT_GE(v, 0.0);
        ASSERT_LE(v, 100.0);
    }
}

TEST(CombineWeights, SingleStakeholder) {
    const std::vector<double> wk{1.0};
    const auto ws = combine_weights(wk, {{0.4, 0.4, 0.2}});
    EXPECT_DOUBLE_EQ(ws.combined(0, 0), 0.4);
    EXPECT_DOUBLE_EQ(ws.combined(0, 1), 0.4);
    EXPECT_DOUBLE_EQ(ws.combined(0, 2), 0.2);
    EXPECT_EQ(ws.criterion_weights().size(), 3u);
}

TEST(CombineWeights, IdentitySplit) {
    const std::vector<double> wk{0.5, 0.5};
    const auto ws = combine_weights(wk, {{1, 0}, {0, 1}});
    EXPECT_DOUBLE_EQ(ws.combined(0, 0), 0.5);
    EXPECT_DOUBLE_EQ(ws.combined(0, 1), 0.0);
    EXPECT_DOUBLE_EQ(ws.combined(1, 0), 0.0);
    EXPECT_DOUBLE_EQ(ws.combined(1, 1), 0.5);
    const auto crit = ws.criteria();
    ASSERT_EQ(crit.size(), 2u);
    EXPECT_EQ(crit[0], std::make_pair(std::size_t{0}, std::size_t{0}));
    EXPECT_EQ(crit[1], std::make_pair(std::size_t{1}, std::size_t{1}));
}

TEST(CombineWeights, DirectProduct) {
    const std::vector<double> wk{0.6, 0.4};
    const auto ws = combine_weights(wk, {{0.5, 0.5, 0, 0}, {0, 0, 0.875, 0.125}});
    const std::vector<double> expected{0.30, 0.30, 0.35, 0.05};
    const auto w = ws.criterion_weights();
    ASSERT_EQ(w.size(), expected.size());
    for (std::size_t i = 0; i < w.size(); ++i) EXPECT_NEAR(w[i], expected[i], 1e-12);
}

TEST(CombineWeights, RejectsBadSums) {
    const std::vector<double> short_sum{0.5, 0.4};
    EXPECT_THROW(combine_weights(short_sum, {{1}, {1}}), NormalizationError);
    const std::vector<double> one{1.0};
    EXPECT_THROW(combine_weights(one, {{0.5, 0.4}}), NormalizationError);
    const std::vector<double> two{0.5, 0.5};
    EXPECT_THROW(combine_weights(two, {{1, 0}, {0, 0}}), NormalizationError);
    EXPECT_THROW(combine_weights(one, {{1.2, -0.2}}), NormalizationError);
    EXPECT_NO_THROW(combine_weights(one, {{0.5, 0.5 + 5e-7}}));
}

TEST(ScoreMatrix, ValidatesShapeAndRange) {
    EXPECT_THROW(ScoreMatrix::from_rows({{1, 2}, {3}}), ShapeError);
    EXPECT_THROW(ScoreMatrix::from_rows({{1, 200}}), CurveError);
}

TEST(Aggregate, SymmetricCase) {
    const std::vector<double> w{0.5, 0.5};
    const auto r = aggregate(ScoreMatrix::from_rows({{100, 100}, {0, 0}, {50, 50}}), w);
    EXPECT_DOUBLE_EQ(r.aggregated[0], 100.0);
    EXPECT_DOUBLE_EQ(r.aggregated[1], 0.0);
    EXPECT_DOUBLE_EQ(r.aggregated[2], 50.0);
}

TEST(Aggregate, WeightedMeansThenRescale) {
    const std::vector<double> w{0.75, 0.25};
    const auto scores = ScoreMatrix::from_rows({{100, 0}, {0, 100}, {40, 40}});
    const auto r = aggregate(scores, w);
    EXPECT_NEAR(r.synthesized[0], 75.0, 1e-12);
    EXPECT_NEAR(r.synthesized[1], 25.0, 1e-12);
    EXPECT_NEAR(r.synthesized[2], 40.0, 1e-12);
    EXPECT_NEAR(r.aggregated[0], 100.0, 1e-12);
    EXPECT_NEAR(r.aggregated[1], 0.0, 1e-12);
    EXPECT_NEAR(r.aggregated[2], 30.0, 1e-12);
    // The synthesized values agree with the brute-force least-squares grid.
    const auto norm = normalize_columns(scores.matrix().to_rows());
    const std::vector<double> wv(w.begin(), w.end());
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(r.synthesized[i], grid_minimizer(norm[i], wv), 0.005);
}

TEST(Aggregate, IdenticalAlternativesAllScore100) {
    const std::vector<double> w{0.3, 0.7};
    const auto r = aggregate(ScoreMatrix::from_rows({{20, 70}, {20, 70}, {20, 70}}), w);
    for (double v : r.aggregated) EXPECT_DOUBLE_EQ(v, 100.0);
}

TEST(Aggregate, ConstantColumnMapsTo100) {
    const std::vector<double> w{0.5, 0.5};
    const auto r = aggregate(ScoreMatrix::from_rows({{10, 0}, {10, 100}}), w);
    EXPECT_DOUBLE_EQ(r.synthesized[0], 50.0);
    EXPECT_DOUBLE_EQ(r.synthesized[1], 100.0);
}

TEST(Aggregate, Errors) {
    const std::vector<double> w2{0.5, 0.5};
    const std::vector<double> w3{0.2, 0.3, 0.5};
    EXPECT_THROW(aggregate(ScoreMatrix::from_rows({{1, 2}, {3, 4}}), w3), ShapeError);
    EXPECT_THROW(aggregate(ScoreMatrix::from_rows({{1, 2}}), w2), DegenerateError);
}

TEST(Rank, DescendingWithStableTies) {
    EXPECT_EQ(rank(std::vector<double>{100, 0, 50}), (std::vector<std::size_t>{0, 2, 1}));
    EXPECT_EQ(rank(std::vector<double>{100, 100}), (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(rank(std::vector<double>{0, 30, 100}), (std::vector<std::size_t>{2, 1, 0}));
}

TEST(AggregateProperty, LeastSquaresOptimalityOnGrid) {
    std::mt19937_64 gen(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const auto c = random_case(gen);
        const auto r = aggregate(ScoreMatrix::from_rows(c.rows), c.weights);
        const auto norm = normalize_columns(c.rows);
        for (std::size_t i = 0; i < norm.size(); ++i) {
            const double at_star = weighted_sse(norm[i], c.weights, r.synthesized[i]);
            for (int k = 0; k <= 10000; k += 7) {
                ASSERT_LE(at_star, weighted_sse(norm[i], c.weights, k * 0.01) + 1e-9);
            }
        }
    }
}

TEST(AggregateProperty, RescaleBounds) {
    std::mt19937_64 gen(99);
    for (int trial = 0; trial < 500; ++trial) {
        const auto c = random_case(gen);
        const auto r = aggregate(ScoreMatrix::from_rows(c.rows), c.weights);
        const auto [lo, hi] = std::minmax_element(r.aggregated.begin(), r.aggregated.end());
        ASSERT_DOUBLE_EQ(*hi, 100.0);
        ASSERT_DOUBLE_EQ(*lo, 0.0);
        EXPECT_EQ(r.ranking, rank(r.aggregated));
    }
}

TEST(AggregateProperty, PermutationEquivariance) {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 200; ++trial) {
        const auto c = random_case(gen);
        std::vector<std::size_t> perm(c.rows.size());
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), gen);
        std::vector<std::vector<double>> permuted;
        for (auto p : perm) permuted.push_back(c.rows[p]);
        const auto a = aggregate(ScoreMatrix::from_rows(c.rows), c.weights);
        const auto b = aggregate(ScoreMatrix::from_rows(permuted), c.weights);
        for (std::size_t i = 0; i < perm.size(); ++i) ASSERT_NEAR(b.aggregated[i], a.aggregated[perm[i]], 1e-9);
    }
}

TEST(AggregateProperty, ZeroWeightColumnIsIgnored) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> score(0.0, 100.0);
    for (int trial = 0; trial < 200; ++trial) {
        auto c = random_case(gen);
        const std::size_t z = trial % c.weights.size();
        const double freed = c.weights[z];
        c.weights[z] = 0.0;
        for (auto& w : c.weights) w /= (1.0 - freed);
        const auto a = aggregate(ScoreMatrix::from_rows(c.rows), c.weights);
        for (auto& r : c.rows) r[z] = score(gen);
        const auto b = aggregate(ScoreMatrix::from_rows(c.rows), c.weights);
        for (std::size_t i = 0; i < c.rows.size(); ++i) ASSERT_NEAR(a.aggregated[i], b.aggregated[i], 1e-9);
    }
}

TEST(AggregateProperty, RankReversalFixture) {
    // Removing the worst alternative C renormalizes the first column and
    // flips the order of A and B.
    const std::vector<double> w{0.6, 0.4};
    const auto three = aggregate(ScoreMatrix::from_rows({{60, 40}, {50, 60}, {0, 50}}), w);
    EXPECT_EQ(three.ranking, (std::vector<std::size_t>{1, 0, 2}));
    const auto two = aggregate(ScoreMatrix::from_rows({{60, 40}, {50, 60}}), w);
    EXPECT_EQ(two.ranking, (std::vector<std::size_t>{0, 1}));
    EXPECT_GT(two.aggregated[0], two.aggregated[1]);
}
