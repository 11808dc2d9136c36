#pragma once

/// @file pfm.hpp
/// Preference scales, piecewise-linear preference curves, weight algebra and
/// the population-relative least-squares aggregation of preference scores.
///
/// Aggregation runs in three stages:
///   1. every criterion column is min-max rescaled over the alternatives to
///      [0, 100] (a constant column maps to 100);
///   2. each alternative's normalized row is synthesized into the scalar that
///      minimizes the weighted squared distance to the row, i.e. the weighted
///      mean of the row;
///   3. the synthesized values are rescaled over the population to [0, 100]
///      (an all-equal population scores 100 everywhere).
/// A score therefore depends on every other alternative in the population,
/// which is what makes rank reversal possible.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace odesys {

inline constexpr double kScoreFloor = 0.0;
inline constexpr double kScoreCeiling = 100.0;

/// A preference score on the closed scale [0, 100].
class PreferenceScore {
public:
    constexpr PreferenceScore() = default;
    /// Throws CurveError when `value` is outside [0, 100] or not finite.
    explicit PreferenceScore(double value);

    constexpr double value() const noexcept { return value_; }
    constexpr operator double() const noexcept { return value_; }

private:
    double value_ = 0.0;
};

struct CurveKnot {
    double objective;
    double score;

    friend bool operator==(const CurveKnot&, const CurveKnot&) = default;
};

/// Piecewise-linear map from an objective value to a preference score.
/// Outside the knot range the endpoint score is held.
class PreferenceCurve {
public:
    /// Requires at least two knots with strictly increasing objective values
    /// and scores inside [0, 100]; throws CurveError otherwise.
    explicit PreferenceCurve(std::vector<CurveKnot> knots);

    const std::vector<CurveKnot>& knots() const noexcept { return knots_; }

    PreferenceScore operator()(double objective_value) const;

    /// True when the first knot scores higher than the last, i.e. the curve
    /// rewards small objective values.
    bool rewards_low_values() const noexcept;

    friend bool operator==(const PreferenceCurve&, const PreferenceCurve&) = default;

private:
    std::vector<CurveKnot> knots_;
};

PreferenceScore evaluate_curve(const PreferenceCurve& curve, double objective_value);

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    /// Throws ShapeError on ragged input.
    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }

    std::vector<std::vector<double>> to_rows() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Stakeholder weights w_k, per-stakeholder objective weights w_{k,i} and
/// their product w'_{k,i} = w_k * w_{k,i}.
struct WeightSet {
    std::vector<double> stakeholder_weights;
    Matrix objective_weights;
    Matrix combined;

    /// Non-zero combined weights in row-major (stakeholder, objective) order;
    /// one per aggregation criterion.
    std::vector<double> criterion_weights() const;

    /// (stakeholder, objective) index pairs matching criterion_weights().
    std::vector<std::pair<std::size_t, std::size_t>> criteria() const;
};

/// Builds a WeightSet. Throws NormalizationError when the stakeholder weights,
/// any stakeholder's objective row or the combined matrix deviates from a sum
/// of 1 by more than 1e-6, when a stakeholder holds no non-zero objective
/// weight, or when any weight is negative.
WeightSet combine_weights(std::span<const double> stakeholder_weights,
                          const std::vector<std::vector<double>>& objective_weights);

/// Alternatives (rows) scored against criteria (columns) on [0, 100].
class ScoreMatrix {
public:
    ScoreMatrix() = default;
    /// Throws ShapeError on ragged rows, CurveError on entries outside [0, 100].
    explicit ScoreMatrix(Matrix scores);
    static ScoreMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t alternatives() const noexcept { return scores_.rows(); }
    std::size_t criteria() const noexcept { return scores_.cols(); }
    double operator()(std::size_t alternative, std::size_t criterion) const {
        return scores_(alternative, criterion);
    }
    std::span<const double> row(std::size_t alternative) const { return scores_.row(alternative); }
    const Matrix& matrix() const noexcept { return scores_; }

private:
    Matrix scores_;
};

struct AggregationResult {
    /// Rescaled group score per alternative, in [0, 100].
    std::vector<double> aggregated;
    /// Alternatives by descending score, ties by ascending index.
    std::vector<std::size_t> ranking;
    /// Stage-(b) weighted means before the population rescale.
    std::vector<double> synthesized;
};

/// Weighted least-squares synthesis of a single row: the scalar a minimizing
/// sum_c w_c (a - p_c)^2.
double synthesize(std::span<const double> row, std::span<const double> weights);

/// Throws ShapeError when the weight count differs from the column count or
/// the weights do not sum to a positive value, DegenerateError for fewer than
/// two alternatives.
AggregationResult aggregate(const ScoreMatrix& scores, std::span<const double> criterion_weights);
AggregationResult aggregate(const ScoreMatrix& scores, const WeightSet& weights);

/// Indices by descending score; ties keep ascending index order.
std::vector<std::size_t> rank(std::span<const double> scores);
std::vector<std::size_t> rank(const AggregationResult& result);

}  // namespace odesys
