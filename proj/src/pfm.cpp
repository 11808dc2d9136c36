#include "odesys/pfm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "odesys/error.hpp"

namespace odesys {

namespace {

constexpr double kWeightTolerance = 1e-6;

bool is_score(double v) { return std::isfinite(v) && v >= kScoreFloor && v <= kScoreCeiling; }

std::string num(double v) {
    std::string s = std::to_string(v);
    return s;
}

}  // namespace

PreferenceScore::PreferenceScore(double value) : value_(value) {
    if (!is_score(value)) {
        throw CurveError("preference score " + num(value) + " outside [0, 100]");
    }
}

PreferenceCurve::PreferenceCurve(std::vector<CurveKnot> knots) : knots_(std::move(knots)) {
    if (knots_.size() < 2) {
        throw CurveError("a preference curve needs at least two knots");
    }
    for (std::size_t i = 0; i < knots_.size(); ++i) {
        const auto& k = knots_[i];
        if (!std::isfinite(k.objective)) {
            throw CurveError("knot " + std::to_string(i) + " has a non-finite objective value");
        }
        if (!is_score(k.score)) {
            throw CurveError("knot " + std::to_string(i) + " score " + num(k.score) +
                             " outside [0, 100]");
        }
        if (i > 0 && !(k.objective > knots_[i - 1].objective)) {
            throw CurveError("knot objective values must be strictly increasing (knot " +
                             std::to_string(i) + ")");
        }
    }
}

PreferenceScore PreferenceCurve::operator()(double x) const {
    if (std::isnan(x)) {
        throw CurveError("cannot evaluate a preference curve at NaN");
    }
    if (x <= knots_.front().objective) return PreferenceScore(knots_.front().score);
    if (x >= knots_.back().objective) return PreferenceScore(knots_.back().score);

    auto hi = std::upper_bound(knots_.begin(), knots_.end(), x,
                               [](double v, const CurveKnot& k) { return v < k.objective; });
    auto lo = hi - 1;
    const double t = (x - lo->objective) / (hi->objective - lo->objective);
    double s = lo->score + t * (hi->score - lo->score);
    return PreferenceScore(std::clamp(s, kScoreFloor, kScoreCeiling));
}

bool PreferenceCurve::rewards_low_values() const noexcept {
    return knots_.front().score > knots_.back().score;
}

PreferenceScore evaluate_curve(const PreferenceCurve& curve, double objective_value) {
    return curve(objective_value);
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) {
            throw ShapeError("row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                             " entries, expected " + std::to_string(cols));
        }
        std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(r * cols));
    }
    return m;
}

std::vector<std::vector<double>> Matrix::to_rows() const {
    std::vector<std::vector<double>> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        auto v = row(r);
        out[r].assign(v.begin(), v.end());
    }
    return out;
}

std::vector<double> WeightSet::criterion_weights() const {
    std::vector<double> out;
    for (std::size_t k = 0; k < combined.rows(); ++k) {
        for (std::size_t i = 0; i < combined.cols(); ++i) {
            if (combined(k, i) > 0.0) out.push_back(combined(k, i));
        }
    }
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> WeightSet::criteria() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t k = 0; k < combined.rows(); ++k) {
        for (std::size_t i = 0; i < combined.cols(); ++i) {
            if (combined(k, i) > 0.0) out.emplace_back(k, i);
        }
    }
    return out;
}

WeightSet combine_weights(std::span<const double> w_k,
                          const std::vector<std::vector<double>>& w_ki) {
    if (w_k.empty()) {
        throw NormalizationError("at least one stakeholder weight is required");
    }
    if (w_ki.size() != w_k.size()) {
        throw ShapeError("objective weight matrix has " + std::to_string(w_ki.size()) +
                         " rows for " + std::to_string(w_k.size()) + " stakeholders");
    }
    Matrix objective = Matrix::from_rows(w_ki);

    auto check_entry = [](double w, const std::string& what) {
        if (!std::isfinite(w) || w < 0.0) {
            throw NormalizationError(what + " must be a finite non-negative number");
        }
    };

    double stakeholder_sum = 0.0;
    for (std::size_t k = 0; k < w_k.size(); ++k) {
        check_entry(w_k[k], "stakeholder weight " + std::to_string(k));
        stakeholder_sum += w_k[k];
    }
    if (std::abs(stakeholder_sum - 1.0) > kWeightTolerance) {
        throw NormalizationError("stakeholder weights sum to " + num(stakeholder_sum) + ", expected 1");
    }

    Matrix combined(objective.rows(), objective.cols());
    double total = 0.0;
    for (std::size_t k = 0; k < objective.rows(); ++k) {
        double row_sum = 0.0;
        for (std::size_t i = 0; i < objective.cols(); ++i) {
            check_entry(objective(k, i), "objective weight (" + std::to_string(k) + ", " +
                                             std::to_string(i) + ")");
            row_sum += objective(k, i);
            combined(k, i) = w_k[k] * objective(k, i);
            total += combined(k, i);
        }
        if (row_sum == 0.0) {
            throw NormalizationError("stakeholder " + std::to_string(k) + " holds no objective weight");
        }
        if (std::abs(row_sum - 1.0) > kWeightTolerance) {
            throw NormalizationError("objective weights of stakeholder " + std::to_string(k) +
                                     " sum to " + num(row_sum) + ", expected 1");
        }
    }
    if (std::abs(total - 1.0) > kWeightTolerance) {
        throw NormalizationError("combined weights sum to " + num(total) + ", expected 1");
    }

    return WeightSet{std::vector<double>(w_k.begin(), w_k.end()), std::move(objective),
                     std::move(combined)};
}

ScoreMatrix::ScoreMatrix(Matrix scores) : scores_(std::move(scores)) {
    for (std::size_t r = 0; r < scores_.rows(); ++r) {
        for (std::size_t c = 0; c < scores_.cols(); ++c) {
            if (!is_score(scores_(r, c))) {
                throw CurveError("score (" + std::to_string(r) + ", " + std::to_string(c) + ") = " +
                                 num(scores_(r, c)) + " outside [0, 100]");
            }
        }
    }
}

ScoreMatrix ScoreMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    return ScoreMatrix(Matrix::from_rows(rows));
}

double synthesize(std::span<const double> row, std::span<const double> weights) {
    if (row.size() != weights.size()) {
        throw ShapeError("row has " + std::to_string(row.size()) + " scores for " +
                         std::to_string(weights.size()) + " weights");
    }
    double num_sum = 0.0;
    double den = 0.0;
    for (std::size_t c = 0; c < row.size(); ++c) {
        num_sum += weights[c] * row[c];
        den += weights[c];
    }
    if (!(den > 0.0)) {
        throw ShapeError("criterion weights must sum to a positive value");
    }
    return num_sum / den;
}

AggregationResult aggregate(const ScoreMatrix& scores, std::span<const double> weights) {
    const std::size_t n = scores.alternatives();
    const std::size_t m = scores.criteria();
    if (weights.size() != m) {
        throw ShapeError("score matrix has " + std::to_string(m) + " criteria but " +
                         std::to_string(weights.size()) + " weights were given");
    }
    if (n < 2) {
        throw DegenerateError("aggregation needs at least two alternatives, got " + std::to_string(n));
    }

    // (a) per-criterion relative normalization
    Matrix normalized(n, m);
    for (std::size_t c = 0; c < m; ++c) {
        double lo = scores(0, c);
        double hi = scores(0, c);
        for (std::size_t r = 1; r < n; ++r) {
            lo = std::min(lo, scores(r, c));
            hi = std::max(hi, scores(r, c));
        }
        for (std::size_t r = 0; r < n; ++r) {
            normalized(r, c) = hi > lo ? (scores(r, c) - lo) / (hi - lo) * kScoreCeiling : kScoreCeiling;
        }
    }

    // (b) least-squares synthesis per alternative
    AggregationResult result;
    result.synthesized.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        result.synthesized[r] = synthesize(normalized.row(r), weights);
    }

    // (c) population rescale
    const auto [lo_it, hi_it] = std::minmax_element(result.synthesized.begin(), result.synthesized.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    result.aggregated.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        result.aggregated[r] =
            hi > lo ? (result.synthesized[r] - lo) / (hi - lo) * kScoreCeiling : kScoreCeiling;
    }
    result.ranking = rank(result.aggregated);
    return result;
}

AggregationResult aggregate(const ScoreMatrix& scores, const WeightSet& weights) {
    const auto w = weights.criterion_weights();
    return aggregate(scores, w);
}

std::vector<std::size_t> rank(std::span<const double> scores) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    return order;
}

std::vector<std::size_t> rank(const AggregationResult& result) { return rank(result.aggregated); }

}  // namespace odesys
