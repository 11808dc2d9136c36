#pragma once

/// @file problem.hpp
/// Generic representation of a design problem: bounded design variables,
/// exogenous constants, design performance functions, objectives,
/// constraints, and the stakeholders' preference curves and weights. A
/// Problem is built from a JSON document and is immutable afterwards.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "odesys/hooks.hpp"
#include "odesys/pfm.hpp"

namespace odesys {

enum class VariableKind { continuous, integer };

struct DesignVariable {
    std::string name;
    VariableKind kind = VariableKind::continuous;
    double lower = 0.0;
    double upper = 0.0;
    std::string unit;

    bool is_integer() const noexcept { return kind == VariableKind::integer; }
};

/// Values x_1..x_N aligned with a variable list. Construction checks the
/// bounds and integrality of every value.
class DesignVector {
public:
    DesignVector() = default;
    /// Throws SeedDimensionError on a length mismatch, BoundsError on an
    /// out-of-bound or non-integral value.
    DesignVector(std::span<const DesignVariable> variables, std::vector<double> values);

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

    friend bool operator==(const DesignVector&, const DesignVector&) = default;

private:
    std::vector<double> values_;
};

/// Clips each value into its bounds and rounds integer variables. Returns
/// the adjusted values and one message per adjusted entry.
std::pair<std::vector<double>, std::vector<std::string>> repair_design(
    std::span<const DesignVariable> variables, std::vector<double> values);

/// Bilinear (or linear) interpolation over a tabulated 1-D or 2-D grid.
class TabulatedGrid {
public:
    /// `values` is row-major with the first axis as the slow index.
    TabulatedGrid(std::vector<std::vector<double>> axes, std::vector<double> values);

    std::size_t dimensions() const noexcept { return axes_.size(); }
    const std::vector<std::vector<double>>& axes() const noexcept { return axes_; }
    const std::vector<double>& values() const noexcept { return values_; }

    /// Throws OutOfHullError outside the axis ranges.
    double operator()(std::span<const double> point) const;

private:
    std::vector<std::vector<double>> axes_;
    std::vector<double> values_;
};

enum class PerformanceKind { variable, grid, hook };

struct PerformanceFunction {
    std::string name;
    PerformanceKind kind = PerformanceKind::variable;
    std::string hook;                  ///< hook name when kind == hook
    std::vector<std::size_t> inputs;   ///< variable indices
    HookFn evaluator;
};

struct Objective {
    std::string name;
    std::string hook;
    std::string unit;
    std::vector<std::size_t> inputs;   ///< performance-function indices
    HookFn evaluator;
};

enum class ConstraintKind { inequality, equality };

/// A reference into the evaluation graph: a performance function or an
/// objective.
struct ValueRef {
    enum class Source { performance, objective } source;
    std::size_t index;
};

struct Constraint {
    std::string name;
    ConstraintKind kind = ConstraintKind::inequality;
    std::string hook;
    std::vector<ValueRef> inputs;
    HookFn evaluator;
    double epsilon = 1e-6;    ///< equality half-width; |h| - epsilon <= 0
    double tolerance = 1e-9;  ///< feasible iff the (rewritten) value <= tolerance

    /// Raw hook output rewritten into `g <= 0` form.
    double rewrite(double raw) const noexcept;
};

/// One stakeholder-objective pair carrying a non-zero combined weight.
struct Criterion {
    std::size_t stakeholder;
    std::size_t objective;
    double weight;  ///< w'_{k,i}
    PreferenceCurve curve;
};

struct Stakeholder {
    std::string name;
    double weight;
};

struct ConstraintValue {
    std::string name;
    double value;  ///< in rewritten g <= 0 form
    bool feasible;
};

/// Complete evaluation of one design.
struct Evaluation {
    std::vector<ConstraintValue> constraints;
    bool feasible = true;
    double violation = 0.0;            ///< sum of max(0, g - tolerance)
    std::vector<double> objectives;    ///< empty when infeasible
    std::vector<double> preferences;   ///< empty when infeasible
};

class Problem {
public:
    const std::string& name() const noexcept { return name_; }
    const std::vector<DesignVariable>& variables() const noexcept { return variables_; }
    const ExogenousParams& exogenous() const noexcept { return exogenous_; }
    const std::vector<PerformanceFunction>& performance() const noexcept { return performance_; }
    const std::vector<Objective>& objectives() const noexcept { return objectives_; }
    const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
    const std::vector<Stakeholder>& stakeholders() const noexcept { return stakeholders_; }
    const std::vector<Criterion>& criteria() const noexcept { return criteria_; }
    const WeightSet& weights() const noexcept { return weights_; }
    const std::vector<double>& criterion_weights() const noexcept { return criterion_weights_; }
    /// Objective names listed under the document's `evaluation.sodo`, or
    /// every objective when absent.
    const std::vector<std::string>& comparison_objectives() const noexcept { return comparison_objectives_; }
    const Document& document() const noexcept { return document_; }

    std::size_t objective_index(const std::string& name) const;  ///< UnknownObjectiveError
    std::size_t variable_index(const std::string& name) const;   ///< SchemaError

    /// Criterion label "stakeholder/objective".
    std::string criterion_label(std::size_t criterion) const;

    DesignVector design(std::vector<double> values) const { return DesignVector(variables_, std::move(values)); }

private:
    friend Problem load_problem(const Document& document, const HookRegistry& hooks);

    std::string name_;
    std::vector<DesignVariable> variables_;
    ExogenousParams exogenous_;
    std::vector<PerformanceFunction> performance_;
    std::vector<Objective> objectives_;
    std::vector<Constraint> constraints_;
    std::vector<Stakeholder> stakeholders_;
    std::vector<Criterion> criteria_;
    WeightSet weights_;
    std::vector<double> criterion_weights_;
    std::vector<std::string> comparison_objectives_;
    Document document_;
};

/// Validates a problem document and binds its hooks. Throws SchemaError
/// (with the JSON pointer of the field), UnknownHookError or WeightError.
Problem load_problem(const Document& document, const HookRegistry& hooks);
Problem load_problem_file(const std::string& path, const HookRegistry& hooks);
Document read_document(const std::string& path);

std::vector<double> evaluate_performance(const Problem& problem, const DesignVector& x);
/// One value per objective in declaration order. Hook failures surface as
/// EvaluationError.
std::vector<double> evaluate_objectives(const Problem& problem, const DesignVector& x);
std::vector<ConstraintValue> evaluate_constraints(const Problem& problem, const DesignVector& x);
/// One score per criterion; curves clamp at their end knots.
std::vector<double> preference_vector(const Problem& problem, const DesignVector& x);
std::vector<double> preferences_from_objectives(const Problem& problem, std::span<const double> objectives);

/// Constraints first; objectives and preferences only when feasible.
Evaluation evaluate(const Problem& problem, const DesignVector& x);

}  // namespace odesys
