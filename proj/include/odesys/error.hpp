#pragma once

#include <stdexcept>
#include <string>

namespace odesys {

/// Base of every error the library raises. `code()` is a stable identifier
/// used by the CLI exit-code mapping and the HTTP error bodies.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define ODESYS_DEFINE_ERROR(Name, Base, Code)                        \
    class Name : public Base {                                       \
    public:                                                          \
        explicit Name(const std::string& message)                    \
            : Base(Code, message) {}                                 \
                                                                     \
    protected:                                                       \
        Name(std::string code, const std::string& message)           \
            : Base(std::move(code), message) {}                      \
    };

// Input validation.
ODESYS_DEFINE_ERROR(ValidationError, Error, "validation_error")
ODESYS_DEFINE_ERROR(CurveError, ValidationError, "curve_error")
ODESYS_DEFINE_ERROR(NormalizationError, ValidationError, "normalization_error")
ODESYS_DEFINE_ERROR(WeightError, NormalizationError, "weight_error")
ODESYS_DEFINE_ERROR(ShapeError, ValidationError, "shape_error")
ODESYS_DEFINE_ERROR(BoundsError, ValidationError, "bounds_error")
ODESYS_DEFINE_ERROR(ConfigError, ValidationError, "config_error")
ODESYS_DEFINE_ERROR(SeedDimensionError, ValidationError, "seed_dimension_error")
ODESYS_DEFINE_ERROR(UnknownHookError, ValidationError, "unknown_hook")
ODESYS_DEFINE_ERROR(UnknownObjectiveError, ValidationError, "unknown_objective")
ODESYS_DEFINE_ERROR(TooFewAlternativesError, ValidationError, "too_few_alternatives")
ODESYS_DEFINE_ERROR(GridTooLargeError, ValidationError, "grid_too_large")
ODESYS_DEFINE_ERROR(DegenerateBoundsError, ValidationError, "degenerate_bounds")

// Aggregation of fewer than two alternatives.
ODESYS_DEFINE_ERROR(DegenerateError, Error, "degenerate")

// Model evaluation failures.
ODESYS_DEFINE_ERROR(EvaluationError, Error, "evaluation_error")
ODESYS_DEFINE_ERROR(OutOfHullError, EvaluationError, "out_of_hull")
ODESYS_DEFINE_ERROR(NoVesselError, EvaluationError, "no_vessel")
ODESYS_DEFINE_ERROR(NonConvergenceError, EvaluationError, "non_convergence")

// Empty feasible set.
ODESYS_DEFINE_ERROR(NoFeasiblePointError, Error, "no_feasible_point")

#undef ODESYS_DEFINE_ERROR

/// Schema violations in a problem document carry the JSON pointer of the
/// offending field.
class SchemaError : public ValidationError {
public:
    SchemaError(std::string path, const std::string& message)
        : ValidationError("schema_error", path + ": " + message),
          path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace odesys
