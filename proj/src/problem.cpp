#include "odesys/problem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "odesys/error.hpp"

namespace odesys {

// ---------------------------------------------------------------------------
// DesignVector

DesignVector::DesignVector(std::span<const DesignVariable> variables, std::vector<double> values)
    : values_(std::move(values)) {
    if (values_.size() != variables.size()) {
        throw SeedDimensionError("design vector has " + std::to_string(values_.size()) +
                                 " values for " + std::to_string(variables.size()) + " variables");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const auto& v = variables[i];
        const double x = values_[i];
        if (!std::isfinite(x) || x < v.lower || x > v.upper) {
            std::ostringstream msg;
            msg << "variable '" << v.name << "' = " << x << " outside [" << v.lower << ", " << v.upper << "]";
            throw BoundsError(msg.str());
        }
        if (v.is_integer() && x != std::round(x)) {
            std::ostringstream msg;
            msg << "integer variable '" << v.name << "' = " << x << " is not integral";
            throw BoundsError(msg.str());
        }
    }
}

std::pair<std::vector<double>, std::vector<std::string>> repair_design(
    std::span<const DesignVariable> variables, std::vector<double> values) {
    if (values.size() != variables.size()) {
        throw SeedDimensionError("seed has " + std::to_string(values.size()) + " values for " +
                                 std::to_string(variables.size()) + " variables");
    }
    std::vector<std::string> notes;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto& v = variables[i];
        double x = values[i];
        if (std::isnan(x)) {
            throw BoundsError("seed value for '" + v.name + "' is NaN");
        }
        double fixed = std::clamp(x, v.lower, v.upper);
        if (v.is_integer()) fixed = std::clamp(std::round(fixed), v.lower, v.upper);
        if (fixed != x) {
            std::ostringstream msg;
            msg << "seed value " << x << " for '" << v.name << "' adjusted to " << fixed;
            notes.push_back(msg.str());
            values[i] = fixed;
        }
    }
    return {std::move(values), std::move(notes)};
}

// ---------------------------------------------------------------------------
// TabulatedGrid

TabulatedGrid::TabulatedGrid(std::vector<std::vector<double>> axes, std::vector<double> values)
    : axes_(std::move(axes)), values_(std::move(values)) {
    if (axes_.empty() || axes_.size() > 2) {
        throw ShapeError("tabulated grids support one or two axes");
    }
    std::size_t expected = 1;
    for (std::size_t a = 0; a < axes_.size(); ++a) {
        const auto& axis = axes_[a];
        if (axis.size() < 2) throw ShapeError("grid axis " + std::to_string(a) + " needs two or more nodes");
        for (std::size_t i = 1; i < axis.size(); ++i) {
            if (!(axis[i] > axis[i - 1])) {
                throw ShapeError("grid axis " + std::to_string(a) + " must be strictly increasing");
            }
        }
        expected *= axis.size();
    }
    if (values_.size() != expected) {
        throw ShapeError("grid has " + std::to_string(values_.size()) + " values, expected " +
                         std::to_string(expected));
    }
}

namespace {

// Bracketing cell and fractional position along one axis.
std::pair<std::size_t, double> locate(const std::vector<double>& axis, double x, std::size_t dim) {
    if (!(x >= axis.front() && x <= axis.back())) {
        std::ostringstream msg;
        msg << "query " << x << " outside grid axis " << dim << " [" << axis.front() << ", " << axis.back() << "]";
        throw OutOfHullError(msg.str());
    }
    auto hi = std::upper_bound(axis.begin(), axis.end(), x);
    std::size_t i = hi == axis.end() ? axis.size() - 2
                                     : static_cast<std::size_t>(hi - axis.begin()) - 1;
    i = std::min(i, axis.size() - 2);
    const double t = (x - axis[i]) / (axis[i + 1] - axis[i]);
    return {i, t};
}

}  // namespace

double TabulatedGrid::operator()(std::span<const double> point) const {
    if (point.size() != axes_.size()) {
        throw ShapeError("grid query has " + std::to_string(point.size()) + " coordinates");
    }
    const auto [i, t] = locate(axes_[0], point[0], 0);
    if (axes_.size() == 1) {
        if (t == 0.0) return values_[i];
        return values_[i] * (1.0 - t) + values_[i + 1] * t;
    }
    const auto [j, s] = locate(axes_[1], point[1], 1);
    const std::size_t n1 = axes_[1].size();
    auto at = [&](std::size_t a, std::size_t b) { return values_[a * n1 + b]; };
    // Exact node hits return stored values untouched.
    auto along_second = [&](std::size_t a) {
        if (s == 0.0) return at(a, j);
        return at(a, j) * (1.0 - s) + at(a, j + 1) * s;
    };
    if (t == 0.0) return along_second(i);
    return along_second(i) * (1.0 - t) + along_second(i + 1) * t;
}

// ---------------------------------------------------------------------------
// Constraint

double Constraint::rewrite(double raw) const noexcept {
    return kind == ConstraintKind::equality ? std::abs(raw) - epsilon : raw;
}

// ---------------------------------------------------------------------------
// Problem accessors

std::size_t Problem::objective_index(const std::string& name) const {
    for (std::size_t i = 0; i < objectives_.size(); ++i) {
        if (objectives_[i].name == name) return i;
    }
    throw UnknownObjectiveError("no objective named '" + name + "'");
}

std::size_t Problem::variable_index(const std::string& name) const {
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (variables_[i].name == name) return i;
    }
    throw SchemaError("/variables", "no variable named '" + name + "'");
}

std::string Problem::criterion_label(std::size_t c) const {
    const auto& cr = criteria_.at(c);
    return stakeholders_[cr.stakeholder].name + "/" + objectives_[cr.objective].name;
}

// ---------------------------------------------------------------------------
// Loading

namespace {

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

const Document& require(const Document& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw SchemaError(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(child(path, key), "required field is missing");
    return *it;
}

std::string require_string(const Document& obj, const std::string& key, const std::string& path) {
    const auto& v = require(obj, key, path);
    if (!v.is_string()) throw SchemaError(child(path, key), "expected a string");
    auto s = v.get<std::string>();
    if (s.empty()) throw SchemaError(child(path, key), "must not be empty");
    return s;
}

double as_number(const Document& v, const std::string& path) {
    if (!v.is_number()) throw SchemaError(path, "expected a number");
    double d = v.get<double>();
    if (!std::isfinite(d)) throw SchemaError(path, "expected a finite number");
    return d;
}

double require_number(const Document& obj, const std::string& key, const std::string& path) {
    return as_number(require(obj, key, path), child(path, key));
}

std::optional<double> optional_number(const Document& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) return std::nullopt;
    return as_number(*it, child(path, key));
}

const Document& require_array(const Document& obj, const std::string& key, const std::string& path,
                              bool non_empty) {
    const auto& v = require(obj, key, path);
    if (!v.is_array()) throw SchemaError(child(path, key), "expected an array");
    if (non_empty && v.empty()) throw SchemaError(child(path, key), "must not be empty");
    return v;
}

std::vector<std::string> string_list(const Document& obj, const std::string& key, const std::string& path) {
    const auto& arr = require_array(obj, key, path, true);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_string()) throw SchemaError(child(child(path, key), i), "expected a string");
        out.push_back(arr[i].get<std::string>());
    }
    return out;
}

std::vector<double> number_list(const Document& arr, const std::string& path) {
    if (!arr.is_array()) throw SchemaError(path, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(as_number(arr[i], child(path, i)));
    return out;
}

const Document& empty_object() {
    static const Document empty = Document::object();
    return empty;
}

const Document& optional_params(const Document& entry, const std::string& path) {
    auto it = entry.find("params");
    if (it == entry.end()) return empty_object();
    if (!it->is_object()) throw SchemaError(child(path, "params"), "expected an object");
    return *it;
}

HookFn bind_hook(const HookRegistry& hooks, const std::string& hook, std::size_t inputs,
                 const HookBinding& binding, const std::string& path) {
    if (!hooks.contains(hook)) {
        throw UnknownHookError(path + ": no hook registered as '" + hook + "'");
    }
    if (auto arity = hooks.arity(hook); arity && *arity != inputs) {
        throw SchemaError(child(path, "inputs"), "hook '" + hook + "' takes " + std::to_string(*arity) +
                                                     " inputs, got " + std::to_string(inputs));
    }
    return hooks.bind(hook, binding);
}

PreferenceCurve parse_curve(const Document& v, const std::string& path) {
    if (!v.is_array()) throw SchemaError(path, "expected an array of [objective, score] pairs");
    std::vector<CurveKnot> knots;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& knot = v[i];
        if (!knot.is_array() || knot.size() != 2) {
            throw SchemaError(child(path, i), "expected an [objective, score] pair");
        }
        knots.push_back({as_number(knot[0], child(child(path, i), 0)),
                         as_number(knot[1], child(child(path, i), 1))});
    }
    try {
        return PreferenceCurve(std::move(knots));
    } catch (const CurveError& e) {
        throw SchemaError(path, e.what());
    }
}

}  // namespace

Problem load_problem(const Document& doc, const HookRegistry& hooks) {
    if (!doc.is_object()) throw SchemaError("", "problem document must be a JSON object");

    Problem p;
    p.document_ = doc;
    if (auto it = doc.find("name"); it != doc.end()) {
        if (!it->is_string()) throw SchemaError("/name", "expected a string");
        p.name_ = it->get<std::string>();
    }

    // variables
    const auto& vars = require_array(doc, "variables", "", true);
    std::set<std::string> var_names;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        const std::string path = child("/variables", i);
        DesignVariable v;
        v.name = require_string(vars[i], "name", path);
        if (!var_names.insert(v.name).second) throw SchemaError(child(path, "name"), "duplicate variable name");
        if (auto it = vars[i].find("kind"); it != vars[i].end()) {
            if (*it == "continuous") v.kind = VariableKind::continuous;
            else if (*it == "integer") v.kind = VariableKind::integer;
            else throw SchemaError(child(path, "kind"), "expected 'continuous' or 'integer'");
        }
        v.lower = require_number(vars[i], "lower", path);
        v.upper = require_number(vars[i], "upper", path);
        if (auto it = vars[i].find("unit"); it != vars[i].end() && it->is_string()) v.unit = it->get<std::string>();
        if (v.lower > v.upper) throw SchemaError(path, "lower bound exceeds upper bound");
        if (v.is_integer() && (v.lower != std::round(v.lower) || v.upper != std::round(v.upper))) {
            throw SchemaError(path, "integer variables need integral bounds");
        }
        p.variables_.push_back(std::move(v));
    }
    auto variable_ref = [&](const std::string& name, const std::string& path) {
        for (std::size_t i = 0; i < p.variables_.size(); ++i) {
            if (p.variables_[i].name == name) return i;
        }
        throw SchemaError(path, "unknown variable '" + name + "'");
    };

    // exogenous
    std::vector<std::pair<std::string, double>> exo;
    if (auto it = doc.find("exogenous"); it != doc.end()) {
        if (!it->is_object()) throw SchemaError("/exogenous", "expected an object");
        for (const auto& [key, value] : it->items()) {
            const std::string path = child("/exogenous", key);
            if (value.is_object()) exo.emplace_back(key, require_number(value, "value", path));
            else exo.emplace_back(key, as_number(value, path));
        }
    }
    p.exogenous_ = ExogenousParams(std::move(exo));

    const Document* model = &empty_object();
    if (auto it = doc.find("model"); it != doc.end()) {
        if (!it->is_object()) throw SchemaError("/model", "expected an object");
        model = &*it;
    }

    // performance functions
    std::set<std::string> value_names;
    const auto& perf = require_array(doc, "performance", "", true);
    for (std::size_t i = 0; i < perf.size(); ++i) {
        const std::string path = child("/performance", i);
        const auto& e = perf[i];
        PerformanceFunction f;
        f.name = require_string(e, "name", path);
        if (!value_names.insert(f.name).second) throw SchemaError(child(path, "name"), "duplicate name");
        const std::string kind = require_string(e, "kind", path);
        if (kind == "variable") {
            f.kind = PerformanceKind::variable;
            const auto var = require_string(e, "variable", path);
            f.inputs = {variable_ref(var, child(path, "variable"))};
            f.evaluator = [](std::span<const double> in) { return in[0]; };
        } else if (kind == "grid") {
            f.kind = PerformanceKind::grid;
            const auto names = string_list(e, "inputs", path);
            for (std::size_t k = 0; k < names.size(); ++k) {
                f.inputs.push_back(variable_ref(names[k], child(child(path, "inputs"), k)));
            }
            const auto& g = require(e, "grid", path);
            const std::string gpath = child(path, "grid");
            const auto& axes_doc = require_array(g, "axes", gpath, true);
            std::vector<std::vector<double>> axes;
            for (std::size_t a = 0; a < axes_doc.size(); ++a) {
                axes.push_back(number_list(axes_doc[a], child(child(gpath, "axes"), a)));
            }
            if (axes.size() != f.inputs.size()) {
                throw SchemaError(gpath, "grid has " + std::to_string(axes.size()) + " axes for " +
                                             std::to_string(f.inputs.size()) + " inputs");
            }
            auto values = number_list(require(g, "values", gpath), child(gpath, "values"));
            std::shared_ptr<const TabulatedGrid> grid;
            try {
                grid = std::make_shared<const TabulatedGrid>(std::move(axes), std::move(values));
            } catch (const ShapeError& err) {
                throw SchemaError(gpath, err.what());
            }
            f.evaluator = [grid](std::span<const double> in) { return (*grid)(in); };
        } else if (kind == "hook") {
            f.kind = PerformanceKind::hook;
            f.hook = require_string(e, "hook", path);
            const auto names = string_list(e, "inputs", path);
            for (std::size_t k = 0; k < names.size(); ++k) {
                f.inputs.push_back(variable_ref(names[k], child(child(path, "inputs"), k)));
            }
            const HookBinding binding{*model, p.exogenous_, optional_params(e, path), f.inputs.size()};
            f.evaluator = bind_hook(hooks, f.hook, f.inputs.size(), binding, path);
        } else {
            throw SchemaError(child(path, "kind"), "expected 'variable', 'grid' or 'hook'");
        }
        p.performance_.push_back(std::move(f));
    }
    auto performance_ref = [&](const std::string& name) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < p.performance_.size(); ++i) {
            if (p.performance_[i].name == name) return i;
        }
        return std::nullopt;
    };

    // objectives
    const auto& objs = require_array(doc, "objectives", "", true);
    for (std::size_t i = 0; i < objs.size(); ++i) {
        const std::string path = child("/objectives", i);
        const auto& e = objs[i];
        Objective o;
        o.name = require_string(e, "name", path);
        if (!value_names.insert(o.name).second) throw SchemaError(child(path, "name"), "duplicate name");
        o.hook = require_string(e, "hook", path);
        if (auto it = e.find("unit"); it != e.end() && it->is_string()) o.unit = it->get<std::string>();
        const auto names = string_list(e, "inputs", path);
        for (std::size_t k = 0; k < names.size(); ++k) {
            auto ref = performance_ref(names[k]);
            if (!ref) {
                throw SchemaError(child(child(path, "inputs"), k),
                                  "objective input '" + names[k] + "' is not a declared performance function");
            }
            o.inputs.push_back(*ref);
        }
        const HookBinding binding{*model, p.exogenous_, optional_params(e, path), o.inputs.size()};
        o.evaluator = bind_hook(hooks, o.hook, o.inputs.size(), binding, path);
        p.objectives_.push_back(std::move(o));
    }

    // constraints
    if (auto it = doc.find("constraints"); it != doc.end()) {
        if (!it->is_array()) throw SchemaError("/constraints", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string path = child("/constraints", i);
            const auto& e = (*it)[i];
            Constraint c;
            c.name = require_string(e, "name", path);
            const auto kind = require_string(e, "kind", path);
            if (kind == "inequality") c.kind = ConstraintKind::inequality;
            else if (kind == "equality") c.kind = ConstraintKind::equality;
            else throw SchemaError(child(path, "kind"), "expected 'inequality' or 'equality'");
            c.hook = require_string(e, "hook", path);
            const auto names = string_list(e, "inputs", path);
            for (std::size_t k = 0; k < names.size(); ++k) {
                if (auto ref = performance_ref(names[k])) {
                    c.inputs.push_back({ValueRef::Source::performance, *ref});
                    continue;
                }
                auto obj = std::find_if(p.objectives_.begin(), p.objectives_.end(),
                                        [&](const Objective& o) { return o.name == names[k]; });
                if (obj == p.objectives_.end()) {
                    throw SchemaError(child(child(path, "inputs"), k),
                                      "unknown performance function or objective '" + names[k] + "'");
                }
                c.inputs.push_back({ValueRef::Source::objective,
                                    static_cast<std::size_t>(obj - p.objectives_.begin())});
            }
            if (auto eps = optional_number(e, "epsilon", path)) {
                if (*eps < 0.0) throw SchemaError(child(path, "epsilon"), "must be non-negative");
                c.epsilon = *eps;
            }
            if (auto tol = optional_number(e, "tolerance", path)) {
                if (*tol < 0.0) throw SchemaError(child(path, "tolerance"), "must be non-negative");
                c.tolerance = *tol;
            }
            const HookBinding binding{*model, p.exogenous_, optional_params(e, path), c.inputs.size()};
            c.evaluator = bind_hook(hooks, c.hook, c.inputs.size(), binding, path);
            p.constraints_.push_back(std::move(c));
        }
    }

    // stakeholders, weights and curves
    const auto& sh = require_array(doc, "stakeholders", "", true);
    const std::size_t n_obj = p.objectives_.size();
    std::vector<double> w_k;
    std::vector<std::vector<double>> w_ki(sh.size(), std::vector<double>(n_obj, 0.0));
    std::vector<std::vector<std::optional<PreferenceCurve>>> curves(
        sh.size(), std::vector<std::optional<PreferenceCurve>>(n_obj));
    std::set<std::string> stakeholder_names;
    for (std::size_t k = 0; k < sh.size(); ++k) {
        const std::string path = child("/stakeholders", k);
        Stakeholder s{require_string(sh[k], "name", path), require_number(sh[k], "weight", path)};
        if (!stakeholder_names.insert(s.name).second) throw SchemaError(child(path, "name"), "duplicate stakeholder");
        w_k.push_back(s.weight);
        const auto& prefs = require(sh[k], "objectives", path);
        const std::string ppath = child(path, "objectives");
        if (!prefs.is_object() || prefs.empty()) throw SchemaError(ppath, "expected a non-empty object");
        for (const auto& [obj_name, entry] : prefs.items()) {
            const std::string epath = child(ppath, obj_name);
            std::size_t i = 0;
            try {
                i = p.objective_index(obj_name);
            } catch (const UnknownObjectiveError&) {
                throw SchemaError(epath, "curve references unknown objective '" + obj_name + "'");
            }
            const double w = require_number(entry, "weight", epath);
            w_ki[k][i] = w;
            auto curve_it = entry.find("curve");
            if (curve_it != entry.end()) {
                curves[k][i] = parse_curve(*curve_it, child(epath, "curve"));
            } else if (w != 0.0) {
                throw SchemaError(child(epath, "curve"), "non-zero weight requires a preference curve");
            }
        }
        p.stakeholders_.push_back(std::move(s));
    }
    try {
        p.weights_ = combine_weights(w_k, w_ki);
    } catch (const NormalizationError& e) {
        throw WeightError(e.what());
    }
    for (const auto& [k, i] : p.weights_.criteria()) {
        p.criteria_.push_back(Criterion{k, i, p.weights_.combined(k, i), *curves[k][i]});
    }
    p.criterion_weights_ = p.weights_.criterion_weights();

    // comparison objectives
    if (auto it = doc.find("evaluation"); it != doc.end()) {
        if (!it->is_object()) throw SchemaError("/evaluation", "expected an object");
        if (it->contains("sodo")) {
            auto names = string_list(*it, "sodo", "/evaluation");
            for (std::size_t k = 0; k < names.size(); ++k) {
                try {
                    p.objective_index(names[k]);
                } catch (const UnknownObjectiveError&) {
                    throw SchemaError(child("/evaluation/sodo", k), "unknown objective '" + names[k] + "'");
                }
            }
            p.comparison_objectives_ = std::move(names);
        }
    }
    if (p.comparison_objectives_.empty()) {
        for (const auto& o : p.objectives_) p.comparison_objectives_.push_back(o.name);
    }
    return p;
}

Document read_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open problem file '" + path + "'");
    try {
        return Document::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("", std::string("invalid JSON: ") + e.what());
    }
}

Problem load_problem_file(const std::string& path, const HookRegistry& hooks) {
    return load_problem(read_document(path), hooks);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double call_hook(const HookFn& fn, std::span<const double> inputs, const std::string& what) {
    double v = 0.0;
    try {
        v = fn(inputs);
    } catch (const EvaluationError&) {
        throw;
    } catch (const std::exception& e) {
        throw EvaluationError(what + ": " + e.what());
    }
    if (std::isnan(v)) throw EvaluationError(what + " evaluated to NaN");
    return v;
}

/// Lazily evaluates the performance → objective graph for one design so
/// constraints can be checked without running every objective model.
class EvalSession {
public:
    EvalSession(const Problem& p, const DesignVector& x)
        : p_(p), x_(x), perf_(p.performance().size()), obj_(p.objectives().size()) {}

    double performance(std::size_t i) {
        if (!perf_[i]) {
            const auto& f = p_.performance()[i];
            std::vector<double> in;
            in.reserve(f.inputs.size());
            for (auto v : f.inputs) in.push_back(x_[v]);
            perf_[i] = call_hook(f.evaluator, in, "performance function '" + f.name + "'");
        }
        return *perf_[i];
    }

    double objective(std::size_t i) {
        if (!obj_[i]) {
            const auto& o = p_.objectives()[i];
            std::vector<double> in;
            in.reserve(o.inputs.size());
            for (auto f : o.inputs) in.push_back(performance(f));
            obj_[i] = call_hook(o.evaluator, in, "objective '" + o.name + "'");
        }
        return *obj_[i];
    }

    ConstraintValue constraint(std::size_t i) {
        const auto& c = p_.constraints()[i];
        std::vector<double> in;
        in.reserve(c.inputs.size());
        for (const auto& ref : c.inputs) {
            in.push_back(ref.source == ValueRef::Source::performance ? performance(ref.index)
                                                                     : objective(ref.index));
        }
        const double g = c.rewrite(call_hook(c.evaluator, in, "constraint '" + c.name + "'"));
        return {c.name, g, g <= c.tolerance};
    }

private:
    const Problem& p_;
    const DesignVector& x_;
    std::vector<std::optional<double>> perf_;
    std::vector<std::optional<double>> obj_;
};

void check_dimension(const Problem& p, const DesignVector& x) {
    if (x.size() != p.variables().size()) {
        throw SeedDimensionError("design vector has " + std::to_string(x.size()) + " values for " +
                                 std::to_string(p.variables().size()) + " variables");
    }
}

}  // namespace

std::vector<double> evaluate_performance(const Problem& problem, const DesignVector& x) {
    check_dimension(problem, x);
    EvalSession s(problem, x);
    std::vector<double> out;
    for (std::size_t i = 0; i < problem.performance().size(); ++i) out.push_back(s.performance(i));
    return out;
}

std::vector<double> evaluate_objectives(const Problem& problem, const DesignVector& x) {
    check_dimension(problem, x);
    EvalSession s(problem, x);
    std::vector<double> out;
    for (std::size_t i = 0; i < problem.objectives().size(); ++i) out.push_back(s.objective(i));
    return out;
}

std::vector<ConstraintValue> evaluate_constraints(const Problem& problem, const DesignVector& x) {
    check_dimension(problem, x);
    EvalSession s(problem, x);
    std::vector<ConstraintValue> out;
    for (std::size_t i = 0; i < problem.constraints().size(); ++i) out.push_back(s.constraint(i));
    return out;
}

std::vector<double> preferences_from_objectives(const Problem& problem, std::span<const double> objectives) {
    if (objectives.size() != problem.objectives().size()) {
        throw ShapeError("expected " + std::to_string(problem.objectives().size()) + " objective values");
    }
    std::vector<double> out;
    out.reserve(problem.criteria().size());
    for (const auto& c : problem.criteria()) out.push_back(c.curve(objectives[c.objective]).value());
    return out;
}

std::vector<double> preference_vector(const Problem& problem, const DesignVector& x) {
    return preferences_from_objectives(problem, evaluate_objectives(problem, x));
}

Evaluation evaluate(const Problem& problem, const DesignVector& x) {
    check_dimension(problem, x);
    EvalSession s(problem, x);
    Evaluation ev;
    for (std::size_t i = 0; i < problem.constraints().size(); ++i) {
        auto c = s.constraint(i);
        const double tol = problem.constraints()[i].tolerance;
        ev.violation += std::max(0.0, c.value - tol);
        ev.feasible = ev.feasible && c.feasible;
        ev.constraints.push_back(std::move(c));
    }
    if (!ev.feasible) return ev;
    for (std::size_t i = 0; i < problem.objectives().size(); ++i) ev.objectives.push_back(s.objective(i));
    ev.preferences = preferences_from_objectives(problem, ev.objectives);
    return ev;
}

}  // namespace odesys
