#include "odesys/rail.hpp"

#include <cmath>

#include "odesys/error.hpp"

namespace odesys::rail {

namespace {

double normalize(double v, double lo, double hi, const char* what) {
    if (!(hi > lo)) throw DegenerateBoundsError(std::string(what) + " normalization range is empty");
    return (v - lo) / (hi - lo);
}

NormalizationBounds bounds_from(const ExogenousParams& y) {
    return {y.at("force_min"), y.at("force_max"), y.at("accel_min"), y.at("accel_max")};
}

}  // namespace

double surrogate_force(double x1, double x2) {
    const double s = (x1 - 0.3) / 0.4;
    const double c = (x2 - 4.0) / 11.0;
    return 70.0 + 130.0 * (0.05 + 0.95 * s * s) * (1.0 - 0.15 * c) - 8.0 * c;
}

double surrogate_acceleration(double x1, double x2) {
    const double s = (x1 - 0.3) / 0.4;
    const double c = (x2 - 4.0) / 11.0;
    return 1.2 + 2.9 * (0.04 + 0.96 * std::pow(s, 2.5)) * (1.0 - 0.12 * c) - 0.1 * c;
}

DynamicsGrid synthetic_dynamics_grid() {
    DynamicsGrid g;
    for (int k = 0; k <= 8; ++k) g.spacing.push_back(static_cast<double>(30 + 5 * k) / 100.0);
    for (int n = 4; n <= 15; ++n) g.sleepers.push_back(n);
    for (double x1 : g.spacing) {
        for (double x2 : g.sleepers) {
            g.force.push_back(surrogate_force(x1, x2));
            g.acceleration.push_back(surrogate_acceleration(x1, x2));
        }
    }
    g.bounds = {40.0, 240.0, 0.4, 4.4};
    return g;
}

std::pair<double, double> interp_dynamics(const DynamicsGrid& grid, double x1, double x2) {
    const TabulatedGrid f({grid.spacing, grid.sleepers}, grid.force);
    const TabulatedGrid a({grid.spacing, grid.sleepers}, grid.acceleration);
    const double point[] = {x1, x2};
    return {f(point), a(point)};
}

double o_maintenance(double force, double accel, const NormalizationBounds& b, double scale) {
    const double fn = normalize(force, b.force_min, b.force_max, "force");
    const double an = normalize(accel, b.accel_min, b.accel_max, "acceleration");
    return std::sqrt(fn * fn + an * an) * scale;
}

double o_comfort(double accel, const NormalizationBounds& b) {
    return 1.0 - normalize(accel, b.accel_min, b.accel_max, "acceleration");
}

double o_investment(double x1, double x2) { return 1000.0 * x2 - 350.0 * x1 * x2; }

void register_hooks(HookRegistry& r) {
    r.add("rail.maintenance", [](const HookBinding& b) -> HookFn {
        const auto bounds = bounds_from(b.exogenous);
        const double scale = b.exogenous.value_or("maintenance_scale", kMaintenanceScale);
        normalize(0.0, bounds.force_min, bounds.force_max, "force");
        normalize(0.0, bounds.accel_min, bounds.accel_max, "acceleration");
        return [=](std::span<const double> in) { return o_maintenance(in[0], in[1], bounds, scale); };
    }, 2);
    r.add("rail.comfort", [](const HookBinding& b) -> HookFn {
        const auto bounds = bounds_from(b.exogenous);
        normalize(0.0, bounds.accel_min, bounds.accel_max, "acceleration");
        return [=](std::span<const double> in) { return o_comfort(in[0], bounds); };
    }, 1);
    r.add("rail.investment", [](const HookBinding&) -> HookFn {
        return [](std::span<const double> in) { return o_investment(in[0], in[1]); };
    }, 2);
}

Document problem_document() {
    const auto grid = synthetic_dynamics_grid();
    Document d = Document::object();
    d["name"] = "rail_crossing";
    d["description"] = "Transition zone of a rail level crossing: sleeper spacing and sleeper count.";
    d["variables"] = Document::array({
        {{"name", "x1"}, {"kind", "continuous"}, {"lower", 0.3}, {"upper", 0.7}, {"unit", "m"}},
        {{"name", "x2"}, {"kind", "integer"}, {"lower", 4}, {"upper", 15}, {"unit", "sleepers"}},
    });
    d["exogenous"] = {
        {"force_min", {{"value", grid.bounds.force_min}, {"unit", "kN"}}},
        {"force_max", {{"value", grid.bounds.force_max}, {"unit", "kN"}}},
        {"accel_min", {{"value", grid.bounds.accel_min}, {"unit", "m/s2"}}},
        {"accel_max", {{"value", grid.bounds.accel_max}, {"unit", "m/s2"}}},
        {"maintenance_scale", {{"value", kMaintenanceScale}, {"unit", "EUR/year"}}},
    };
    Document axes = Document::array({grid.spacing, grid.sleepers});
    d["performance"] = Document::array({
        {{"name", "spacing"}, {"kind", "variable"}, {"variable", "x1"}},
        {{"name", "sleepers"}, {"kind", "variable"}, {"variable", "x2"}},
        {{"name", "force"}, {"kind", "grid"}, {"inputs", {"x1", "x2"}},
         {"grid", {{"axes", axes}, {"values", grid.force}}}},
        {{"name", "acceleration"}, {"kind", "grid"}, {"inputs", {"x1", "x2"}},
         {"grid", {{"axes", axes}, {"values", grid.acceleration}}}},
    });
    d["objectives"] = Document::array({
        {{"name", "maintenance_costs"}, {"hook", "rail.maintenance"}, {"inputs", {"force", "acceleration"}},
         {"unit", "EUR/year"}},
        {{"name", "travel_comfort"}, {"hook", "rail.comfort"}, {"inputs", {"acceleration"}}, {"unit", "-"}},
        {{"name", "investment_costs"}, {"hook", "rail.investment"}, {"inputs", {"spacing", "sleepers"}},
         {"unit", "EUR"}},
    });
    d["constraints"] = Document::array();
    auto curve = [](std::initializer_list<std::pair<double, double>> knots) {
        Document c = Document::array();
        for (const auto& [o, p] : knots) c.push_back({o, p});
        return c;
    };
    d["stakeholders"] = Document::array({
        {{"name", "maintenance"}, {"weight", 0.4},
         {"objectives", {{"maintenance_costs", {{"weight", 1.0},
                                                {"curve", curve({{4800, 100}, {12000, 30}, {20000, 0}})}}}}}},
        {{"name", "passengers"}, {"weight", 0.4},
         {"objectives", {{"travel_comfort", {{"weight", 1.0},
                                             {"curve", curve({{0.0, 0}, {0.45, 50}, {0.74, 100}})}}}}}},
        {{"name", "owner"}, {"weight", 0.2},
         {"objectives", {{"investment_costs", {{"weight", 1.0},
                                               {"curve", curve({{3020, 100}, {3500, 80}, {5000, 40}, {9000, 0}})}}}}}},
    });
    d["evaluation"] = {{"sodo", {"maintenance_costs", "travel_comfort", "investment_costs"}}};
    return d;
}

}  // namespace odesys::rail
