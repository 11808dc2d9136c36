#include "odesys/floating_wind.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>

#include "odesys/error.hpp"
#include "odesys/io.hpp"

namespace odesys::fw {

std::vector<VesselSpec> default_vessels() {
    return {
        {"small_ocv", 8, 1.5, 47000.0, 0.7, 30.0},
        {"large_ocv", 12, 2.0, 55000.0, 0.8, 40.0},
        {"barge", 16, 2.5, 35000.0, 0.5, 35.0},
    };
}

// ---------------------------------------------------------------------------
// Discrete event simulation

int DESResult::installed() const {
    int n = 0;
    for (const auto& v : vessels) n += v.installed;
    return n;
}

std::string DESResult::event_log_csv() const {
    std::vector<std::vector<std::string>> lines{{"time", "vessel", "event", "anchors_remaining"}};
    for (const auto& e : events) {
        lines.push_back({format_number(e.time), e.vessel, e.event, std::to_string(e.anchors_remaining)});
    }
    return to_csv_text(lines);
}

DESResult run_des(std::span<const int> counts, const std::vector<VesselSpec>& specs, int anchor_count) {
    if (counts.size() != specs.size()) {
        throw ShapeError("fleet has " + std::to_string(counts.size()) + " counts for " +
                         std::to_string(specs.size()) + " vessel classes");
    }
    DESResult r;
    r.class_time.assign(specs.size(), 0.0);
    for (std::size_t c = 0; c < specs.size(); ++c) {
        if (counts[c] < 0) throw BoundsError("negative vessel count for " + specs[c].name);
        for (int k = 0; k < counts[c]; ++k) {
            r.vessels.push_back({specs[c].name + "#" + std::to_string(k + 1), c});
        }
    }
    if (r.vessels.empty()) throw NoVesselError("at least one vessel is required");

    struct Raw {
        double time;
        std::size_t vessel;
        const char* event;
    };
    std::vector<Raw> raw;
    std::vector<int> hold(r.vessels.size(), 0);
    int pool = anchor_count;

    using Ready = std::pair<double, std::size_t>;
    std::priority_queue<Ready, std::vector<Ready>, std::greater<>> queue;
    for (std::size_t i = 0; i < r.vessels.size(); ++i) {
        hold[i] = std::min(specs[r.vessels[i].vessel_class].capacity, pool);
        pool -= hold[i];
        if (hold[i] > 0) {
            r.vessels[i].loads = 1;
            raw.push_back({0.0, i, "load"});
            queue.emplace(0.0, i);
        }
    }
    while (!queue.empty()) {
        const auto [start, i] = queue.top();
        queue.pop();
        auto& v = r.vessels[i];
        const auto& spec = specs[v.vessel_class];
        for (int k = 1; k <= hold[i]; ++k) raw.push_back({start + k, i, "install"});
        const double done = start + hold[i];
        v.installed += hold[i];
        v.busy_time = done;
        hold[i] = 0;
        if (pool > 0) {
            hold[i] = std::min(spec.capacity, pool);
            pool -= hold[i];
            ++v.loads;
            raw.push_back({done, i, "reload"});
            queue.emplace(done + spec.reload_days, i);
        }
    }

    std::stable_sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) { return a.time < b.time; });
    int remaining = anchor_count;
    r.events.reserve(raw.size());
    for (const auto& e : raw) {
        if (std::string_view(e.event) == "install") --remaining;
        r.events.push_back({e.time, r.vessels[e.vessel].name, e.event, remaining});
    }
    for (const auto& v : r.vessels) {
        r.class_time[v.vessel_class] = std::max(r.class_time[v.vessel_class], v.busy_time);
        r.project_duration = std::max(r.project_duration, v.busy_time);
    }
    return r;
}

DESResult run_des(int x1, int x2, int x3, const std::vector<VesselSpec>& specs, int anchor_count) {
    const int counts[] = {x1, x2, x3};
    return run_des(counts, specs, anchor_count);
}

// ---------------------------------------------------------------------------
// Suction anchor

AnchorCapacity anchor_capacity(double diameter, double length, const AnchorParams& p) {
    const double q = p.bearing_coefficient * p.chain_diameter * p.undrained_shear_strength;
    const double z = p.padeye_depth_factor * length;

    AnchorCapacity cap{};
    double theta = 0.0;
    bool converged = false;
    for (int it = 1; it <= kMaxAnchorIterations; ++it) {
        const double tension = p.mooring_load * std::exp(-p.chain_friction * theta);
        const double next = std::sqrt(2.0 * z * q / tension);
        cap.iterations = it;
        const double step = std::abs(next - theta);
        theta = next;
        if (step < 1e-6) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw NonConvergenceError("padeye angle did not converge within " +
                                  std::to_string(kMaxAnchorIterations) + " iterations");
    }
    cap.theta = theta;
    cap.tension = p.mooring_load * std::exp(-p.chain_friction * theta);
    cap.horizontal = cap.tension * std::cos(theta);
    cap.vertical = cap.tension * std::sin(theta);

    const double su = p.undrained_shear_strength;
    cap.lateral_capacity = p.lateral_factor * diameter * length * su;
    cap.vertical_capacity = p.adhesion * su * std::numbers::pi * diameter * length +
                            p.end_bearing_factor * su * std::numbers::pi / 4.0 * diameter * diameter;
    cap.utilization = std::hypot(cap.horizontal / cap.lateral_capacity, cap.vertical / cap.vertical_capacity);
    return cap;
}

double anchor_resistance_utilization(double diameter, double length, const AnchorParams& params) {
    return anchor_capacity(diameter, length, params).utilization;
}

double anchor_mass(double diameter, double length, const AnchorParams& p) {
    const double area = std::numbers::pi * length * diameter + std::numbers::pi / 4.0 * diameter * diameter;
    return area * p.wall_thickness * p.steel_weight;
}

// ---------------------------------------------------------------------------
// Objectives

double o_cost(std::span<const int> counts, std::span<const double> class_time, double mass,
              const std::vector<VesselSpec>& specs, int anchor_count, const CostParams& cost) {
    double vessels = 0.0;
    for (std::size_t c = 0; c < specs.size(); ++c) vessels += counts[c] * class_time[c] * specs[c].day_rate;
    return (cost.per_tonne * mass + cost.per_anchor) * anchor_count + vessels;
}

double o_fleet(std::span<const int> counts, const std::vector<VesselSpec>& specs) {
    double f = 1.0;
    for (std::size_t c = 0; c < specs.size(); ++c) f *= std::pow(specs[c].reassignment_probability, counts[c]);
    return f;
}

double o_fleet(int x1, int x2, int x3) {
    const int counts[] = {x1, x2, x3};
    return o_fleet(counts, default_vessels());
}

double o_emissions(std::span<const int> counts, std::span<const double> class_time,
                   const std::vector<VesselSpec>& specs) {
    double s = 0.0;
    for (std::size_t c = 0; c < specs.size(); ++c) s += counts[c] * specs[c].emission_rate * class_time[c];
    return s;
}

double g1(double x1, double x2, double x3) { return -(x1 + x2 + x3) + 1.0; }

// ---------------------------------------------------------------------------
// Document plumbing

namespace {

double field(const Document& obj, const char* key, double fallback, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number()) throw SchemaError(path + "/" + key, "expected a number");
    return v.get<double>();
}

CostParams cost_params_from(const Document& model) {
    CostParams c;
    if (model.contains("cost")) {
        const auto& d = model.at("cost");
        c.per_anchor = field(d, "per_anchor", c.per_anchor, "/model/cost");
        c.per_tonne = field(d, "per_tonne", c.per_tonne, "/model/cost");
    }
    return c;
}

int anchor_count_from(const ExogenousParams& y) {
    const double n = y.value_or("anchor_count", kAnchorCount);
    if (n < 0 || n != std::round(n)) throw SchemaError("/exogenous/anchor_count", "expected a non-negative integer");
    return static_cast<int>(n);
}

std::vector<int> counts_of(std::span<const double> in, std::size_t n) {
    std::vector<int> counts(n);
    for (std::size_t c = 0; c < n; ++c) counts[c] = static_cast<int>(std::lround(in[c]));
    return counts;
}

void expect_inputs(const HookBinding& b, std::size_t n, const std::string& what) {
    if (b.input_count != n) {
        throw SchemaError("/model", what + " expects " + std::to_string(n) + " inputs for " +
                                        "the declared vessel classes, got " + std::to_string(b.input_count));
    }
}

/// DES results shared by every hook bound from one registry entry.
class DesCache {
public:
    DesCache(std::vector<VesselSpec> specs, int anchors) : specs_(std::move(specs)), anchors_(anchors) {}

    DESResult get(const std::vector<int>& counts) {
        std::lock_guard lock(mutex_);
        auto it = cache_.find(counts);
        if (it == cache_.end()) it = cache_.emplace(counts, run_des(counts, specs_, anchors_)).first;
        return it->second;
    }

    const std::vector<VesselSpec>& specs() const { return specs_; }

private:
    std::vector<VesselSpec> specs_;
    int anchors_;
    std::mutex mutex_;
    std::map<std::vector<int>, DESResult> cache_;
};

}  // namespace

std::vector<VesselSpec> vessels_from(const Document& model) {
    if (!model.is_object() || !model.contains("vessels")) return default_vessels();
    const auto& list = model.at("vessels");
    if (!list.is_array() || list.empty()) throw SchemaError("/model/vessels", "expected a non-empty array");
    std::vector<VesselSpec> specs;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = "/model/vessels/" + std::to_string(i);
        const auto& v = list[i];
        if (!v.is_object() || !v.contains("name") || !v.at("name").is_string()) {
            throw SchemaError(path + "/name", "vessel name is required");
        }
        VesselSpec s;
        s.name = v.at("name").get<std::string>();
        const double cap = field(v, "capacity", 0.0, path);
        if (cap < 1 || cap != std::round(cap)) throw SchemaError(path + "/capacity", "expected an integer >= 1");
        s.capacity = static_cast<int>(cap);
        s.reload_days = field(v, "reload_days", -1.0, path);
        s.day_rate = field(v, "day_rate", -1.0, path);
        s.reassignment_probability = field(v, "reassignment_probability", -1.0, path);
        s.emission_rate = field(v, "emission_rate", -1.0, path);
        if (s.reload_days < 0) throw SchemaError(path + "/reload_days", "expected a non-negative number");
        if (s.day_rate < 0) throw SchemaError(path + "/day_rate", "expected a non-negative number");
        if (s.emission_rate < 0) throw SchemaError(path + "/emission_rate", "expected a non-negative number");
        if (!(s.reassignment_probability > 0 && s.reassignment_probability <= 1)) {
            throw SchemaError(path + "/reassignment_probability", "expected a value in (0, 1]");
        }
        specs.push_back(std::move(s));
    }
    return specs;
}

AnchorParams anchor_params_from(const Document& model, const ExogenousParams& y) {
    AnchorParams p;
    p.mooring_load = y.value_or("mooring_load", p.mooring_load);
    p.undrained_shear_strength = y.value_or("undrained_shear_strength", p.undrained_shear_strength);
    if (model.is_object() && model.contains("anchor")) {
        const auto& a = model.at("anchor");
        const std::string path = "/model/anchor";
        p.effective_unit_weight = field(a, "effective_unit_weight", p.effective_unit_weight, path);
        p.adhesion = field(a, "adhesion", p.adhesion, path);
        p.chain_diameter = field(a, "chain_diameter", p.chain_diameter, path);
        p.chain_friction = field(a, "chain_friction", p.chain_friction, path);
        p.bearing_coefficient = field(a, "bearing_coefficient", p.bearing_coefficient, path);
        p.padeye_depth_factor = field(a, "padeye_depth_factor", p.padeye_depth_factor, path);
        p.lateral_factor = field(a, "lateral_factor", p.lateral_factor, path);
        p.end_bearing_factor = field(a, "end_bearing_factor", p.end_bearing_factor, path);
        p.wall_thickness = field(a, "wall_thickness", p.wall_thickness, path);
        p.steel_weight = field(a, "steel_weight", p.steel_weight, path);
    }
    const double positive[] = {p.mooring_load, p.undrained_shear_strength, p.adhesion, p.chain_diameter,
                               p.bearing_coefficient, p.padeye_depth_factor, p.lateral_factor,
                               p.end_bearing_factor, p.steel_weight};
    for (double v : positive) {
        if (!(v > 0)) throw SchemaError("/model/anchor", "anchor parameters must be positive");
    }
    if (p.chain_friction < 0 || p.wall_thickness < 0) {
        throw SchemaError("/model/anchor", "chain friction and wall thickness must be non-negative");
    }
    return p;
}

void register_hooks(HookRegistry& r) {
    auto des_cache = [](const HookBinding& b) {
        return std::make_shared<DesCache>(vessels_from(b.model), anchor_count_from(b.exogenous));
    };

    r.add("fw.project_duration", [des_cache](const HookBinding& b) -> HookFn {
        auto cache = des_cache(b);
        const auto n = cache->specs().size();
        expect_inputs(b, n, "fw.project_duration");
        return [cache, n](std::span<const double> in) { return cache->get(counts_of(in, n)).project_duration; };
    });
    r.add("fw.class_busy_time", [des_cache](const HookBinding& b) -> HookFn {
        auto cache = des_cache(b);
        const auto n = cache->specs().size();
        expect_inputs(b, n, "fw.class_busy_time");
        if (!b.params.contains("vessel") || !b.params.at("vessel").is_string()) {
            throw SchemaError("/params/vessel", "fw.class_busy_time needs a vessel class name");
        }
        const auto name = b.params.at("vessel").get<std::string>();
        const auto& specs = cache->specs();
        auto it = std::find_if(specs.begin(), specs.end(), [&](const VesselSpec& s) { return s.name == name; });
        if (it == specs.end()) throw SchemaError("/params/vessel", "unknown vessel class '" + name + "'");
        const auto c = static_cast<std::size_t>(it - specs.begin());
        return [cache, n, c](std::span<const double> in) {
            const auto counts = counts_of(in, n);
            // An unused class has no busy time.
            if (counts[c] == 0) return 0.0;
            return cache->get(counts).class_time[c];
        };
    });
    r.add("fw.anchor_utilization", [](const HookBinding& b) -> HookFn {
        const auto p = anchor_params_from(b.model, b.exogenous);
        return [p](std::span<const double> in) { return anchor_resistance_utilization(in[0], in[1], p); };
    }, 2);
    r.add("fw.anchor_mass", [](const HookBinding& b) -> HookFn {
        const auto p = anchor_params_from(b.model, b.exogenous);
        return [p](std::span<const double> in) { return anchor_mass(in[0], in[1], p); };
    }, 2);
    r.add("fw.installation_costs", [](const HookBinding& b) -> HookFn {
        const auto specs = vessels_from(b.model);
        const auto cost = cost_params_from(b.model);
        const int anchors = anchor_count_from(b.exogenous);
        const auto n = specs.size();
        expect_inputs(b, 1 + 2 * n, "fw.installation_costs");
        return [=](std::span<const double> in) {
            return o_cost(counts_of(in.subspan(1), n), in.subspan(1 + n, n), in[0], specs, anchors, cost);
        };
    });
    r.add("fw.fleet_utilisation", [](const HookBinding& b) -> HookFn {
        const auto specs = vessels_from(b.model);
        const auto n = specs.size();
        expect_inputs(b, n, "fw.fleet_utilisation");
        return [=](std::span<const double> in) { return o_fleet(counts_of(in, n), specs); };
    });
    r.add("fw.emissions", [](const HookBinding& b) -> HookFn {
        const auto specs = vessels_from(b.model);
        const auto n = specs.size();
        expect_inputs(b, 2 * n, "fw.emissions");
        return [=](std::span<const double> in) { return o_emissions(counts_of(in, n), in.subspan(n, n), specs); };
    });
    r.add("fw.min_vessels", [](const HookBinding&) -> HookFn {
        return [](std::span<const double> in) {
            double total = 0.0;
            for (double v : in) total += v;
            return 1.0 - total;
        };
    });
    r.add("fw.anchor_capacity", [](const HookBinding&) -> HookFn {
        return [](std::span<const double> in) { return in[0] - 1.0; };
    }, 1);
}

Document problem_document() {
    const AnchorParams a;
    Document d = Document::object();
    d["name"] = "floating_wind";
    d["description"] = "Suction-anchor installation for a floating wind farm: vessel fleet and anchor geometry.";
    d["variables"] = Document::array({
        {{"name", "x1"}, {"kind", "integer"}, {"lower", 0}, {"upper", 3}, {"unit", "small OCVs"}},
        {{"name", "x2"}, {"kind", "integer"}, {"lower", 0}, {"upper", 2}, {"unit", "large OCVs"}},
        {{"name", "x3"}, {"kind", "integer"}, {"lower", 0}, {"upper", 2}, {"unit", "barges"}},
        {{"name", "x4"}, {"kind", "continuous"}, {"lower", 1.5}, {"upper", 4.0}, {"unit", "m"}},
        {{"name", "x5"}, {"kind", "continuous"}, {"lower", 2.0}, {"upper", 8.0}, {"unit", "m"}},
    });
    d["exogenous"] = {
        {"anchor_count", {{"value", kAnchorCount}, {"unit", "anchors"}}},
        {"mooring_load", {{"value", a.mooring_load}, {"unit", "kN"}}},
        {"undrained_shear_strength", {{"value", a.undrained_shear_strength}, {"unit", "kPa"}}},
    };
    Document vessels = Document::array();
    for (const auto& v : default_vessels()) {
        vessels.push_back({{"name", v.name},
                           {"capacity", v.capacity},
                           {"reload_days", v.reload_days},
                           {"day_rate", v.day_rate},
                           {"reassignment_probability", v.reassignment_probability},
                           {"emission_rate", v.emission_rate}});
    }
    d["model"] = {
        {"vessels", vessels},
        {"anchor",
         {{"effective_unit_weight", a.effective_unit_weight},
          {"adhesion", a.adhesion},
          {"chain_diameter", a.chain_diameter},
          {"chain_friction", a.chain_friction},
          {"bearing_coefficient", a.bearing_coefficient},
          {"padeye_depth_factor", a.padeye_depth_factor},
          {"lateral_factor", a.lateral_factor},
          {"end_bearing_factor", a.end_bearing_factor},
          {"wall_thickness", a.wall_thickness},
          {"steel_weight", a.steel_weight}}},
        {"cost", {{"per_anchor", CostParams{}.per_anchor}, {"per_tonne", CostParams{}.per_tonne}}},
    };
    const Document fleet = {"n_small", "n_large", "n_barge"};
    d["performance"] = Document::array({
        {{"name", "n_small"}, {"kind", "variable"}, {"variable", "x1"}},
        {{"name", "n_large"}, {"kind", "variable"}, {"variable", "x2"}},
        {{"name", "n_barge"}, {"kind", "variable"}, {"variable", "x3"}},
        {{"name", "duration"}, {"kind", "hook"}, {"hook", "fw.project_duration"}, {"inputs", {"x1", "x2", "x3"}}},
        {{"name", "t_small"}, {"kind", "hook"}, {"hook", "fw.class_busy_time"}, {"inputs", {"x1", "x2", "x3"}},
         {"params", {{"vessel", "small_ocv"}}}},
        {{"name", "t_large"}, {"kind", "hook"}, {"hook", "fw.class_busy_time"}, {"inputs", {"x1", "x2", "x3"}},
         {"params", {{"vessel", "large_ocv"}}}},
        {{"name", "t_barge"}, {"kind", "hook"}, {"hook", "fw.class_busy_time"}, {"inputs", {"x1", "x2", "x3"}},
         {"params", {{"vessel", "barge"}}}},
        {{"name", "utilization"}, {"kind", "hook"}, {"hook", "fw.anchor_utilization"}, {"inputs", {"x4", "x5"}}},
        {{"name", "mass"}, {"kind", "hook"}, {"hook", "fw.anchor_mass"}, {"inputs", {"x4", "x5"}}},
    });
    d["objectives"] = Document::array({
        {{"name", "project_duration"}, {"hook", "identity"}, {"inputs", {"duration"}}, {"unit", "days"}},
        {{"name", "installation_costs"}, {"hook", "fw.installation_costs"},
         {"inputs", {"mass", "n_small", "n_large", "n_barge", "t_small", "t_large", "t_barge"}}, {"unit", "EUR"}},
        {{"name", "fleet_utilisation"}, {"hook", "fw.fleet_utilisation"}, {"inputs", fleet}, {"unit", "-"}},
        {{"name", "emissions"}, {"hook", "fw.emissions"},
         {"inputs", {"n_small", "n_large", "n_barge", "t_small", "t_large", "t_barge"}}, {"unit", "t"}},
    });
    d["constraints"] = Document::array({
        {{"name", "min_vessels"}, {"kind", "inequality"}, {"hook", "fw.min_vessels"}, {"inputs", fleet}},
        {{"name", "anchor_capacity"}, {"kind", "inequality"}, {"hook", "fw.anchor_capacity"},
         {"inputs", {"utilization"}}},
    });
    auto curve = [](std::initializer_list<std::pair<double, double>> knots) {
        Document c = Document::array();
        for (const auto& [o, p] : knots) c.push_back({o, p});
        return c;
    };
    d["stakeholders"] = Document::array({
        {{"name", "developer"}, {"weight", 0.5},
         {"objectives",
          {{"project_duration", {{"weight", 0.6}, {"curve", curve({{20, 100}, {60, 75}, {130, 0}})}}},
           {"emissions", {{"weight", 0.4}, {"curve", curve({{3700, 100}, {4100, 80}, {5000, 20}, {5500, 0}})}}}}}},
        {{"name", "contractor"}, {"weight", 0.5},
         {"objectives",
          {{"installation_costs",
            {{"weight", 0.7}, {"curve", curve({{9.2e6, 100}, {9.4e6, 85}, {10.0e6, 60}, {11.5e6, 0}})}}},
           {"fleet_utilisation", {{"weight", 0.3}, {"curve", curve({{0.0, 100}, {0.3, 85}, {1.0, 0}})}}}}}},
    });
    d["evaluation"] = {{"sodo", {"installation_costs"}}};
    return d;
}

}  // namespace odesys::fw
