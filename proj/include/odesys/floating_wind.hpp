#pragma once

/// @file floating_wind.hpp
/// Installation of suction anchors for a floating wind farm. Design
/// variables are the number of small OCVs, large OCVs and barges (x1..x3)
/// and the anchor diameter x4 and length x5. A discrete event simulation
/// gives vessel busy times; an analytical suction-anchor model gives the
/// capacity utilization and steel mass.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "odesys/hooks.hpp"

namespace odesys::fw {

struct VesselSpec {
    std::string name;
    int capacity;                     ///< anchors per load
    double reload_days;
    double day_rate;                  ///< EUR/day
    double reassignment_probability;  ///< p_i
    double emission_rate;             ///< t/day
};

/// Small OCV, large OCV and barge in declaration order.
std::vector<VesselSpec> default_vessels();

inline constexpr int kAnchorCount = 108;

struct VesselRun {
    std::string name;
    std::size_t vessel_class;
    double busy_time = 0.0;  ///< completion of the last activity, days
    int installed = 0;
    int loads = 0;
};

struct DesEvent {
    double time;
    std::string vessel;
    std::string event;  ///< load, install, reload
    int anchors_remaining;  ///< anchors not yet installed after the event
};

struct DESResult {
    std::vector<VesselRun> vessels;
    std::vector<double> class_time;  ///< t_i: latest completion per class
    double project_duration = 0.0;
    std::vector<DesEvent> events;    ///< non-decreasing in time

    int installed() const;
    /// CSV with header time,vessel,event,anchors_remaining.
    std::string event_log_csv() const;
};

/// Every instance starts loaded at day 0 with its share of the pool, installs
/// one anchor per day and, while anchors remain unassigned, claims the next
/// batch and reloads. Simultaneous events resolve in declaration order
/// (small OCVs first, barges last). Throws NoVesselError for an empty fleet.
DESResult run_des(std::span<const int> counts, const std::vector<VesselSpec>& specs, int anchor_count = kAnchorCount);
DESResult run_des(int x1, int x2, int x3, const std::vector<VesselSpec>& specs = default_vessels(),
                  int anchor_count = kAnchorCount);

struct AnchorParams {
    double undrained_shear_strength = 60.0;  ///< s_u, kPa
    double effective_unit_weight = 9.0;      ///< gamma', kN/m^3 (carried, unused)
    double adhesion = 0.64;                  ///< alpha
    double chain_diameter = 0.240;           ///< d, m
    double chain_friction = 0.25;            ///< mu
    double bearing_coefficient = 2.5;        ///< AWB
    double padeye_depth_factor = 0.5;
    double mooring_load = 3800.0;            ///< F_a, kN
    double lateral_factor = 10.5;            ///< N_p
    double end_bearing_factor = 9.0;         ///< N_c
    double wall_thickness = 0.005;           ///< m
    double steel_weight = 78.5;              ///< W_steel multiplier
};

struct AnchorCapacity {
    double utilization;
    double theta;    ///< chain angle at the padeye, rad
    double tension;  ///< T_a at the padeye, kN
    double horizontal;
    double vertical;
    double lateral_capacity;
    double vertical_capacity;
    int iterations;
};

inline constexpr int kMaxAnchorIterations = 100;

/// Inverse-catenary fixed point for the padeye angle followed by an
/// elliptical H-V interaction. NonConvergenceError after 100 iterations.
AnchorCapacity anchor_capacity(double diameter, double length, const AnchorParams& params = {});
double anchor_resistance_utilization(double diameter, double length, const AnchorParams& params = {});

/// Steel mass in tonnes: shell plus lid times wall thickness times W_steel.
double anchor_mass(double diameter, double length, const AnchorParams& params = {});

struct CostParams {
    double per_anchor = 40000.0;  ///< EUR
    double per_tonne = 815.0;     ///< EUR/t
};

/// (per_tonne M_a + per_anchor) n_a + sum_i x_i t_i R_i.
double o_cost(std::span<const int> counts, std::span<const double> class_time, double anchor_mass,
              const std::vector<VesselSpec>& specs, int anchor_count = kAnchorCount, const CostParams& cost = {});
/// prod_i p_i^x_i.
double o_fleet(std::span<const int> counts, const std::vector<VesselSpec>& specs);
double o_fleet(int x1, int x2, int x3);
/// sum_i x_i E_i t_i.
double o_emissions(std::span<const int> counts, std::span<const double> class_time,
                   const std::vector<VesselSpec>& specs);
/// 1 - (x1 + x2 + x3).
double g1(double x1, double x2, double x3);

/// Reads vessels, anchor parameters and cost parameters from the `model`
/// section and the exogenous constants of a problem document, falling back
/// to the defaults.
std::vector<VesselSpec> vessels_from(const Document& model);
AnchorParams anchor_params_from(const Document& model, const ExogenousParams& exogenous);

/// Adds the fw.* hooks: project_duration, class_busy_time (params.vessel),
/// anchor_utilization, anchor_mass, installation_costs, fleet_utilisation,
/// emissions, min_vessels and anchor_capacity.
void register_hooks(HookRegistry& registry);

Document problem_document();

}  // namespace odesys::fw
