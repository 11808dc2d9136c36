#pragma once

/// @file rail.hpp
/// Transition zone of a rail level crossing. Design variables are the
/// sleeper spacing x1 (m) and the number of sleepers x2. Track force F and
/// acceleration a come from a tabulated dynamics grid; maintenance cost,
/// travel comfort and investment cost are computed from them.

#include <utility>
#include <vector>

#include "odesys/hooks.hpp"
#include "odesys/problem.hpp"

namespace odesys::rail {

struct NormalizationBounds {
    double force_min;
    double force_max;
    double accel_min;
    double accel_max;
};

struct DynamicsGrid {
    std::vector<double> spacing;           ///< x1 nodes, m
    std::vector<double> sleepers;          ///< x2 nodes
    std::vector<double> force;             ///< kN, row-major over (x1, x2)
    std::vector<double> acceleration;      ///< m/s^2, row-major over (x1, x2)
    NormalizationBounds bounds;
};

/// The bundled 9 x 12 surrogate: x1 in 0.30:0.05:0.70, x2 in 4..15, with
/// s = (x1 - 0.3) / 0.4 and c = (x2 - 4) / 11,
///   F = 70 + 130 (0.05 + 0.95 s^2)(1 - 0.15 c) - 8 c
///   a = 1.2 + 2.9 (0.04 + 0.96 s^2.5)(1 - 0.12 c) - 0.1 c
/// and normalization bounds F in [40, 240] kN, a in [0.4, 4.4] m/s^2.
DynamicsGrid synthetic_dynamics_grid();

double surrogate_force(double x1, double x2);
double surrogate_acceleration(double x1, double x2);

/// (F, a) at a design point; OutOfHullError outside the grid.
std::pair<double, double> interp_dynamics(const DynamicsGrid& grid, double x1, double x2);

inline constexpr double kMaintenanceScale = 15000.0;

/// sqrt(F_N^2 + a_N^2) * scale in euro per year. DegenerateBoundsError when a
/// normalization range is empty.
double o_maintenance(double force, double accel, const NormalizationBounds& bounds,
                     double scale = kMaintenanceScale);
/// 1 - a_N.
double o_comfort(double accel, const NormalizationBounds& bounds);
/// 1000 x2 - 350 x1 x2 euro.
double o_investment(double x1, double x2);

/// Adds rail.maintenance (F, a), rail.comfort (a) and rail.investment
/// (x1, x2). Normalization bounds come from the exogenous constants
/// force_min, force_max, accel_min and accel_max.
void register_hooks(HookRegistry& registry);

/// Problem document for the bundled case, grid included.
Document problem_document();

}  // namespace odesys::rail
