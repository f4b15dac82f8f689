#pragma once

#include "lub/geometry.hpp"
#include "lub/reynolds.hpp"
#include "lub/solver_config.hpp"
#include "lub/velocity.hpp"
#include "lub/viscosity.hpp"

#include <vector>

namespace lub {

struct OuterResult {
    PressureSolution pressure;
    VelocityField velocity;            // empty for classical/piezo
    std::vector<double> diff_history;  // ||p_k - p_{k-1}||_L2 between passes
    std::vector<double> iter_theta2;   // theta2 per outer pass
    std::vector<double> iter_p_max;    // p_max per outer pass
    double theta2 = 0.0;
    double p_max = 0.0;
    double mu_max = 0.0;               // mu(model, p_max) by construction
    double min_coefficient = 0.0;
    double wall_time_s = 0.0;
    int outer_iters = 0;
};

/// Three-step outer iteration coupling the pressure and velocity solves:
///  (a) find_theta2 with the velocity field of the previous pass (initially
///      u = 0, i.e. the standard piezoviscous problem),
///  (b) cross-film velocity solve at every pressure node in [-pi/2, theta2],
///      with dp/dx recovered from the nodal pressure gradient,
///  (c) rebuild the interpolating velocity field and repeat.
/// classical/piezo return after a single find_theta2 with an empty field.
/// Stops after cfg.outer_iterations or once the pressure change drops below
/// pressure_tol * p_max; three consecutive non-decreasing differences raise
/// DivergenceError.
OuterResult outer_solve(const CylinderPlaneGeometry& geom,
                        const Kinematics& kin,
                        const ViscosityModel& model,
                        ModelVariant variant,
                        const SolverConfig& cfg);

/// Step (b) in isolation: one velocity profile per node of the pressure
/// solution, run as a parallel map over stations (pure per-station solves,
/// so results are independent of the worker count).
VelocityField solve_velocity_field(const CylinderPlaneGeometry& geom,
                                   const Kinematics& kin,
                                   const ViscosityModel& model,
                                   const PressureSolution& pressure,
                                   const SolverConfig& cfg);

/// Profile at an arbitrary angle, rescaled to the local film thickness.
VelocityProfile interpolate_velocity(const VelocityField& field,
                                     const CylinderPlaneGeometry& geom,
                                     double theta);

} // namespace lub
