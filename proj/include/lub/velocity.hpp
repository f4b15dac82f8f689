#pragma once

#include "lub/fem1d.hpp"
#include "lub/geometry.hpp"

#include <vector>

namespace lub {

/// Cross-film velocity profile u(y) at a fixed angular station.
struct VelocityProfile {
    double theta = 0.0;   // station angle [rad]
    UniformMesh y_mesh;   // [0, h(theta)], M elements
    std::vector<double> u;  // nodal velocities [m/s]
};

/// Closed-form Couette-Poiseuille profile
///   u(y) = U0 + (Uh - U0) y/h + y(y - h)/(2 mu) dpdx,
/// sampled on a uniform y-mesh. Exact solution of the linear (alpha = 0)
/// cross-film problem.
VelocityProfile couette_poiseuille(double h, double mu, double dpdx,
                                   const Kinematics& kin, int m_elems,
                                   double theta = 0.0);

/// Solves the nonlinear cross-film problem
///   mu u'' + alpha^2 mu^2 dpdx (u')^2 = dpdx,  u(0) = U0, u(h) = Uh,
/// by fixed-point iteration: the (u')^2 factor is lagged from the previous
/// iterate and each linear problem is solved with P1 elements. The initial
/// iterate is the alpha = 0 closed form. Stops when the L2 difference of
/// successive iterates drops below tol * max(1, ||u||); throws
/// NonConvergenceError after max_iter (the regime where shear stress times
/// alpha is of order one).
VelocityProfile solve_velocity_profile(double mu_local, double alpha,
                                       double dpdx, double h,
                                       const Kinematics& kin, int m_elems,
                                       double tol, int max_iter,
                                       double theta = 0.0);

struct BackflowInfo {
    bool present = false;
    double y_extent = 0.0;  // largest y with u < 0 [m]
};

BackflowInfo detect_backflow(const VelocityProfile& profile);

/// Ordered family of velocity profiles at the pressure-mesh stations, queried
/// by linear interpolation in theta. Profiles are blended in the normalized
/// coordinate y/h so Dirichlet data survives interpolation between stations
/// with different film thicknesses.
struct VelocityField {
    std::vector<double> stations;          // strictly increasing theta values
    std::vector<VelocityProfile> profiles; // one per station, equal node counts

    bool empty() const { return stations.empty(); }

    /// Profile at theta rescaled to [0, h_target]; throws std::out_of_range
    /// outside [stations.front(), stations.back()].
    VelocityProfile interpolate(double theta, double h_target) const;

    /// Shear integral I = int_0^h y(h - y) (du/dy)^2 dy for the interpolated
    /// profile, each element integrated by the exact antiderivative of the
    /// quadratic weight. Returns 0 outside the station range (zero-gradient
    /// extension used when theta2 grows between outer iterations).
    double shear_integral(double theta, double h_target) const;
};

} // namespace lub
