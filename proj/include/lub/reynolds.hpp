#pragma once

#include "lub/fem1d.hpp"
#include "lub/geometry.hpp"
#include "lub/solver_config.hpp"
#include "lub/velocity.hpp"
#include "lub/viscosity.hpp"

#include <span>
#include <string>

namespace lub {

enum class ModelVariant { classical, piezo, modified };

ModelVariant variant_from_string(const std::string& s);
std::string variant_to_string(ModelVariant v);

struct PressureSolution {
    UniformMesh mesh;            // [-pi/2, theta2]
    std::vector<double> p;       // nodal pressures [Pa]
    double theta2 = 0.0;         // free exit angle [rad]
    ModelVariant variant = ModelVariant::classical;
    double min_coefficient = 0.0;  // smallest assembled h^3/(12 mu) - a^2 mu I
    int fixed_point_iters = 0;

    double p_max() const;
    NodalField field() const { return NodalField(mesh, p); }
};

/// Diffusion coefficient of the modified Reynolds equation,
///   h^3/(12 mu) - alpha^2 mu int_0^h y(h-y) (du/dy)^2 dy,
/// with the shear integral taken element-exactly over the given profile.
/// Non-positive values are legal outputs; check_ellipticity guards them.
double modified_coefficient(double h, double mu_local, double alpha,
                            const VelocityProfile& profile);

/// Returns the minimum assembled midpoint coefficient; throws
/// EllipticityError when it falls to floor_value or below (the regime where
/// shear stress times alpha reaches order one and the equation changes type).
double check_ellipticity(std::span<const double> coefficients,
                         std::span<const double> thetas,
                         double floor_value);

/// One pressure solve on a fixed domain [-pi/2, theta2] with p = 0 pinned at
/// both ends. The exponential mu(p) nonlinearity is removed exactly by the
/// reduced-pressure transform (see ReducedPressureMap); the remaining
/// dependence of the shear-corrected coefficient on the iterate is handled
/// by damped Newton starting from p = 0. vel may be null (treated as u = 0).
PressureSolution solve_pressure_given_theta2(const CylinderPlaneGeometry& geom,
                                             const Kinematics& kin,
                                             const ViscosityModel& model,
                                             ModelVariant variant,
                                             double theta2,
                                             const VelocityField* vel,
                                             const SolverConfig& cfg);

/// Swift-Stieber free-boundary search: bisection on theta2 in (0, pi/2)
/// driving the exit slope dp/dtheta to zero. Throws BracketError if the
/// slope has the same sign at both initial bounds and ZeroEntrainmentError
/// when the source term vanishes identically.
PressureSolution find_theta2(const CylinderPlaneGeometry& geom,
                             const Kinematics& kin,
                             const ViscosityModel& model,
                             ModelVariant variant,
                             const VelocityField* vel,
                             const SolverConfig& cfg);

} // namespace lub
