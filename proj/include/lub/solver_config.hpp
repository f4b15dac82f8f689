#pragma once

#include <stdexcept>
#include <string>

namespace lub {

/// Which velocity combination drives the Reynolds source term. The modified
/// equation carries (Uh - U0)/2, the classical one (Uh + U0)/2; per_variant
/// applies each as written, the other two force one convention for
/// sensitivity studies.
enum class RhsVelocitySum { per_variant, sum, difference };

struct SolverConfig {
    int n_theta = 10000;        // pressure elements on [-pi/2, theta2]
    int m_y = 50;               // velocity elements across the film
    int outer_iterations = 9;   // coupled pressure/velocity passes
    double pressure_tol = 1e-10;
    double velocity_tol = 1e-10;
    double theta2_tol = 1e-6;   // bisection bracket width [rad]
    double slope_tol = 1e-3;    // exit-slope magnitude [Pa/rad]
    int max_fixed_point = 400;
    double ellipticity_floor = 0.0;
    double relaxation = 1.0;    // fixed-point damping, (0, 1]
    int workers = 0;            // 0 = hardware concurrency
    RhsVelocitySum rhs_velocity_sum = RhsVelocitySum::per_variant;

    void validate() const {
        if (n_theta < 2 || m_y < 2)
            throw std::invalid_argument("solver: element counts must be >= 2");
        if (outer_iterations < 1 || max_fixed_point < 1)
            throw std::invalid_argument("solver: iteration counts must be >= 1");
        if (!(pressure_tol > 0.0) || !(velocity_tol > 0.0) ||
            !(theta2_tol > 0.0) || !(slope_tol > 0.0))
            throw std::invalid_argument("solver: tolerances must be positive");
        if (!(relaxation > 0.0) || relaxation > 1.0)
            throw std::invalid_argument("solver: relaxation must be in (0, 1]");
        if (workers < 0)
            throw std::invalid_argument("solver: workers must be >= 0");
    }
};

} // namespace lub
