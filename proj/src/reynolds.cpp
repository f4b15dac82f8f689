#include "lub/reynolds.hpp"
#include "lub/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

namespace lub {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
}

ModelVariant variant_from_string(const std::string& s) {
    if (s == "classical") return ModelVariant::classical;
    if (s == "piezo") return ModelVariant::piezo;
    if (s == "modified") return ModelVariant::modified;
    throw ConfigError("variant must be one of classical|piezo|modified, got '" + s + "'");
}

std::string variant_to_string(ModelVariant v) {
    switch (v) {
    case ModelVariant::classical: return "classical";
    case ModelVariant::piezo: return "piezo";
    case ModelVariant::modified: return "modified";
    }
    return "?";
}

double PressureSolution::p_max() const {
    return *std::max_element(p.begin(), p.end());
}

double modified_coefficient(double h, double mu_local, double alpha,
                            const VelocityProfile& profile) {
    const int ne = profile.y_mesh.n_elems;
    const double dy = profile.y_mesh.dx();
    const auto F = [h](double y) { return h * y * y / 2.0 - y * y * y / 3.0; };
    double integral = 0.0;
    for (int e = 0; e < ne; ++e) {
        const double g = (profile.u[e + 1] - profile.u[e]) / dy;
        integral += g * g * (F(profile.y_mesh.node(e + 1)) - F(profile.y_mesh.node(e)));
    }
    return h * h * h / (12.0 * mu_local) - alpha * alpha * mu_local * integral;
}

double check_ellipticity(std::span<const double> coefficients,
                         std::span<const double> thetas,
                         double floor_value) {
    double min_c = coefficients[0];
    double min_theta = thetas.empty() ? 0.0 : thetas[0];
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        if (coefficients[i] < min_c) {
            min_c = coefficients[i];
            if (i < thetas.size()) min_theta = thetas[i];
        }
    }
    if (min_c <= floor_value)
        throw EllipticityError(
            "modified Reynolds coefficient non-positive at theta = " +
                std::to_string(min_theta) + " (min " + std::to_string(min_c) +
                "); shear stress times alpha is of order one",
            min_c, min_theta);
    return min_c;
}

namespace {

// Source velocity factor per variant and override flag.
double source_velocity_factor(const Kinematics& kin, ModelVariant variant,
                              RhsVelocitySum mode) {
    switch (mode) {
    case RhsVelocitySum::sum: return kin.Uh + kin.U0;
    case RhsVelocitySum::difference: return kin.Uh - kin.U0;
    case RhsVelocitySum::per_variant:
        return variant == ModelVariant::modified ? kin.Uh - kin.U0
                                                 : kin.Uh + kin.U0;
    }
    return 0.0;
}

} // namespace

// The pressure equation is solved in the reduced pressure q(p), the
// Kirchhoff transform of the piezoviscous diffusion term, which turns the
// exponential mu(p) nonlinearity into a bounded algebraic one:
//   [h^3/(12 mu) - alpha^2 mu I] dp/dx = [h^3/(12 mu0) - alpha^2 mu0 s^2 I] dq/dx
// with s(q) = mu(p(q))/mu0. A lagged-viscosity iteration in p itself is a
// repelling fixed point once alpha p_max exceeds one (the regime of the
// target runs), so the remaining s^2 dependence is handled by damped Newton.
PressureSolution solve_pressure_given_theta2(const CylinderPlaneGeometry& geom,
                                             const Kinematics& kin,
                                             const ViscosityModel& model,
                                             ModelVariant variant,
                                             double theta2,
                                             const VelocityField* vel,
                                             const SolverConfig& cfg) {
    if (!(theta2 > -kHalfPi) || !(theta2 < kHalfPi))
        throw std::invalid_argument("solve_pressure_given_theta2: theta2 outside (-pi/2, pi/2)");

    const int ne = cfg.n_theta;
    const int nn = ne + 1;
    const UniformMesh mesh(-kHalfPi, theta2, ne);
    const double dx = mesh.dx();
    const double u_factor = source_velocity_factor(kin, variant, cfg.rhs_velocity_sum);

    // Geometry, source and (for the modified variant) the shear integral are
    // fixed over the Newton iteration; precompute them at midpoints.
    std::vector<double> theta_mid(ne), inv_dx_mid(ne), f_mid(ne);
    std::vector<double> D0(ne), C(ne);  // D_q(e) = D0 - C s^2
    const double alpha = model.alpha;
    for (int e = 0; e < ne; ++e) {
        const double th = mesh.midpoint(e);
        const double h = geom.film_thickness(th);
        theta_mid[e] = th;
        inv_dx_mid[e] = geom.dtheta_dx(th);
        f_mid[e] = 0.5 * u_factor * geom.dh_dtheta(th);
        D0[e] = h * h * h / (12.0 * model.mu0);
        C[e] = 0.0;
        if (variant == ModelVariant::modified && vel != nullptr && !vel->empty())
            C[e] = alpha * alpha * model.mu0 * vel->shear_integral(th, h);
    }

    const bool transform = variant != ModelVariant::classical;
    const ReducedPressureMap map(model);

    std::vector<double> q(nn, 0.0);  // pinned q = 0 at both ends
    std::vector<double> s(ne), dsdq(ne), K(ne), G(ne), D_phys(ne);
    std::vector<double> res(nn), lower(nn), diag(nn), upper(nn), delta(nn);

    const auto scale_at = [&](const std::vector<double>& qv) {
        for (int e = 0; e < ne; ++e) {
            if (!transform) {
                s[e] = 1.0;
                dsdq[e] = 0.0;
            } else {
                map.scale_and_slope(0.5 * (qv[e] + qv[e + 1]), s[e], dsdq[e]);
            }
        }
    };

    const auto residual_norm = [&](const std::vector<double>& qv) {
        // K must already correspond to qv (via scale_at)
        for (int e = 0; e < ne; ++e)
            K[e] = (D0[e] - C[e] * s[e] * s[e]) * inv_dx_mid[e] / dx;
        double acc = 0.0;
        for (int i = 1; i + 1 < nn; ++i) {
            res[i] = K[i - 1] * (qv[i] - qv[i - 1]) + K[i] * (qv[i] - qv[i + 1]) +
                     0.5 * dx * (f_mid[i - 1] + f_mid[i]);
            acc += res[i] * res[i];
        }
        return std::sqrt(acc * dx);
    };

    NodalField p_field(mesh, std::vector<double>(nn, 0.0));
    double min_coef = 0.0;
    int iters = 0;
    for (int k = 0; k < cfg.max_fixed_point; ++k) {
        ++iters;
        scale_at(q);

        // ellipticity is a property of the physical coefficient D_q / s
        for (int e = 0; e < ne; ++e)
            D_phys[e] = (D0[e] - C[e] * s[e] * s[e]) / s[e];
        min_coef = check_ellipticity(D_phys, theta_mid, cfg.ellipticity_floor);

        const double r0 = residual_norm(q);
        for (int e = 0; e < ne; ++e)
            G[e] = -2.0 * C[e] * s[e] * dsdq[e] * inv_dx_mid[e] / dx * 0.5;
        for (int i = 1; i + 1 < nn; ++i) {
            lower[i] = -K[i - 1] + (q[i] - q[i - 1]) * G[i - 1];
            diag[i] = K[i - 1] + K[i] + (q[i] - q[i - 1]) * G[i - 1] +
                      (q[i] - q[i + 1]) * G[i];
            upper[i] = -K[i] + (q[i] - q[i + 1]) * G[i];
        }

        // Thomas on the interior unknowns 1..nn-2
        {
            std::vector<double> c(nn, 0.0), d(nn, 0.0);
            for (int i = 1; i + 1 < nn; ++i) {
                const double lo = (i > 1) ? lower[i] : 0.0;
                const double denom = diag[i] - lo * c[i - 1];
                if (denom == 0.0)
                    throw SolverError("singular_system",
                                      "pressure Newton: zero pivot");
                c[i] = (i + 2 < nn) ? upper[i] / denom : 0.0;
                d[i] = (-res[i] - lo * d[i - 1]) / denom;
            }
            delta[0] = delta[nn - 1] = 0.0;
            for (int i = nn - 2; i >= 1; --i)
                delta[i] = d[i] - c[i] * delta[i + 1];
        }

        // Damped update: shrink the step until the residual decreases and the
        // iterate stays below the reduced-pressure supremum.
        std::vector<double> q_trial(nn);
        double lam = cfg.relaxation;
        bool accepted = false;
        for (int half = 0; half < 40 && !accepted; ++half, lam *= 0.5) {
            for (int i = 0; i < nn; ++i)
                q_trial[i] = q[i] + lam * delta[i];
            try {
                scale_at(q_trial);
                const double r1 = residual_norm(q_trial);
                // non-strict so a converged (near-zero) step is accepted
                if (r1 <= r0 * (1.0 + 1e-12))
                    accepted = true;
            } catch (const NonConvergenceError&) {
                // runaway trial: keep halving
            }
        }
        if (!accepted)
            throw NonConvergenceError(
                "solve_pressure_given_theta2: Newton step rejected down to "
                "zero length (pressure runaway or ellipticity margin lost)",
                r0);
        q.swap(q_trial);

        NodalField p_next(mesh, std::vector<double>(nn, 0.0));
        for (int i = 0; i < nn; ++i)
            p_next.values[i] = transform ? map.p_of_q(q[i]) : q[i];
        const double diff = l2_diff(p_next, p_field);
        p_field = std::move(p_next);
        if (diff < cfg.pressure_tol * std::max(1.0, l2_norm(p_field))) {
            PressureSolution sol;
            sol.mesh = mesh;
            sol.p = p_field.values;
            sol.theta2 = theta2;
            sol.variant = variant;
            sol.min_coefficient = min_coef;
            sol.fixed_point_iters = iters;
            return sol;
        }
    }
    throw NonConvergenceError(
        "solve_pressure_given_theta2: pressure iteration did not converge "
        "in " + std::to_string(cfg.max_fixed_point) + " iterations",
        0.0);
}

PressureSolution find_theta2(const CylinderPlaneGeometry& geom,
                             const Kinematics& kin,
                             const ViscosityModel& model,
                             ModelVariant variant,
                             const VelocityField* vel,
                             const SolverConfig& cfg) {
    if (source_velocity_factor(kin, variant, cfg.rhs_velocity_sum) == 0.0)
        throw ZeroEntrainmentError(
            "zero entrainment: pressure identically zero, theta2 undefined");

    const auto exit_slope = [](const PressureSolution& s) {
        const double dx = s.mesh.dx();
        const int nn = s.mesh.n_nodes();
        return (s.p[nn - 1] - s.p[nn - 2]) / dx;
    };

    double lo = 0.0;
    double hi = kHalfPi;

    // A trial exit angle far past the true free boundary can push the
    // reduced pressure beyond its supremum; that runaway counts as "exit too
    // late" for the bisection. Runaway with the exit pinned at lo is genuine
    // and propagates.
    const auto try_solve = [&](double t2) -> std::optional<PressureSolution> {
        try {
            return solve_pressure_given_theta2(geom, kin, model, variant, t2,
                                               vel, cfg);
        } catch (const NonConvergenceError&) {
            return std::nullopt;
        }
    };

    // Empirically assert the bisection sign convention at the bracket ends:
    // slope < 0 means the trial exit is too early.
    PressureSolution sol_lo = solve_pressure_given_theta2(geom, kin, model, variant,
                                                          lo, vel, cfg);
    const double s_lo = exit_slope(sol_lo);
    std::optional<PressureSolution> sol_hi = try_solve(hi - 1e-12);
    const double s_hi = sol_hi ? exit_slope(*sol_hi) : 1.0;
    if ((s_lo < 0.0) == (s_hi < 0.0))
        throw BracketError(
            "find_theta2: exit slope has the same sign at both initial bounds "
            "(lo " + std::to_string(s_lo) + ", hi " + std::to_string(s_hi) + ")",
            s_lo, s_hi);

    PressureSolution best = (s_lo < 0.0 && sol_hi) ? std::move(*sol_hi)
                                                   : std::move(sol_lo);
    while (hi - lo > cfg.theta2_tol) {
        const double mid = 0.5 * (lo + hi);
        std::optional<PressureSolution> sol = try_solve(mid);
        if (!sol) {
            hi = mid;
            continue;
        }
        const double s = exit_slope(*sol);
        best = std::move(*sol);
        if (std::abs(s) < cfg.slope_tol)
            break;
        if (s < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return best;
}

} // namespace lub
