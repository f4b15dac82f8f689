#include "lub/coupling.hpp"
#include "lub/errors.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <thread>
#include <vector>

namespace lub {

namespace {

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

// Static block partition; fn(i) must be pure so the result is identical for
// any worker count.
void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::atomic<int> first_error{-1};
    std::vector<std::exception_ptr> errors(workers);
    const int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            const int begin = w * chunk;
            const int end = std::min(n, begin + chunk);
            try {
                for (int i = begin; i < end; ++i) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
                first_error.store(w, std::memory_order_relaxed);
            }
        });
    }
    for (auto& t : pool) t.join();
    const int w = first_error.load();
    if (w >= 0) std::rethrow_exception(errors[w]);
}

} // namespace

VelocityField solve_velocity_field(const CylinderPlaneGeometry& geom,
                                   const Kinematics& kin,
                                   const ViscosityModel& model,
                                   const PressureSolution& pressure,
                                   const SolverConfig& cfg) {
    const NodalField pf = pressure.field();
    const std::vector<double> dpdtheta = nodal_gradient(pf);
    const int nn = pressure.mesh.n_nodes();

    VelocityField field;
    field.stations.resize(nn);
    field.profiles.resize(nn);

    const int workers = resolve_workers(cfg.workers);
    const double half_pi = std::numbers::pi / 2.0;

    parallel_for(nn, workers, [&](int i) {
        const double theta = pressure.mesh.node(i);
        // The inlet node sits on the coordinate singularity of dtheta/dx;
        // the pressure gradient is pinned to zero there and the local
        // profile reduces to plain Couette flow.
        double dpdx = 0.0;
        if (std::abs(theta) < half_pi)
            dpdx = dpdtheta[i] * geom.dtheta_dx(theta);
        const double h = geom.film_thickness(theta);
        const double mu_local =
            pressure.variant == ModelVariant::classical ? model.mu0
                                                        : model.mu(pressure.p[i]);
        field.stations[i] = theta;
        field.profiles[i] = solve_velocity_profile(mu_local, model.alpha, dpdx, h,
                                                   kin, cfg.m_y, cfg.velocity_tol,
                                                   cfg.max_fixed_point, theta);
    });
    return field;
}

VelocityProfile interpolate_velocity(const VelocityField& field,
                                     const CylinderPlaneGeometry& geom,
                                     double theta) {
    return field.interpolate(theta, geom.film_thickness(theta));
}

OuterResult outer_solve(const CylinderPlaneGeometry& geom,
                        const Kinematics& kin,
                        const ViscosityModel& model,
                        ModelVariant variant,
                        const SolverConfig& cfg) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();

    OuterResult result;

    if (variant != ModelVariant::modified) {
        result.pressure = find_theta2(geom, kin, model, variant, nullptr, cfg);
        result.outer_iters = 1;
        result.iter_theta2.push_back(result.pressure.theta2);
        result.iter_p_max.push_back(result.pressure.p_max());
    } else {
        VelocityField vel;  // empty: the first pass is the piezoviscous problem
        PressureSolution prev;
        bool have_prev = false;
        int non_decreasing = 0;

        for (int k = 1; k <= cfg.outer_iterations; ++k) {
            PressureSolution ps = find_theta2(geom, kin, model, variant,
                                              vel.empty() ? nullptr : &vel, cfg);
            result.outer_iters = k;
            result.iter_theta2.push_back(ps.theta2);
            result.iter_p_max.push_back(ps.p_max());
            bool converged = false;
            if (have_prev) {
                const double diff = l2_diff(ps.field(), prev.field());
                if (!result.diff_history.empty() && diff >= result.diff_history.back()) {
                    if (++non_decreasing >= 2)
                        throw DivergenceError(
                            "outer_solve: pressure differences non-decreasing over "
                            "three consecutive iterations (iteration " +
                            std::to_string(k) + ")");
                } else {
                    non_decreasing = 0;
                }
                result.diff_history.push_back(diff);
                converged = diff < cfg.pressure_tol * ps.p_max();
            }
            prev = ps;
            have_prev = true;
            result.pressure = std::move(ps);
            if (converged)
                break;
            vel = solve_velocity_field(geom, kin, model, result.pressure, cfg);
        }
        // Step (b) ran at the end of every pass, so this field corresponds
        // to the final pressure iterate.
        result.velocity = std::move(vel);
    }

    result.theta2 = result.pressure.theta2;
    result.p_max = result.pressure.p_max();
    result.mu_max = variant == ModelVariant::classical ? model.mu0
                                                       : model.mu(result.p_max);
    result.min_coefficient = result.pressure.min_coefficient;
    result.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

} // namespace lub
