#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lub/errors.hpp"
#include "lub/reynolds.hpp"

#include <cmath>
#include <numbers>

using namespace lub;

namespace {

SolverConfig small_cfg() {
    SolverConfig cfg;
    cfg.n_theta = 400;
    cfg.m_y = 50;
    cfg.theta2_tol = 1e-5;
    return cfg;
}

const CylinderPlaneGeometry kGeom(1e-2, 1e-6);  // h0/R = 1e-4
const Kinematics kKin{0.0, 1.0};

} // namespace

TEST_CASE("modified_coefficient") {
    const double h = 1e-6, mu = 0.158;
    const auto couette = couette_poiseuille(h, mu, 0.0, kKin, 50);

    SUBCASE("alpha = 0 leaves h^3/(12 mu)") {
        CHECK(modified_coefficient(h, mu, 0.0, couette) ==
              doctest::Approx(h * h * h / (12 * mu)).epsilon(1e-13));
    }
    SUBCASE("zero-gradient profile leaves h^3/(12 mu)") {
        auto flat = couette;
        std::fill(flat.u.begin(), flat.u.end(), 0.7);
        CHECK(modified_coefficient(h, mu, 5.59e-8, flat) ==
              doctest::Approx(h * h * h / (12 * mu)).epsilon(1e-13));
    }
    SUBCASE("linear profile closed form") {
        // u = Uh y/h: I = (Uh/h)^2 h^3/6, D = h^3/(12 mu) - alpha^2 mu Uh^2 h / 6
        const double alpha = 5.59e-8;
        const double expected = h * h * h / (12 * mu) - alpha * alpha * mu * 1.0 * h / 6.0;
        CHECK(modified_coefficient(h, mu, alpha, couette) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("check_ellipticity") {
    SUBCASE("all ones") {
        const std::vector<double> c{1.0, 1.0, 1.0};
        const std::vector<double> t{0.0, 0.1, 0.2};
        CHECK(check_ellipticity(c, t, 0.0) == 1.0);
    }
    SUBCASE("non-positive coefficient fires") {
        const std::vector<double> c{1.0, -0.5, 2.0};
        const std::vector<double> t{0.0, 0.1, 0.2};
        CHECK_THROWS_AS(check_ellipticity(c, t, 0.0), EllipticityError);
    }
}

TEST_CASE("counter-moving walls give identically zero pressure") {
    auto cfg = small_cfg();
    const auto model = ViscosityModel::constant(0.158);
    const auto sol = solve_pressure_given_theta2(kGeom, Kinematics{-1.0, 1.0},
                                                 model, ModelVariant::classical,
                                                 0.01, nullptr, cfg);
    for (double p : sol.p)
        CHECK(std::abs(p) < 1e-12);
}

TEST_CASE("piezo with alpha = 0 is nodally identical to classical") {
    auto cfg = small_cfg();
    const auto piezo_model = ViscosityModel::barus(0.158, 0.0);
    const auto const_model = ViscosityModel::constant(0.158);
    const auto a = solve_pressure_given_theta2(kGeom, kKin, piezo_model,
                                               ModelVariant::piezo, 0.005, nullptr, cfg);
    const auto b = solve_pressure_given_theta2(kGeom, kKin, const_model,
                                               ModelVariant::classical, 0.005,
                                               nullptr, cfg);
    for (int i = 0; i < a.mesh.n_nodes(); ++i)
        CHECK(a.p[i] == doctest::Approx(b.p[i]).epsilon(1e-12));
}

TEST_CASE("modified with zero velocity matches piezo when U0 = 0") {
    auto cfg = small_cfg();
    const auto model = ViscosityModel::barus(0.158, 5.59e-8);
    const auto piezo = solve_pressure_given_theta2(kGeom, kKin, model,
                                                   ModelVariant::piezo, 0.005,
                                                   nullptr, cfg);
    const auto modified = solve_pressure_given_theta2(kGeom, kKin, model,
                                                      ModelVariant::modified, 0.005,
                                                      nullptr, cfg);
    for (int i = 0; i < piezo.mesh.n_nodes(); ++i)
        CHECK(modified.p[i] == doctest::Approx(piezo.p[i]).epsilon(1e-12));
}

TEST_CASE("classical pressure scales linearly with viscosity") {
    // halving the diffusion coefficient h^3/(12 mu) doubles the pressure
    auto cfg = small_cfg();
    const auto a = solve_pressure_given_theta2(kGeom, kKin,
                                               ViscosityModel::constant(0.158),
                                               ModelVariant::classical, 0.006,
                                               nullptr, cfg);
    const auto b = solve_pressure_given_theta2(kGeom, kKin,
                                               ViscosityModel::constant(0.316),
                                               ModelVariant::classical, 0.006,
                                               nullptr, cfg);
    for (int i = 1; i + 1 < a.mesh.n_nodes(); ++i) {
        if (std::abs(a.p[i]) < 1e3) continue;
        CHECK(b.p[i] == doctest::Approx(2.0 * a.p[i]).epsilon(1e-12));
    }
}

TEST_CASE("first integral of the Reynolds equation is constant") {
    // D (dtheta/dx) dp/dtheta - (1/2)(Uh+U0) h constant across midpoints.
    auto cfg = small_cfg();
    cfg.n_theta = 2000;
    const auto model = ViscosityModel::constant(0.158);
    const auto sol = solve_pressure_given_theta2(kGeom, kKin, model,
                                                 ModelVariant::classical, 0.005,
                                                 nullptr, cfg);
    const auto g = gradient(sol.field());
    std::vector<double> flux(cfg.n_theta);
    for (int e = 0; e < cfg.n_theta; ++e) {
        const double th = sol.mesh.midpoint(e);
        const double h = kGeom.film_thickness(th);
        const double D = h * h * h / (12 * model.mu0);
        flux[e] = D * kGeom.dtheta_dx(th) * g[e] - 0.5 * (kKin.Uh + kKin.U0) * h;
    }
    // compare interior quartiles; the flux is smooth away from the pinned ends
    const double ref = flux[cfg.n_theta / 2];
    for (int e = cfg.n_theta / 4; e < 3 * cfg.n_theta / 4; ++e)
        CHECK(flux[e] == doctest::Approx(ref).epsilon(0.02));
}

TEST_CASE("find_theta2 on the isoviscous baseline") {
    auto cfg = small_cfg();
    cfg.n_theta = 2000;
    const auto model = ViscosityModel::constant(0.158);
    const auto sol = find_theta2(kGeom, kKin, model, ModelVariant::classical,
                                 nullptr, cfg);
    CHECK(sol.theta2 > 0.0);
    CHECK(sol.theta2 < 0.05);
    // Swift-Stieber: exit slope below bisection resolution, pressure nonnegative
    const auto g = gradient(sol.field());
    CHECK(std::abs(g.back()) * sol.mesh.dx() < 1e-2 * sol.p_max());
    for (double p : sol.p)
        CHECK(p > -1e-6 * sol.p_max());
}

TEST_CASE("zero entrainment") {
    auto cfg = small_cfg();
    const auto model = ViscosityModel::constant(0.158);
    CHECK_THROWS_AS(find_theta2(kGeom, Kinematics{0.0, 0.0}, model,
                                ModelVariant::classical, nullptr, cfg),
                    ZeroEntrainmentError);
}

TEST_CASE("ellipticity guard fires for an artificially large alpha") {
    auto cfg = small_cfg();
    cfg.n_theta = 200;
    const auto model = ViscosityModel::barus(0.158, 1e-5);

    // Build a steep synthetic velocity field so alpha^2 mu I dominates h^3/(12 mu).
    VelocityField vel;
    vel.stations = {-std::numbers::pi / 2.0, std::numbers::pi / 2.0};
    VelocityProfile steep = couette_poiseuille(1e-6, 0.158, 0.0, Kinematics{0.0, 50.0}, 50);
    steep.theta = vel.stations[0];
    VelocityProfile steep2 = steep;
    steep2.theta = vel.stations[1];
    vel.profiles = {steep, steep2};

    CHECK_THROWS_AS(solve_pressure_given_theta2(kGeom, kKin, model,
                                                ModelVariant::modified, 0.01,
                                                &vel, cfg),
                    EllipticityError);
}

TEST_CASE("mesh refinement changes p_max at second order") {
    const auto model = ViscosityModel::constant(0.158);
    auto cfg = small_cfg();
    double prev = 0.0, prev_delta = 0.0;
    for (int n : {250, 500, 1000}) {
        cfg.n_theta = n;
        const auto sol = solve_pressure_given_theta2(kGeom, kKin, model,
                                                     ModelVariant::classical,
                                                     0.005, nullptr, cfg);
        const double pm = sol.p_max();
        if (prev > 0.0) {
            const double delta = std::abs(pm - prev);
            if (prev_delta > 0.0)
                CHECK(prev_delta / delta > 3.0);  // O(N^-2)
            prev_delta = delta;
        }
        prev = pm;
    }
}
