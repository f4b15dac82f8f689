#include "lub/velocity.hpp"
#include "lub/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace lub {

VelocityProfile couette_poiseuille(double h, double mu, double dpdx,
                                   const Kinematics& kin, int m_elems,
                                   double theta) {
    if (!(h > 0.0) || !(mu > 0.0))
        throw std::invalid_argument("couette_poiseuille: h and mu must be positive");
    VelocityProfile prof;
    prof.theta = theta;
    prof.y_mesh = UniformMesh(0.0, h, m_elems);
    prof.u.resize(m_elems + 1);
    for (int i = 0; i <= m_elems; ++i) {
        const double y = prof.y_mesh.node(i);
        prof.u[i] = kin.U0 + (kin.Uh - kin.U0) * y / h
                    + y * (y - h) / (2.0 * mu) * dpdx;
    }
    prof.u.front() = kin.U0;
    prof.u.back() = kin.Uh;
    return prof;
}

VelocityProfile solve_velocity_profile(double mu_local, double alpha,
                                       double dpdx, double h,
                                       const Kinematics& kin, int m_elems,
                                       double tol, int max_iter,
                                       double theta) {
    if (!(h > 0.0) || !(mu_local > 0.0))
        throw std::invalid_argument("solve_velocity_profile: h and mu must be positive");
    if (m_elems < 2)
        throw std::invalid_argument("solve_velocity_profile: need M >= 2");

    VelocityProfile prof = couette_poiseuille(h, mu_local, dpdx, kin, m_elems, theta);
    const UniformMesh& mesh = prof.y_mesh;

    std::vector<double> D_mid(m_elems, mu_local);
    std::vector<double> f_mid(m_elems);
    const double a2m2G = alpha * alpha * mu_local * mu_local * dpdx;

    double prev_diff = -1.0;
    bool warned = false;
    double diff = 0.0;
    for (int k = 0; k < max_iter; ++k) {
        NodalField cur(mesh, prof.u);
        const std::vector<double> g = gradient(cur);
        for (int e = 0; e < m_elems; ++e)
            f_mid[e] = dpdx - a2m2G * g[e] * g[e];

        NodalField next = solve_sturm_liouville(D_mid, f_mid, mesh, kin.U0, kin.Uh);
        diff = l2_diff(next, cur);
        prof.u = next.values;

        const double un = l2_norm(next);
        if (diff < tol * std::max(1.0, un))
            return prof;

        if (prev_diff >= 0.0 && diff > prev_diff && !warned) {
            std::fprintf(stderr,
                         "solve_velocity_profile: non-monotone fixed-point decay "
                         "at theta=%g (diff %g after %g)\n",
                         theta, diff, prev_diff);
            warned = true;
        }
        prev_diff = diff;
    }
    throw NonConvergenceError("solve_velocity_profile: fixed point did not converge", diff);
}

BackflowInfo detect_backflow(const VelocityProfile& profile) {
    BackflowInfo info;
    for (int i = 0; i < profile.y_mesh.n_nodes(); ++i) {
        if (profile.u[i] < 0.0) {
            info.present = true;
            info.y_extent = profile.y_mesh.node(i);
        }
    }
    return info;
}

namespace {

// Locate the bracketing station pair and blend factor for theta.
struct Bracket {
    int i = 0;
    double t = 0.0;
};

Bracket locate(const std::vector<double>& stations, double theta) {
    const auto it = std::upper_bound(stations.begin(), stations.end(), theta);
    int i = static_cast<int>(it - stations.begin()) - 1;
    i = std::clamp(i, 0, static_cast<int>(stations.size()) - 2);
    const double span = stations[i + 1] - stations[i];
    return {i, (theta - stations[i]) / span};
}

} // namespace

VelocityProfile VelocityField::interpolate(double theta, double h_target) const {
    if (empty())
        throw std::out_of_range("VelocityField::interpolate: empty field");
    if (theta < stations.front() || theta > stations.back())
        throw std::out_of_range("VelocityField::interpolate: theta outside station range");
    if (stations.size() < 2)
        throw std::invalid_argument("VelocityField::interpolate: need at least two stations");

    const Bracket br = locate(stations, theta);
    const VelocityProfile& lo = profiles[br.i];
    const VelocityProfile& hi = profiles[br.i + 1];
    const int nn = lo.y_mesh.n_nodes();
    if (hi.y_mesh.n_nodes() != nn)
        throw std::invalid_argument("VelocityField: profiles must share node count");

    VelocityProfile out;
    out.theta = theta;
    out.y_mesh = UniformMesh(0.0, h_target, lo.y_mesh.n_elems);
    out.u.resize(nn);
    for (int j = 0; j < nn; ++j)
        out.u[j] = (1.0 - br.t) * lo.u[j] + br.t * hi.u[j];
    return out;
}

double VelocityField::shear_integral(double theta, double h_target) const {
    if (empty() || theta < stations.front() || theta > stations.back())
        return 0.0;

    const Bracket br = locate(stations, theta);
    const VelocityProfile& lo = profiles[br.i];
    const VelocityProfile& hi = profiles[br.i + 1];
    const int ne = lo.y_mesh.n_elems;

    const double h = h_target;
    const double dy = h / ne;
    // F(y) = h y^2/2 - y^3/3 is the antiderivative of y(h - y).
    const auto F = [h](double y) { return h * y * y / 2.0 - y * y * y / 3.0; };

    double acc = 0.0;
    for (int e = 0; e < ne; ++e) {
        const double du = (1.0 - br.t) * (lo.u[e + 1] - lo.u[e])
                          + br.t * (hi.u[e + 1] - hi.u[e]);
        const double g = du / dy;
        acc += g * g * (F((e + 1) * dy) - F(e * dy));
    }
    return acc;
}

} // namespace lub
