#include "lub/viscosity.hpp"
#include "lub/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace lub {

void ViscosityModel::validate() const {
    if (!(mu0 > 0.0))
        throw std::invalid_argument("viscosity: mu0 must be positive");
    if (alpha < 0.0)
        throw std::invalid_argument("viscosity: alpha must be nonnegative");
    if (kind == Kind::roelands) {
        if (!(mu_R > 0.0) || !(p_R > 0.0))
            throw std::invalid_argument("viscosity: mu_R and p_R must be positive");
        if (mu0 == mu_R)
            throw std::invalid_argument(
                "viscosity: mu0 = mu_R leaves the Roelands exponent undefined");
    }
}

ViscosityModel ViscosityModel::constant(double mu0) {
    ViscosityModel m;
    m.kind = Kind::constant;
    m.mu0 = mu0;
    m.validate();
    return m;
}

ViscosityModel ViscosityModel::barus(double mu0, double alpha) {
    ViscosityModel m;
    m.kind = Kind::barus;
    m.mu0 = mu0;
    m.alpha = alpha;
    m.validate();
    return m;
}

ViscosityModel ViscosityModel::roelands(double mu0, double alpha,
                                        double mu_R, double p_R) {
    ViscosityModel m;
    m.kind = Kind::roelands;
    m.mu0 = mu0;
    m.alpha = alpha;
    m.mu_R = mu_R;
    m.p_R = p_R;
    m.validate();
    return m;
}

double ViscosityModel::roelands_Z() const {
    if (mu0 == mu_R)
        throw std::domain_error("roelands_Z: mu0 = mu_R");
    return alpha * p_R / (std::log(mu0) - std::log(mu_R));
}

double ViscosityModel::mu(double p) const {
    switch (kind) {
    case Kind::constant:
        return mu0;
    case Kind::barus:
        return mu0 * std::exp(alpha * p);
    case Kind::roelands: {
        const double base = 1.0 + p / p_R;
        if (base <= 0.0)
            throw std::domain_error("viscosity: Roelands base 1 + p/p_R <= 0");
        const double Z = roelands_Z();
        // Equivalent exponential form of the Roelands relation; reduces to
        // mu0 at p = 0 and has log-derivative alpha at ambient pressure.
        return mu0 * std::exp((std::pow(base, Z) - 1.0) * std::log(mu0 / mu_R));
    }
    }
    throw std::logic_error("viscosity: unknown kind");
}

double ViscosityModel::log_derivative(double p) const {
    switch (kind) {
    case Kind::constant:
        return 0.0;
    case Kind::barus:
        return alpha;
    case Kind::roelands: {
        const double base = 1.0 + p / p_R;
        if (base <= 0.0)
            throw std::domain_error("viscosity: Roelands base 1 + p/p_R <= 0");
        const double Z = roelands_Z();
        // d/dp ln mu = ln(mu0/mu_R) Z/p_R (1 + p/p_R)^(Z-1) = alpha (1+p/p_R)^(Z-1)
        return alpha * std::pow(base, Z - 1.0);
    }
    }
    throw std::logic_error("viscosity: unknown kind");
}

ViscosityModel::Kind ViscosityModel::kind_from_string(const std::string& s) {
    if (s == "constant") return Kind::constant;
    if (s == "barus") return Kind::barus;
    if (s == "roelands") return Kind::roelands;
    throw ConfigError("viscosity.kind must be one of constant|barus|roelands, got '" + s + "'");
}

std::string ViscosityModel::kind_to_string(Kind k) {
    switch (k) {
    case Kind::constant: return "constant";
    case Kind::barus: return "barus";
    case Kind::roelands: return "roelands";
    }
    return "?";
}

namespace {

// Cubic Hermite basis on t in [0, 1].
double hermite(double t, double v0, double d0, double v1, double d1, double dx) {
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * v0 + (t3 - 2 * t2 + t) * dx * d0 +
           (-2 * t3 + 3 * t2) * v1 + (t3 - t2) * dx * d1;
}

double hermite_deriv(double t, double v0, double d0, double v1, double d1,
                     double dx) {
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * v0 / dx + (3 * t2 - 4 * t + 1) * d0 +
            (-6 * t2 + 6 * t) * v1 / dx + (3 * t2 - 2 * t) * d1);
}

} // namespace

ReducedPressureMap::ReducedPressureMap(const ViscosityModel& model)
    : model_(model) {
    identity_ = model.kind == ViscosityModel::Kind::constant || model.alpha == 0.0;
    if (!identity_ && model_.kind == ViscosityModel::Kind::roelands) {
        // The integrand mu0/mu varies on the pressure scale 1/alpha near
        // ambient; 0.01 of that per segment keeps Simpson + Hermite errors
        // far below the solver tolerances.
        step_ = 0.01 / model_.alpha;
        q_pos_ = {0.0};
        f_pos_ = {1.0};
        q_neg_ = {0.0};
        f_neg_ = {1.0};
    }
}

void ReducedPressureMap::extend_pos(double q_target, double p_target) const {
    const auto f = [&](double p) { return model_.mu0 / model_.mu(p); };
    while (q_pos_.back() <= q_target ||
           step_ * (static_cast<double>(q_pos_.size()) - 1.0) < p_target) {
        const double a = step_ * (static_cast<double>(q_pos_.size()) - 1.0);
        if (f_pos_.back() < 1e-15 && q_pos_.back() <= q_target)
            throw NonConvergenceError(
                "reduced pressure beyond its supremum: steady piezoviscous "
                "pressure runaway",
                q_target);
        const double fb = f(a + step_);
        q_pos_.push_back(q_pos_.back() +
                         step_ / 6.0 * (f_pos_.back() + 4.0 * f(a + 0.5 * step_) + fb));
        f_pos_.push_back(fb);
    }
}

void ReducedPressureMap::extend_neg(double q_target, double p_target) const {
    const auto f = [&](double p) { return model_.mu0 / model_.mu(p); };
    while (q_neg_.back() >= q_target ||
           -step_ * (static_cast<double>(q_neg_.size()) - 1.0) > p_target) {
        const double a = -step_ * (static_cast<double>(q_neg_.size()) - 1.0);
        if (a - step_ <= -model_.p_R * (1.0 - 1e-9))
            throw std::domain_error(
                "reduced pressure outside the admissible Roelands range "
                "(p <= -p_R)");
        const double fb = f(a - step_);
        q_neg_.push_back(q_neg_.back() -
                         step_ / 6.0 * (f_neg_.back() + 4.0 * f(a - 0.5 * step_) + fb));
        f_neg_.push_back(fb);
    }
}

double ReducedPressureMap::hermite_q(double p) const {
    if (p >= 0.0) {
        extend_pos(-1.0, p);
        const auto i = static_cast<std::size_t>(p / step_);
        const std::size_t seg = std::min(i, q_pos_.size() - 2);
        const double t = p / step_ - static_cast<double>(seg);
        return hermite(t, q_pos_[seg], f_pos_[seg], q_pos_[seg + 1],
                       f_pos_[seg + 1], step_);
    }
    extend_neg(1.0, p);
    const auto i = static_cast<std::size_t>(-p / step_);
    const std::size_t seg = std::min(i, q_neg_.size() - 2);
    // segment from p = -(seg+1) step to -seg step, oriented left to right
    const double t = 1.0 - (-p / step_ - static_cast<double>(seg));
    return hermite(t, q_neg_[seg + 1], f_neg_[seg + 1], q_neg_[seg], f_neg_[seg],
                   step_);
}

double ReducedPressureMap::invert_segment(double q, bool positive,
                                          std::size_t seg) const {
    const double v0 = positive ? q_pos_[seg] : q_neg_[seg + 1];
    const double d0 = positive ? f_pos_[seg] : f_neg_[seg + 1];
    const double v1 = positive ? q_pos_[seg + 1] : q_neg_[seg];
    const double d1 = positive ? f_pos_[seg + 1] : f_neg_[seg];
    double t = (q - v0) / (v1 - v0);
    for (int it = 0; it < 8; ++it) {
        const double r = hermite(t, v0, d0, v1, d1, step_) - q;
        const double dr = hermite_deriv(t, v0, d0, v1, d1, step_) * step_;
        t -= r / dr;
        t = std::clamp(t, 0.0, 1.0);
    }
    const double p0 = positive ? step_ * static_cast<double>(seg)
                               : -step_ * static_cast<double>(seg + 1);
    return p0 + t * step_;
}

double ReducedPressureMap::q_of_p(double p) const {
    if (identity_)
        return p;
    if (model_.kind == ViscosityModel::Kind::barus)
        return -std::expm1(-model_.alpha * p) / model_.alpha;
    return hermite_q(p);
}

double ReducedPressureMap::p_of_q(double q) const {
    if (identity_)
        return q;
    if (model_.kind == ViscosityModel::Kind::barus) {
        const double aq = model_.alpha * q;
        if (aq >= 1.0 - 1e-14)
            throw NonConvergenceError(
                "reduced pressure beyond its supremum 1/alpha: steady "
                "piezoviscous pressure runaway",
                aq);
        return -std::log1p(-aq) / model_.alpha;
    }
    if (q == 0.0)
        return 0.0;
    if (q > 0.0) {
        extend_pos(q, 0.0);
        const auto it = std::upper_bound(q_pos_.begin(), q_pos_.end(), q);
        const auto seg = static_cast<std::size_t>(it - q_pos_.begin()) - 1;
        return invert_segment(q, true, std::min(seg, q_pos_.size() - 2));
    }
    extend_neg(q, 0.0);
    const auto it = std::upper_bound(q_neg_.begin(), q_neg_.end(), q,
                                     std::greater<double>());
    const auto seg = static_cast<std::size_t>(it - q_neg_.begin()) - 1;
    return invert_segment(q, false, std::min(seg, q_neg_.size() - 2));
}

void ReducedPressureMap::scale_and_slope(double q, double& s, double& dsdq) const {
    if (identity_) {
        s = 1.0;
        dsdq = 0.0;
        return;
    }
    if (model_.kind == ViscosityModel::Kind::barus) {
        const double aq = model_.alpha * q;
        if (aq >= 1.0 - 1e-14)
            throw NonConvergenceError(
                "reduced pressure beyond its supremum 1/alpha: steady "
                "piezoviscous pressure runaway",
                aq);
        s = 1.0 / (1.0 - aq);
        dsdq = model_.alpha * s * s;
        return;
    }
    const double p = p_of_q(q);
    s = model_.mu(p) / model_.mu0;
    dsdq = model_.log_derivative(p) * s * s;
}

} // namespace lub
