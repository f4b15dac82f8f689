#pragma once

#include <string>
#include <vector>

namespace lub {

/// Pressure-viscosity constitutive law. The Roelands exponent Z is always
/// derived from alpha at ambient pressure, never user-supplied, so that
/// every variant satisfies (1/mu) dmu/dp = alpha at p = 0.
struct ViscosityModel {
    enum class Kind { constant, barus, roelands };

    Kind kind = Kind::constant;
    double mu0 = 0.0;            // ambient dynamic viscosity [Pa s]
    double alpha = 0.0;          // pressure-viscosity coefficient [1/Pa]
    double mu_R = 6.31e-5;       // Roelands reference viscosity [Pa s]
    double p_R = 1.98e8;         // Roelands reference pressure [Pa]

    static ViscosityModel constant(double mu0);
    static ViscosityModel barus(double mu0, double alpha);
    static ViscosityModel roelands(double mu0, double alpha,
                                   double mu_R = 6.31e-5, double p_R = 1.98e8);

    /// Dynamic viscosity at pressure p [Pa s].
    double mu(double p) const;

    /// Roelands exponent Z = alpha p_R / (ln mu0 - ln mu_R).
    double roelands_Z() const;

    /// Logarithmic pressure derivative (1/mu) dmu/dp [1/Pa], analytic per
    /// variant. Constant alpha for Barus; equals alpha at p = 0 for Roelands.
    double log_derivative(double p) const;

    static Kind kind_from_string(const std::string& s);
    static std::string kind_to_string(Kind k);

private:
    void validate() const;
};

/// Reduced-pressure change of variables q(p) = int_0^p mu0/mu(t) dt, i.e. the
/// Kirchhoff transform of the piezoviscous diffusion term:
///   h^3/(12 mu) dp/dx = h^3/(12 mu0) dq/dx.
/// For growing viscosity laws q is bounded above; approaching the supremum
/// means the steady pressure runs away (no solution), reported as
/// NonConvergenceError by p_of_q. Closed forms for constant/Barus; Roelands
/// uses a lazily extended table of Simpson-integrated segments with Hermite
/// interpolation. Instances are cheap and not thread safe.
class ReducedPressureMap {
public:
    explicit ReducedPressureMap(const ViscosityModel& model);

    double q_of_p(double p) const;
    double p_of_q(double q) const;

    /// s(q) = mu(p(q))/mu0 and its derivative ds/dq = (dlnmu/dp) s^2,
    /// evaluated without an explicit inversion where a closed form exists.
    void scale_and_slope(double q, double& s, double& dsdq) const;

private:
    ViscosityModel model_;
    bool identity_ = false;  // constant law, or alpha = 0

    // Roelands table: segment endpoints p = i*step (pos_) / -i*step (neg_)
    // with cumulative q and the integrand f = mu0/mu at each endpoint.
    double step_ = 0.0;
    mutable std::vector<double> q_pos_, f_pos_, q_neg_, f_neg_;

    void extend_pos(double q_target, double p_target) const;
    void extend_neg(double q_target, double p_target) const;
    double hermite_q(double p) const;
    double invert_segment(double q, bool positive, std::size_t seg) const;
};

} // namespace lub
