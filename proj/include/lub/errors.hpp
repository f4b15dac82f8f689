#pragma once

#include <stdexcept>
#include <string>

namespace lub {

// All solver failures carry a machine-readable kind string that maps onto
// the CLI exit codes (see tools/lubsolve.cpp).
class SolverError : public std::runtime_error {
public:
    SolverError(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

class ConfigError : public SolverError {
public:
    explicit ConfigError(const std::string& msg) : SolverError("config", msg) {}
};

class NonConvergenceError : public SolverError {
public:
    NonConvergenceError(const std::string& msg, double last_residual)
        : SolverError("non_convergence", msg), last_residual_(last_residual) {}

    double last_residual() const noexcept { return last_residual_; }

private:
    double last_residual_;
};

class EllipticityError : public SolverError {
public:
    EllipticityError(const std::string& msg, double min_coefficient, double theta)
        : SolverError("ellipticity_loss", msg),
          min_coefficient_(min_coefficient),
          theta_(theta) {}

    double min_coefficient() const noexcept { return min_coefficient_; }
    double theta() const noexcept { return theta_; }

private:
    double min_coefficient_;
    double theta_;
};

class ZeroEntrainmentError : public SolverError {
public:
    explicit ZeroEntrainmentError(const std::string& msg)
        : SolverError("zero_entrainment", msg) {}
};

class BracketError : public SolverError {
public:
    BracketError(const std::string& msg, double slope_lo, double slope_hi)
        : SolverError("bracket_failure", msg),
          slope_lo_(slope_lo),
          slope_hi_(slope_hi) {}

    double slope_lo() const noexcept { return slope_lo_; }
    double slope_hi() const noexcept { return slope_hi_; }

private:
    double slope_lo_;
    double slope_hi_;
};

class DivergenceError : public SolverError {
public:
    explicit DivergenceError(const std::string& msg)
        : SolverError("divergence", msg) {}
};

} // namespace lub
