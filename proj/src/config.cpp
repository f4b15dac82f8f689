#include "lub/config.hpp"
#include "lub/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <string>

namespace lub {

namespace {

using nlohmann::json;

int edit_distance(const std::string& a, const std::string& b) {
    std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = static_cast<int>(i);
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

void reject_unknown_keys(const json& j, const std::string& scope,
                         const std::vector<std::string>& known) {
    for (const auto& [key, value] : j.items()) {
        if (std::find(known.begin(), known.end(), key) != known.end())
            continue;
        std::string best;
        int best_d = 1 << 20;
        for (const auto& k : known) {
            const int d = edit_distance(key, k);
            if (d < best_d) {
                best_d = d;
                best = k;
            }
        }
        std::string msg = scope + ": unknown key '" + key + "'";
        if (best_d <= 3)
            msg += "; did you mean '" + best + "'?";
        throw ConfigError(msg);
    }
}

double require_number(const json& j, const std::string& scope, const std::string& key) {
    if (!j.contains(key))
        throw ConfigError(scope + ": missing required key '" + key + "'");
    if (!j[key].is_number())
        throw ConfigError(scope + "." + key + ": expected a number");
    return j[key].get<double>();
}

double number_or(const json& j, const std::string& scope, const std::string& key,
                 double fallback, RunConfig& cfg) {
    if (!j.contains(key)) {
        cfg.applied_defaults.push_back(scope + "." + key);
        return fallback;
    }
    if (!j[key].is_number())
        throw ConfigError(scope + "." + key + ": expected a number");
    return j[key].get<double>();
}

int int_or(const json& j, const std::string& scope, const std::string& key,
           int fallback, RunConfig& cfg) {
    if (!j.contains(key)) {
        cfg.applied_defaults.push_back(scope + "." + key);
        return fallback;
    }
    if (!j[key].is_number_integer())
        throw ConfigError(scope + "." + key + ": expected an integer");
    return j[key].get<int>();
}

RhsVelocitySum rhs_from_string(const std::string& s) {
    if (s == "per_variant") return RhsVelocitySum::per_variant;
    if (s == "sum") return RhsVelocitySum::sum;
    if (s == "difference") return RhsVelocitySum::difference;
    throw ConfigError("solver.rhs_velocity_sum must be per_variant|sum|difference, got '" + s + "'");
}

std::string rhs_to_string(RhsVelocitySum m) {
    switch (m) {
    case RhsVelocitySum::per_variant: return "per_variant";
    case RhsVelocitySum::sum: return "sum";
    case RhsVelocitySum::difference: return "difference";
    }
    return "?";
}

} // namespace

bool RunConfig::operator==(const RunConfig& other) const {
    return geometry.R == other.geometry.R && geometry.h0 == other.geometry.h0 &&
           kinematics.U0 == other.kinematics.U0 &&
           kinematics.Uh == other.kinematics.Uh &&
           viscosity.kind == other.viscosity.kind &&
           viscosity.mu0 == other.viscosity.mu0 &&
           viscosity.alpha == other.viscosity.alpha &&
           viscosity.mu_R == other.viscosity.mu_R &&
           viscosity.p_R == other.viscosity.p_R &&
           solver.n_theta == other.solver.n_theta &&
           solver.m_y == other.solver.m_y &&
           solver.outer_iterations == other.solver.outer_iterations &&
           solver.pressure_tol == other.solver.pressure_tol &&
           solver.velocity_tol == other.solver.velocity_tol &&
           solver.theta2_tol == other.solver.theta2_tol &&
           solver.slope_tol == other.solver.slope_tol &&
           solver.max_fixed_point == other.solver.max_fixed_point &&
           solver.ellipticity_floor == other.solver.ellipticity_floor &&
           solver.relaxation == other.solver.relaxation &&
           solver.workers == other.solver.workers &&
           solver.rhs_velocity_sum == other.solver.rhs_velocity_sum &&
           variants == other.variants && output_dir == other.output_dir;
}

RunConfig parse_config(const nlohmann::json& j) {
    if (!j.is_object())
        throw ConfigError("config root must be an object");
    reject_unknown_keys(j, "config",
                        {"geometry", "kinematics", "viscosity", "solver",
                         "variants", "output_dir"});

    RunConfig cfg;

    // geometry
    if (!j.contains("geometry"))
        throw ConfigError("config: missing required section 'geometry'");
    const json& jg = j["geometry"];
    reject_unknown_keys(jg, "geometry", {"R", "h0"});
    const double R = require_number(jg, "geometry", "R");
    const double h0 = require_number(jg, "geometry", "h0");
    if (!(R > 0.0)) throw ConfigError("geometry.R must be positive");
    if (!(h0 > 0.0)) throw ConfigError("geometry.h0 must be positive");
    cfg.geometry = CylinderPlaneGeometry(R, h0);

    // kinematics
    if (!j.contains("kinematics"))
        throw ConfigError("config: missing required section 'kinematics'");
    const json& jk = j["kinematics"];
    reject_unknown_keys(jk, "kinematics", {"U0", "Uh"});
    cfg.kinematics.U0 = require_number(jk, "kinematics", "U0");
    cfg.kinematics.Uh = require_number(jk, "kinematics", "Uh");
    if (!std::isfinite(cfg.kinematics.U0) || !std::isfinite(cfg.kinematics.Uh))
        throw ConfigError("kinematics: wall speeds must be finite");

    // viscosity
    if (!j.contains("viscosity"))
        throw ConfigError("config: missing required section 'viscosity'");
    const json& jv = j["viscosity"];
    reject_unknown_keys(jv, "viscosity", {"kind", "mu0", "alpha", "mu_R", "p_R"});
    if (!jv.contains("kind") || !jv["kind"].is_string())
        throw ConfigError("viscosity.kind is required (constant|barus|roelands)");
    const auto kind = ViscosityModel::kind_from_string(jv["kind"].get<std::string>());
    const double mu0 = require_number(jv, "viscosity", "mu0");
    double alpha = 0.0;
    if (kind != ViscosityModel::Kind::constant)
        alpha = require_number(jv, "viscosity", "alpha");
    else if (jv.contains("alpha"))
        alpha = jv["alpha"].get<double>();
    if (alpha < 0.0)
        throw ConfigError("viscosity.alpha must be nonnegative");
    try {
        switch (kind) {
        case ViscosityModel::Kind::constant:
            cfg.viscosity = ViscosityModel::constant(mu0);
            cfg.viscosity.alpha = alpha;
            break;
        case ViscosityModel::Kind::barus:
            cfg.viscosity = ViscosityModel::barus(mu0, alpha);
            break;
        case ViscosityModel::Kind::roelands:
            cfg.viscosity = ViscosityModel::roelands(
                mu0, alpha, number_or(jv, "viscosity", "mu_R", 6.31e-5, cfg),
                number_or(jv, "viscosity", "p_R", 1.98e8, cfg));
            break;
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("viscosity: ") + e.what());
    }
    if (alpha > 1e-6)
        cfg.warnings.push_back(
            "viscosity.alpha > 1e-6 1/Pa: check units (typical lubricants are 1e-8..4e-8)");

    // solver
    const json js = j.contains("solver") ? j["solver"] : json::object();
    if (!j.contains("solver"))
        cfg.applied_defaults.push_back("solver");
    reject_unknown_keys(js, "solver",
                        {"n_theta", "m_y", "outer_iterations", "pressure_tol",
                         "velocity_tol", "theta2_tol", "slope_tol",
                         "max_fixed_point", "ellipticity_floor", "relaxation",
                         "workers", "rhs_velocity_sum"});
    SolverConfig def;
    cfg.solver.n_theta = int_or(js, "solver", "n_theta", def.n_theta, cfg);
    cfg.solver.m_y = int_or(js, "solver", "m_y", def.m_y, cfg);
    cfg.solver.outer_iterations =
        int_or(js, "solver", "outer_iterations", def.outer_iterations, cfg);
    cfg.solver.pressure_tol =
        number_or(js, "solver", "pressure_tol", def.pressure_tol, cfg);
    cfg.solver.velocity_tol =
        number_or(js, "solver", "velocity_tol", def.velocity_tol, cfg);
    cfg.solver.theta2_tol = number_or(js, "solver", "theta2_tol", def.theta2_tol, cfg);
    cfg.solver.slope_tol = number_or(js, "solver", "slope_tol", def.slope_tol, cfg);
    cfg.solver.max_fixed_point =
        int_or(js, "solver", "max_fixed_point", def.max_fixed_point, cfg);
    cfg.solver.ellipticity_floor =
        number_or(js, "solver", "ellipticity_floor", def.ellipticity_floor, cfg);
    cfg.solver.relaxation = number_or(js, "solver", "relaxation", def.relaxation, cfg);
    cfg.solver.workers = int_or(js, "solver", "workers", def.workers, cfg);
    if (js.contains("rhs_velocity_sum")) {
        if (!js["rhs_velocity_sum"].is_string())
            throw ConfigError("solver.rhs_velocity_sum: expected a string");
        cfg.solver.rhs_velocity_sum =
            rhs_from_string(js["rhs_velocity_sum"].get<std::string>());
    } else {
        cfg.applied_defaults.push_back("solver.rhs_velocity_sum");
    }
    try {
        cfg.solver.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    // variants
    if (j.contains("variants")) {
        if (!j["variants"].is_array() || j["variants"].empty())
            throw ConfigError("variants must be a non-empty array");
        cfg.variants.clear();
        for (const auto& v : j["variants"]) {
            if (!v.is_string())
                throw ConfigError("variants entries must be strings");
            cfg.variants.push_back(variant_from_string(v.get<std::string>()));
        }
    } else {
        cfg.applied_defaults.push_back("variants");
    }

    if (j.contains("output_dir")) {
        if (!j["output_dir"].is_string())
            throw ConfigError("output_dir must be a string");
        cfg.output_dir = j["output_dir"].get<std::string>();
    } else {
        cfg.applied_defaults.push_back("output_dir");
    }

    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("parse error in '" + path + "': " + e.what());
    }
    return parse_config(j);
}

nlohmann::json config_to_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["geometry"] = {{"R", cfg.geometry.R}, {"h0", cfg.geometry.h0}};
    j["kinematics"] = {{"U0", cfg.kinematics.U0}, {"Uh", cfg.kinematics.Uh}};
    nlohmann::json jv = {
        {"kind", ViscosityModel::kind_to_string(cfg.viscosity.kind)},
        {"mu0", cfg.viscosity.mu0},
        {"alpha", cfg.viscosity.alpha},
    };
    if (cfg.viscosity.kind == ViscosityModel::Kind::roelands) {
        jv["mu_R"] = cfg.viscosity.mu_R;
        jv["p_R"] = cfg.viscosity.p_R;
    }
    j["viscosity"] = jv;
    j["solver"] = {
        {"n_theta", cfg.solver.n_theta},
        {"m_y", cfg.solver.m_y},
        {"outer_iterations", cfg.solver.outer_iterations},
        {"pressure_tol", cfg.solver.pressure_tol},
        {"velocity_tol", cfg.solver.velocity_tol},
        {"theta2_tol", cfg.solver.theta2_tol},
        {"slope_tol", cfg.solver.slope_tol},
        {"max_fixed_point", cfg.solver.max_fixed_point},
        {"ellipticity_floor", cfg.solver.ellipticity_floor},
        {"relaxation", cfg.solver.relaxation},
        {"workers", cfg.solver.workers},
        {"rhs_velocity_sum", rhs_to_string(cfg.solver.rhs_velocity_sum)},
    };
    nlohmann::json variants = nlohmann::json::array();
    for (const auto v : cfg.variants)
        variants.push_back(variant_to_string(v));
    j["variants"] = variants;
    j["output_dir"] = cfg.output_dir;
    return j;
}

} // namespace lub
