#include "lub/io.hpp"
#include "lub/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>

namespace lub {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

int exit_code_for(const SolverError& e) {
    if (e.kind() == "config") return 1;
    if (e.kind() == "ellipticity_loss") return 3;
    return 2;
}

SolverConfig effective_solver(const RunConfig& cfg) {
    SolverConfig s = cfg.solver;
    if (const char* env = std::getenv("LUBSOLVE_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v >= 0)
            s.workers = static_cast<int>(v);
    }
    return s;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p, std::ios::binary);  // LF line endings everywhere
    if (!out)
        throw SolverError("io", "cannot open output file '" + p.string() + "'");
    return out;
}

// Pressure sampled at an arbitrary angle, zero past theta2.
double sample_pressure(const PressureSolution& sol, double theta) {
    if (theta >= sol.mesh.b)
        return 0.0;
    const double s = (theta - sol.mesh.a) / sol.mesh.dx();
    int e = static_cast<int>(std::floor(s));
    e = std::min(std::max(e, 0), sol.mesh.n_elems - 1);
    const double t = s - e;
    return (1.0 - t) * sol.p[e] + t * sol.p[e + 1];
}

void write_pressure_csv(const fs::path& path, const PressureSolution& sol,
                        const ViscosityModel& model) {
    auto out = open_out(path);
    out << "theta_rad,p_Pa,mu_Pas\n";
    const auto mu_at = [&](double p) {
        return sol.variant == ModelVariant::classical ? model.mu0 : model.mu(p);
    };
    for (int i = 0; i < sol.mesh.n_nodes(); ++i)
        out << format_double(sol.mesh.node(i)) << ','
            << format_double(sol.p[i]) << ','
            << format_double(mu_at(sol.p[i])) << '\n';
    // zero extension over the cavitation region up to pi/2
    const double dx = sol.mesh.dx();
    for (double theta = sol.mesh.b + dx; theta <= kHalfPi + 1e-15; theta += dx)
        out << format_double(std::min(theta, kHalfPi)) << ','
            << format_double(0.0) << ','
            << format_double(mu_at(0.0)) << '\n';
}

void write_viscosity_csv(const fs::path& path, const PressureSolution& sol,
                         const ViscosityModel& model) {
    auto out = open_out(path);
    out << "theta_rad,mu_Pas\n";
    const auto mu_at = [&](double p) {
        return sol.variant == ModelVariant::classical ? model.mu0 : model.mu(p);
    };
    for (int i = 0; i < sol.mesh.n_nodes(); ++i)
        out << format_double(sol.mesh.node(i)) << ','
            << format_double(mu_at(sol.p[i])) << '\n';
    const double dx = sol.mesh.dx();
    for (double theta = sol.mesh.b + dx; theta <= kHalfPi + 1e-15; theta += dx)
        out << format_double(std::min(theta, kHalfPi)) << ','
            << format_double(mu_at(0.0)) << '\n';
}

void write_velocity_csv(const fs::path& path, const VelocityField& field) {
    auto out = open_out(path);
    out << "theta_rad,y_m,u_mps\n";
    for (std::size_t s = 0; s < field.profiles.size(); ++s) {
        const VelocityProfile& prof = field.profiles[s];
        for (int j = 0; j < prof.y_mesh.n_nodes(); ++j)
            out << format_double(field.stations[s]) << ','
                << format_double(prof.y_mesh.node(j)) << ','
                << format_double(prof.u[j]) << '\n';
    }
}

void write_convergence_csv(const fs::path& path, const OuterResult& res) {
    auto out = open_out(path);
    out << "iteration,l2_diff_Pa,theta2_rad,p_max_Pa\n";
    for (std::size_t k = 0; k < res.iter_theta2.size(); ++k) {
        out << (k + 1) << ',';
        if (k > 0 && k - 1 < res.diff_history.size())
            out << format_double(res.diff_history[k - 1]);
        out << ',' << format_double(res.iter_theta2[k]) << ','
            << format_double(res.iter_p_max[k]) << '\n';
    }
}

json result_json(const OuterResult& res, ModelVariant variant) {
    json j;
    j["variant"] = variant_to_string(variant);
    j["theta2_rad"] = res.theta2;
    j["p_max_Pa"] = res.p_max;
    j["mu_max_Pas"] = res.mu_max;
    j["min_coefficient"] = res.min_coefficient;
    j["diff_history"] = res.diff_history;
    j["outer_iterations"] = res.outer_iters;
    j["wall_time_s"] = res.wall_time_s;
    return j;
}

json config_echo(const RunConfig& cfg) {
    json j = config_to_json(cfg);
    return j;
}

// Per-variant artifact set under out_dir/<variant>/.
void write_variant_artifacts(const fs::path& out_dir, const RunConfig& cfg,
                             ModelVariant variant, const OuterResult& res) {
    const fs::path dir = out_dir / variant_to_string(variant);
    fs::create_directories(dir);

    std::vector<std::string> artifacts;
    write_pressure_csv(dir / "pressure.csv", res.pressure, cfg.viscosity);
    artifacts.push_back("pressure.csv");
    write_viscosity_csv(dir / "viscosity.csv", res.pressure, cfg.viscosity);
    artifacts.push_back("viscosity.csv");
    if (variant == ModelVariant::modified) {
        write_velocity_csv(dir / "velocity.csv", res.velocity);
        artifacts.push_back("velocity.csv");
    }
    write_convergence_csv(dir / "convergence.csv", res);
    artifacts.push_back("convergence.csv");

    json report;
    report["config"] = config_echo(cfg);
    report["applied_defaults"] = cfg.applied_defaults;
    report["warnings"] = cfg.warnings;
    report.update(result_json(res, variant));
    report["artifacts"] = artifacts;
    auto out = open_out(dir / "report.json");
    out << report.dump(2) << '\n';
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::scientific);
    return std::string(buf, r.ptr);
}

SweepGrid load_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open grid file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("parse error in '" + path + "': " + e.what());
    }
    if (!j.is_object() || !j.contains("alpha") || !j.contains("h0_over_R"))
        throw ConfigError("grid file must contain arrays 'alpha' and 'h0_over_R'");
    SweepGrid grid;
    for (const auto& a : j["alpha"]) grid.alpha.push_back(a.get<double>());
    for (const auto& r : j["h0_over_R"]) grid.h0_over_R.push_back(r.get<double>());
    if (grid.alpha.empty() || grid.h0_over_R.empty())
        throw ConfigError("grid arrays must be non-empty");
    return grid;
}

int cmd_solve(const RunConfig& cfg, ModelVariant variant, const std::string& out_dir) {
    const fs::path dir = fs::path(out_dir) / variant_to_string(variant);
    fs::create_directories(dir);

    RunConfig run = cfg;
    run.solver = effective_solver(cfg);

    try {
        const OuterResult res = outer_solve(run.geometry, run.kinematics,
                                            run.viscosity, variant, run.solver);
        write_variant_artifacts(out_dir, run, variant, res);
        return 0;
    } catch (const SolverError& e) {
        json report;
        report["config"] = config_echo(cfg);
        report["applied_defaults"] = cfg.applied_defaults;
        report["warnings"] = cfg.warnings;
        report["error"] = {{"kind", e.kind()}, {"message", e.what()}};
        auto out = open_out(dir / "report.json");
        out << report.dump(2) << '\n';
        return exit_code_for(e);
    }
}

int cmd_compare(const RunConfig& cfg, const std::string& out_dir) {
    if (cfg.variants.size() < 2)
        throw ConfigError("compare needs at least two variants");
    fs::create_directories(out_dir);

    RunConfig run = cfg;
    run.solver = effective_solver(cfg);

    struct Entry {
        ModelVariant variant;
        bool ok = false;
        OuterResult result;
        std::string error_kind, error_message;
        int code = 0;
    };
    std::vector<Entry> entries;

    int exit_code = 0;
    for (const auto variant : cfg.variants) {
        Entry e;
        e.variant = variant;
        try {
            e.result = outer_solve(run.geometry, run.kinematics, run.viscosity,
                                   variant, run.solver);
            e.ok = true;
            write_variant_artifacts(out_dir, run, variant, e.result);
        } catch (const SolverError& err) {
            e.error_kind = err.kind();
            e.error_message = err.what();
            e.code = exit_code_for(err);
        }
        exit_code = std::max(exit_code, e.code);
        entries.push_back(std::move(e));
    }

    // common reference grid over the full window, zero-extended past theta2
    {
        auto out = open_out(fs::path(out_dir) / "comparison.csv");
        out << "theta_rad";
        for (const auto& e : entries)
            if (e.ok)
                out << ",p_" << variant_to_string(e.variant) << "_Pa";
        out << '\n';
        const int n = run.solver.n_theta;
        for (int i = 0; i <= n; ++i) {
            const double theta = -kHalfPi + (2.0 * kHalfPi) * i / n;
            out << format_double(theta);
            for (const auto& e : entries)
                if (e.ok)
                    out << ',' << format_double(sample_pressure(e.result.pressure, theta));
            out << '\n';
        }
    }

    json report;
    report["config"] = config_echo(cfg);
    json per_variant = json::object();
    for (const auto& e : entries) {
        if (e.ok) {
            per_variant[variant_to_string(e.variant)] = result_json(e.result, e.variant);
        } else {
            per_variant[variant_to_string(e.variant)] = {
                {"error", {{"kind", e.error_kind}, {"message", e.error_message}}}};
        }
    }
    report["variants"] = per_variant;

    json ratios = json::object();
    for (const auto& a : entries)
        for (const auto& b : entries) {
            if (&a == &b || !a.ok || !b.ok || b.result.p_max == 0.0)
                continue;
            const std::string key = variant_to_string(a.variant) + "_over_" +
                                    variant_to_string(b.variant);
            ratios[key] = a.result.p_max / b.result.p_max;
        }
    report["p_max_ratios"] = ratios;

    auto out = open_out(fs::path(out_dir) / "comparison_report.json");
    out << report.dump(2) << '\n';
    return exit_code;
}

int cmd_sweep(const RunConfig& cfg, const SweepGrid& grid, const std::string& out_dir) {
    fs::create_directories(out_dir);
    auto out = open_out(fs::path(out_dir) / "sweep.csv");
    out << "alpha_invPa,h0_over_R,variant,theta2_rad,p_max_Pa,mu_max_Pas,converged\n";

    RunConfig base = cfg;
    base.solver = effective_solver(cfg);

    for (const double alpha : grid.alpha) {
        for (const double ratio : grid.h0_over_R) {
            if (!(ratio > 0.0))
                throw ConfigError("sweep: h0_over_R values must be positive");
            if (alpha < 0.0)
                throw ConfigError("sweep: alpha values must be nonnegative");
            const CylinderPlaneGeometry geom(base.geometry.R, ratio * base.geometry.R);
            ViscosityModel model = base.viscosity;
            model.alpha = alpha;
            for (const auto variant : cfg.variants) {
                out << format_double(alpha) << ',' << format_double(ratio) << ','
                    << variant_to_string(variant) << ',';
                try {
                    const OuterResult res = outer_solve(geom, base.kinematics, model,
                                                        variant, base.solver);
                    out << format_double(res.theta2) << ','
                        << format_double(res.p_max) << ','
                        << format_double(res.mu_max) << ",true\n";
                } catch (const SolverError&) {
                    out << ",,,false\n";
                }
            }
        }
    }
    return 0;
}

} // namespace lub
