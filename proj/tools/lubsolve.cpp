#include "lub/config.hpp"
#include "lub/errors.hpp"
#include "lub/io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"Thin-film lubrication solver for a rigid cylinder on a plane:\n"
                 "classical, piezoviscous and shear-corrected Reynolds equations\n"
                 "with the Swift-Stieber free exit boundary."};
    app.require_subcommand(1);

    std::string config_path, out_override, variant_name, grid_path;
    int workers_override = -1;

    auto* solve = app.add_subcommand("solve", "Run one model variant");
    solve->add_option("--config", config_path, "JSON configuration file")->required();
    solve->add_option("--variant", variant_name, "classical|piezo|modified")->required();
    solve->add_option("--out", out_override, "Output directory (default from config)");

    auto* compare = app.add_subcommand("compare", "Run all configured variants");
    compare->add_option("--config", config_path, "JSON configuration file")->required();
    compare->add_option("--out", out_override, "Output directory (default from config)");

    auto* sweep = app.add_subcommand("sweep", "Parameter sweep over alpha and h0/R");
    sweep->add_option("--config", config_path, "JSON configuration file")->required();
    sweep->add_option("--grid", grid_path, "JSON grid file")->required();
    sweep->add_option("--out", out_override, "Output directory (default from config)");
    sweep->add_option("--workers", workers_override, "Worker thread count");

    CLI11_PARSE(app, argc, argv);

    try {
        lub::RunConfig cfg = lub::load_config(config_path);
        if (workers_override >= 0)
            cfg.solver.workers = workers_override;
        const std::string out_dir = out_override.empty() ? cfg.output_dir : out_override;
        for (const auto& w : cfg.warnings)
            std::fprintf(stderr, "warning: %s\n", w.c_str());

        if (*solve)
            return lub::cmd_solve(cfg, lub::variant_from_string(variant_name), out_dir);
        if (*compare)
            return lub::cmd_compare(cfg, out_dir);
        if (*sweep)
            return lub::cmd_sweep(cfg, lub::load_grid(grid_path), out_dir);
    } catch (const lub::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const lub::SolverError& e) {
        std::fprintf(stderr, "error [%s]: %s\n", e.kind().c_str(), e.what());
        return e.kind() == "ellipticity_loss" ? 3 : 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
