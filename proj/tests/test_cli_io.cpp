#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lub/config.hpp"
#include "lub/errors.hpp"
#include "lub/io.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>
#include <fstream>
#include <sstream>

using namespace lub;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json minimal_config() {
    return json{
        {"geometry", {{"R", 1e-2}, {"h0", 1e-6}}},
        {"kinematics", {{"U0", 0.0}, {"Uh", 1.0}}},
        {"viscosity", {{"kind", "barus"}, {"mu0", 0.158}, {"alpha", 5.59e-8}}},
    };
}

json small_run_config() {
    json j = minimal_config();
    j["solver"] = {{"n_theta", 300}, {"m_y", 20}, {"outer_iterations", 3},
                   {"theta2_tol", 1e-4}};
    return j;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("lub_test_" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("minimal config applies documented defaults") {
    const RunConfig cfg = parse_config(minimal_config());
    CHECK(cfg.solver.n_theta == 10000);
    CHECK(cfg.solver.m_y == 50);
    CHECK(cfg.solver.outer_iterations == 9);
    CHECK(cfg.variants.size() == 3);
    // defaults are echoed
    bool found = false;
    for (const auto& d : cfg.applied_defaults)
        if (d == "solver") found = true;
    CHECK(found);
}

TEST_CASE("validation failures") {
    SUBCASE("negative alpha") {
        json j = minimal_config();
        j["viscosity"]["alpha"] = -1.0;
        CHECK_THROWS_AS(parse_config(j), ConfigError);
    }
    SUBCASE("unknown key with suggestion") {
        json j = minimal_config();
        j["viscocity"] = j["viscosity"];
        j.erase("viscosity");
        try {
            parse_config(j);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            const std::string msg = e.what();
            CHECK(msg.find("viscocity") != std::string::npos);
            CHECK(msg.find("viscosity") != std::string::npos);
        }
    }
    SUBCASE("missing section") {
        json j = minimal_config();
        j.erase("geometry");
        CHECK_THROWS_AS(parse_config(j), ConfigError);
    }
    SUBCASE("bad variant name") {
        json j = minimal_config();
        j["variants"] = {"classic"};
        CHECK_THROWS_AS(parse_config(j), ConfigError);
    }
    SUBCASE("unit sanity warning for huge alpha") {
        json j = minimal_config();
        j["viscosity"]["alpha"] = 1e-5;
        const RunConfig cfg = parse_config(j);
        CHECK_FALSE(cfg.warnings.empty());
    }
}

TEST_CASE("config echo round-trips") {
    json j = small_run_config();
    j["variants"] = {"piezo", "modified"};
    j["output_dir"] = "results";
    const RunConfig cfg = parse_config(j);
    const RunConfig again = parse_config(config_to_json(cfg));
    CHECK(cfg == again);
}

TEST_CASE("cmd_solve writes artifacts and exit codes") {
    TempDir tmp;

    SUBCASE("successful piezo run") {
        const RunConfig cfg = parse_config(small_run_config());
        const int code = cmd_solve(cfg, ModelVariant::piezo, (tmp.path / "out").string());
        CHECK(code == 0);
        const fs::path dir = tmp.path / "out" / "piezo";
        CHECK(fs::exists(dir / "pressure.csv"));
        CHECK(fs::exists(dir / "viscosity.csv"));
        CHECK(fs::exists(dir / "convergence.csv"));
        CHECK(fs::exists(dir / "report.json"));
        CHECK_FALSE(fs::exists(dir / "velocity.csv"));  // modified only

        const json report = json::parse(read_file(dir / "report.json"));
        CHECK(report["theta2_rad"].get<double>() > 0.0);
        CHECK(report["p_max_Pa"].get<double>() > 0.0);
        CHECK(report["mu_max_Pas"].get<double>() >= 0.158);
        // every referenced artifact exists
        for (const auto& a : report["artifacts"])
            CHECK(fs::exists(dir / a.get<std::string>()));
        // config echo re-parses to an identical config
        const RunConfig echoed = parse_config(report["config"]);
        CHECK(echoed == cfg);
    }

    SUBCASE("zero entrainment exits 2") {
        json j = small_run_config();
        j["kinematics"] = {{"U0", 0.0}, {"Uh", 0.0}};
        const RunConfig cfg = parse_config(j);
        const int code = cmd_solve(cfg, ModelVariant::classical,
                                   (tmp.path / "out").string());
        CHECK(code == 2);
        const json report =
            json::parse(read_file(tmp.path / "out" / "classical" / "report.json"));
        CHECK(report["error"]["kind"] == "zero_entrainment");
    }

    SUBCASE("modified run writes the velocity field") {
        json j = small_run_config();
        j["solver"]["outer_iterations"] = 2;
        const RunConfig cfg = parse_config(j);
        const int code = cmd_solve(cfg, ModelVariant::modified,
                                   (tmp.path / "out").string());
        CHECK(code == 0);
        CHECK(fs::exists(tmp.path / "out" / "modified" / "velocity.csv"));
    }
}

TEST_CASE("csv output is deterministic across runs and worker counts") {
    TempDir tmp;
    json j = small_run_config();
    j["solver"]["outer_iterations"] = 2;

    json j1 = j;
    j1["solver"]["workers"] = 1;
    json j8 = j;
    j8["solver"]["workers"] = 8;

    cmd_solve(parse_config(j1), ModelVariant::modified, (tmp.path / "a").string());
    cmd_solve(parse_config(j8), ModelVariant::modified, (tmp.path / "b").string());
    cmd_solve(parse_config(j1), ModelVariant::modified, (tmp.path / "c").string());

    const auto a = read_file(tmp.path / "a" / "modified" / "velocity.csv");
    const auto b = read_file(tmp.path / "b" / "modified" / "velocity.csv");
    const auto c = read_file(tmp.path / "c" / "modified" / "velocity.csv");
    CHECK(a == b);
    CHECK(a == c);
    CHECK(read_file(tmp.path / "a" / "modified" / "pressure.csv") ==
          read_file(tmp.path / "b" / "modified" / "pressure.csv"));
}

TEST_CASE("cmd_compare") {
    TempDir tmp;

    SUBCASE("two identical variants give ratio one") {
        json j = small_run_config();
        j["variants"] = {"piezo", "piezo"};
        const RunConfig cfg = parse_config(j);
        const int code = cmd_compare(cfg, (tmp.path / "cmp").string());
        CHECK(code == 0);
        const json report =
            json::parse(read_file(tmp.path / "cmp" / "comparison_report.json"));
        CHECK(report["p_max_ratios"]["piezo_over_piezo"].get<double>() ==
              doctest::Approx(1.0));
    }

    SUBCASE("three-variant comparison emits one pressure column each") {
        json j = small_run_config();
        j["solver"]["outer_iterations"] = 2;
        const RunConfig cfg = parse_config(j);
        const int code = cmd_compare(cfg, (tmp.path / "cmp3").string());
        CHECK(code == 0);
        std::ifstream in(tmp.path / "cmp3" / "comparison.csv");
        std::string header;
        std::getline(in, header);
        CHECK(header == "theta_rad,p_classical_Pa,p_piezo_Pa,p_modified_Pa");
    }

    SUBCASE("fewer than two variants is a config error") {
        json j = small_run_config();
        j["variants"] = {"piezo"};
        CHECK_THROWS_AS(cmd_compare(parse_config(j), (tmp.path / "x").string()),
                        ConfigError);
    }
}

TEST_CASE("command line binary") {
    const char* bin = std::getenv("LUBSOLVE_BIN");
    REQUIRE(bin != nullptr);
    TempDir tmp;
    std::ofstream(tmp.path / "run.json") << small_run_config().dump(2);
    std::ofstream(tmp.path / "grid.json")
        << R"({"alpha":[5.59e-8],"h0_over_R":[1e-4]})";

    const auto run = [&](const std::string& args) {
        const std::string cmd =
            std::string("\"") + bin + "\" " + args + " >/dev/null 2>&1";
        return WEXITSTATUS(std::system(cmd.c_str()));
    };
    const std::string cfg = (tmp.path / "run.json").string();

    CHECK(run("solve --config " + cfg + " --variant piezo --out " +
              (tmp.path / "o").string()) == 0);
    CHECK(fs::exists(tmp.path / "o" / "piezo" / "report.json"));
    CHECK(run("solve --config " + (tmp.path / "missing.json").string() +
              " --variant piezo --out " + (tmp.path / "o2").string()) == 1);
    CHECK(run("solve --config " + cfg + " --variant bogus --out " +
              (tmp.path / "o3").string()) == 1);
    CHECK(run("sweep --config " + cfg + " --grid " +
              (tmp.path / "grid.json").string() + " --out " +
              (tmp.path / "sw").string()) == 0);
    CHECK(fs::exists(tmp.path / "sw" / "sweep.csv"));
}

TEST_CASE("cmd_sweep") {
    TempDir tmp;

    SUBCASE("degenerate 1x1 grid matches a direct solve") {
        json j = small_run_config();
        j["variants"] = {"piezo"};
        const RunConfig cfg = parse_config(j);
        SweepGrid grid;
        grid.alpha = {5.59e-8};
        grid.h0_over_R = {1e-4};
        CHECK(cmd_sweep(cfg, grid, (tmp.path / "sw").string()) == 0);
        const std::string csv = read_file(tmp.path / "sw" / "sweep.csv");
        CHECK(csv.find("piezo") != std::string::npos);
        CHECK(csv.find("true") != std::string::npos);
        // two lines: header + one row
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
    }

    SUBCASE("failing cell is flagged, sweep continues") {
        json j = small_run_config();
        j["variants"] = {"modified"};
        j["solver"]["outer_iterations"] = 3;
        const RunConfig cfg = parse_config(j);
        SweepGrid grid;
        grid.alpha = {5.59e-8, 5e-6};  // second cell trips the guard
        grid.h0_over_R = {1e-4};
        CHECK(cmd_sweep(cfg, grid, (tmp.path / "sw2").string()) == 0);
        const std::string csv = read_file(tmp.path / "sw2" / "sweep.csv");
        CHECK(csv.find("false") != std::string::npos);
        CHECK(csv.find("true") != std::string::npos);
    }
}
