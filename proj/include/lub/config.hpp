#pragma once

#include "lub/geometry.hpp"
#include "lub/reynolds.hpp"
#include "lub/solver_config.hpp"
#include "lub/viscosity.hpp"

#include <json.hpp>
#include <string>
#include <vector>

namespace lub {

/// Fully validated run configuration. Unknown keys are rejected (with a
/// nearest-key suggestion); every applied default is recorded so the report
/// can echo it.
struct RunConfig {
    CylinderPlaneGeometry geometry{1.0, 1.0};
    Kinematics kinematics{};
    ViscosityModel viscosity{};
    SolverConfig solver{};
    std::vector<ModelVariant> variants{ModelVariant::classical,
                                       ModelVariant::piezo,
                                       ModelVariant::modified};
    std::string output_dir = "out";

    std::vector<std::string> applied_defaults;  // not part of equality
    std::vector<std::string> warnings;          // unit-sanity notes

    bool operator==(const RunConfig& other) const;
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& cfg);

} // namespace lub
