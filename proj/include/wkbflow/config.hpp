#pragma once

#include <map>
#include <string>

#include "wkbflow/grid.hpp"
#include "wkbflow/hamiltonian.hpp"

namespace wkbflow {

enum class Tier { Base, Extended, Reduced };

/// Parsed run configuration. The file format is flat `key = value` pairs
/// under `[section]` headers, `#` comments; unknown sections or keys are
/// errors (see docs/config.md for the full key list).
struct RunConfig {
    Tier tier = Tier::Base;

    double t_end = 1.0;
    double cfl = default_cfl; // exclusive with dt
    double dt = 0.0;
    bool use_fixed_dt = false;
    int csv_cadence = 1;      // steps between time-series rows
    int snapshot_cadence = 0; // steps between snapshots; 0 = final only
    std::string output_dir = "out";

    TorusGrid grid = TorusGrid::line(two_pi, 64, 32);
    IsothermalParams ham{};

    std::string preset = "rest";
    double eps = 1.0;
    std::map<std::string, double> preset_params;

    double preset_param(const std::string& key, double fallback) const {
        auto it = preset_params.find(key);
        return it == preset_params.end() ? fallback : it->second;
    }
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

const char* tier_name(Tier t);

} // namespace wkbflow
