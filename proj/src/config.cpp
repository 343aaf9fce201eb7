#include "wkbflow/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace wkbflow {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    // Accept plain numbers and simple fractions like 1/16.
    const auto slash = v.find('/');
    try {
        size_t used = 0;
        if (slash != std::string::npos) {
            const double num = std::stod(v.substr(0, slash));
            const double den = std::stod(v.substr(slash + 1));
            if (den == 0.0) throw ConfigError(key + ": division by zero");
            return num / den;
        }
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' has a non-numeric value '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v) {
    const double x = to_double(key, v);
    const int i = static_cast<int>(x);
    if (static_cast<double>(i) != x)
        throw ConfigError("key '" + key + "' must be an integer, got '" + v + "'");
    return i;
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

const std::set<std::string> kRunKeys = {"tier",         "t_end",       "cfl",
                                        "dt",           "csv_cadence", "snapshot_cadence",
                                        "output_dir"};
const std::set<std::string> kGridKeys = {"dim", "length", "n_x", "n_theta"};
const std::set<std::string> kHamKeys = {"hamiltonian", "c_s", "rho_ref"};

// Per-preset accepted [initial] keys beyond "preset" and "eps".
const std::map<std::string, std::set<std::string>> kPresetKeys = {
    {"rest", {"rho0"}},
    {"acoustic-harmonic", {"rho0", "amplitude", "winding", "u0"}},
    {"smooth-flow", {"rho0", "amplitude", "background_amplitude", "u0"}},
    {"slow-manifold-wave",
     {"rho0", "amplitude", "envelope", "winding", "u0", "background_amplitude"}},
    {"wave-packet",
     {"rho0", "winding", "u0", "background_amplitude", "action0", "packet_center",
      "packet_width"}},
    {"wave-train", {"rho0", "winding", "u0", "background_amplitude", "action0"}},
};

} // namespace

const char* tier_name(Tier t) {
    switch (t) {
        case Tier::Base: return "base";
        case Tier::Extended: return "extended";
        case Tier::Reduced: return "reduced";
    }
    return "?";
}

RunConfig parse_config_text(const std::string& text) {
    // First pass: collect (section, key) -> value with duplicate detection.
    std::map<std::string, std::map<std::string, std::string>> sections;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (section.empty())
            throw ConfigError("key '" + key + "' appears before any [section]");
        if (!sections[section].emplace(key, val).second)
            throw ConfigError("duplicate key '" + key + "' in [" + section + "]");
    }

    for (const auto& [name, kv] : sections) {
        (void)kv;
        if (name != "run" && name != "grid" && name != "hamiltonian" && name != "initial")
            throw ConfigError("unknown section [" + name + "]");
    }

    RunConfig cfg;

    // [run]
    if (auto it = sections.find("run"); it != sections.end()) {
        for (const auto& [k, v] : it->second) {
            if (!kRunKeys.count(k)) throw ConfigError("unknown key '" + k + "' in [run]");
            if (k == "tier") {
                if (v == "base") cfg.tier = Tier::Base;
                else if (v == "extended") cfg.tier = Tier::Extended;
                else if (v == "reduced") cfg.tier = Tier::Reduced;
                else throw ConfigError("tier must be base|extended|reduced, got '" + v + "'");
            } else if (k == "t_end") cfg.t_end = to_double(k, v);
            else if (k == "cfl") cfg.cfl = to_double(k, v);
            else if (k == "dt") { cfg.dt = to_double(k, v); cfg.use_fixed_dt = true; }
            else if (k == "csv_cadence") cfg.csv_cadence = to_int(k, v);
            else if (k == "snapshot_cadence") cfg.snapshot_cadence = to_int(k, v);
            else if (k == "output_dir") cfg.output_dir = v;
        }
        if (it->second.count("dt") && it->second.count("cfl"))
            throw ConfigError("dt and cfl are mutually exclusive");
    }
    if (!(cfg.t_end > 0.0)) throw ConfigError("t_end must be > 0");
    if (cfg.use_fixed_dt && !(cfg.dt > 0.0)) throw ConfigError("dt must be > 0");
    if (cfg.csv_cadence < 0 || cfg.snapshot_cadence < 0)
        throw ConfigError("cadences must be >= 0");

    // [grid]
    {
        auto it = sections.find("grid");
        if (it == sections.end()) throw ConfigError("missing [grid] section");
        int dim = 1, n_theta = 32;
        std::vector<std::string> lengths{std::to_string(two_pi)}, nxs{"64"};
        for (const auto& [k, v] : it->second) {
            if (!kGridKeys.count(k)) throw ConfigError("unknown key '" + k + "' in [grid]");
            if (k == "dim") dim = to_int(k, v);
            else if (k == "length") lengths = split_list(v);
            else if (k == "n_x") nxs = split_list(v);
            else if (k == "n_theta") n_theta = to_int(k, v);
        }
        if (dim != static_cast<int>(lengths.size()) || dim != static_cast<int>(nxs.size()))
            throw ConfigError("length and n_x must list one value per axis");
        if (dim == 1)
            cfg.grid = TorusGrid::line(to_double("length", lengths[0]),
                                       to_int("n_x", nxs[0]), n_theta);
        else
            cfg.grid = TorusGrid::plane(to_double("length", lengths[0]),
                                        to_double("length", lengths[1]),
                                        to_int("n_x", nxs[0]), to_int("n_x", nxs[1]),
                                        n_theta);
    }

    // [hamiltonian]
    if (auto it = sections.find("hamiltonian"); it != sections.end()) {
        for (const auto& [k, v] : it->second) {
            if (!kHamKeys.count(k))
                throw ConfigError("unknown key '" + k + "' in [hamiltonian]");
            if (k == "hamiltonian") {
                if (v != "isothermal")
                    throw ConfigError("only the isothermal energy density is built in");
            } else if (k == "c_s") cfg.ham.c_s = to_double(k, v);
            else if (k == "rho_ref") cfg.ham.rho_ref = to_double(k, v);
        }
        cfg.ham.check();
    }

    // [initial]
    if (auto it = sections.find("initial"); it != sections.end()) {
        auto preset_it = it->second.find("preset");
        if (preset_it != it->second.end()) cfg.preset = preset_it->second;
        auto allowed = kPresetKeys.find(cfg.preset);
        if (allowed == kPresetKeys.end())
            throw ConfigError("unknown preset '" + cfg.preset + "'");
        for (const auto& [k, v] : it->second) {
            if (k == "preset") continue;
            if (k == "eps") { cfg.eps = to_double(k, v); continue; }
            if (!allowed->second.count(k))
                throw ConfigError("key '" + k + "' is not accepted by preset '" +
                                  cfg.preset + "'");
            cfg.preset_params[k] = to_double(k, v);
        }
    }
    if (!(cfg.eps > 0.0)) throw ConfigError("eps must be > 0");

    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

} // namespace wkbflow
