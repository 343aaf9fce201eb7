#pragma once

#include "wkbflow/presets.hpp"

namespace wkbflow {

struct RunResult {
    int steps = 0;
    double t = 0.0;
    std::string csv_path;
};

/// Executes the configured tier: advances to t_end, writes the time-series
/// CSV (17-significant-digit round-trip precision, fixed column order) and
/// field snapshots in the output directory. Deterministic: identical configs
/// produce byte-identical CSV output.
RunResult run_simulation(const RunConfig& cfg);

/// Cross-tier comparison: for each eps, the full tier is initialized from
/// the slow-manifold wave preset (the base tier through reconstruction) and
/// the reduced tier from the matching mean fields and wave action. Reports
/// the worst relative L2 error of the mean fields over the checkpoints and
/// the fitted log-log slope of the error against eps. Mean extraction from
/// base-tier runs uses local phase averaging over two wavelength windows;
/// both sides are filtered identically before comparison.
struct CompareReport {
    std::vector<double> eps_list;
    std::vector<double> errors;
    double slope = 0.0;
};

CompareReport compare_full_reduced(const RunConfig& cfg_full,
                                   const RunConfig& cfg_reduced,
                                   const std::vector<double>& eps_list);

/// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Thread cap for parameter sweeps (WKBFLOW_THREADS, default hardware).
int sweep_thread_cap();

} // namespace wkbflow
