#include "wkbflow/run.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "wkbflow/slow_manifold.hpp"
#include "wkbflow/snapshot.hpp"

namespace wkbflow {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns)
        : out_(path) {
        if (!out_) throw ConfigError("cannot open CSV for writing: " + path);
        for (size_t i = 0; i < columns.size(); ++i)
            out_ << (i ? "," : "") << columns[i];
        out_ << "\n";
    }
    void row(const std::vector<double>& values) {
        for (size_t i = 0; i < values.size(); ++i)
            out_ << (i ? "," : "") << fmt17(values[i]);
        out_ << "\n";
    }

private:
    std::ofstream out_;
};

std::string snap_name(const std::string& dir, int index, const std::string& field) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "snap_%06d_", index);
    return dir + "/" + buf + field + ".wkbf";
}

double min_grad_s(const PhaseField& S) {
    return field_min(S.gradient_norm());
}

RunResult run_base_tier(const RunConfig& cfg, const std::string& dir) {
    HamiltonianSpec H = isothermal_hamiltonian(cfg.ham);
    BaseState s = make_base_preset(cfg);

    CsvWriter csv(dir + "/series.csv", {"t", "mass", "momentum", "energy", "circulation"});
    json meta;
    meta["tier"] = "base";
    meta["snapshots"] = json::array();

    auto emit_row = [&](const BaseState& st) {
        csv.row({st.t, total_mass(st), total_momentum(st, 0), total_energy(st, H),
                 circulation_base(st)});
    };
    auto emit_snap = [&](const BaseState& st, int index) {
        write_snapshot(snap_name(dir, index, "rho"), st.rho);
        write_snapshot(snap_name(dir, index, "p0"), st.p[0]);
        write_snapshot(snap_name(dir, index, "chi"), st.chi);
        write_snapshot(snap_name(dir, index, "h0"), st.h_disp[0]);
        meta["snapshots"].push_back({{"index", index}, {"t", st.t}});
    };

    emit_row(s);
    int step = 0, snap = 0;
    while (s.t < cfg.t_end * (1.0 - 1e-12)) {
        double dt = cfg.use_fixed_dt ? cfg.dt : cfl_limit_base(s, H, cfg.cfl);
        dt = std::min(dt, cfg.t_end - s.t);
        s = step_rk4(s, H, dt);
        ++step;
        if (cfg.csv_cadence > 0 && step % cfg.csv_cadence == 0) emit_row(s);
        if (cfg.snapshot_cadence > 0 && step % cfg.snapshot_cadence == 0)
            emit_snap(s, snap++);
    }
    if (cfg.csv_cadence == 0 || step % std::max(1, cfg.csv_cadence) != 0) emit_row(s);
    emit_snap(s, snap++);
    std::ofstream(dir + "/run_meta.json") << meta.dump(2) << "\n";
    return {step, s.t, dir + "/series.csv"};
}

RunResult run_extended_tier(const RunConfig& cfg, const std::string& dir) {
    HamiltonianSpec H = isothermal_hamiltonian(cfg.ham);
    PhaseClosure closure = acoustic_eikonal_closure(cfg.ham.c_s);
    ExtendedState s = make_extended_preset(cfg);

    CsvWriter csv(dir + "/series.csv",
                  {"t", "mass", "momentum", "energy", "wave_action_mean",
                   "circulation_theta_min", "circulation_theta_max", "min_grad_S"});
    json meta;
    meta["tier"] = "extended";
    meta["eps"] = s.eps;
    meta["S_winding"] = s.S.winding[0];
    meta["snapshots"] = json::array();

    auto emit_row = [&](const ExtendedState& st) {
        std::vector<double> circ = circulation_family(st, st.grid().n_theta);
        double cmin = circ[0], cmax = circ[0];
        for (double c : circ) {
            cmin = std::min(cmin, c);
            cmax = std::max(cmax, c);
        }
        csv.row({st.t, total_mass_extended(st), total_momentum_extended(st, 0),
                 total_energy_extended(st, H),
                 integral(theta_average(specific_wave_action(st))), cmin, cmax,
                 min_grad_s(st.S)});
    };
    auto emit_snap = [&](const ExtendedState& st, int index) {
        write_snapshot(snap_name(dir, index, "rho"), st.rho);
        write_snapshot(snap_name(dir, index, "p0"), st.p[0]);
        write_snapshot(snap_name(dir, index, "chi"), st.chi);
        write_snapshot(snap_name(dir, index, "h0"), st.h_disp[0]);
        write_snapshot(snap_name(dir, index, "S_periodic"), st.S.periodic);
        meta["snapshots"].push_back({{"index", index}, {"t", st.t}});
    };

    emit_row(s);
    int step = 0, snap = 0;
    while (s.t < cfg.t_end * (1.0 - 1e-12)) {
        double dt = cfg.use_fixed_dt ? cfg.dt : cfl_limit_extended(s, H, closure, cfg.cfl);
        dt = std::min(dt, cfg.t_end - s.t);
        s = step_extended(s, H, closure, dt);
        ++step;
        if (cfg.csv_cadence > 0 && step % cfg.csv_cadence == 0) emit_row(s);
        if (cfg.snapshot_cadence > 0 && step % cfg.snapshot_cadence == 0)
            emit_snap(s, snap++);
    }
    if (cfg.csv_cadence == 0 || step % std::max(1, cfg.csv_cadence) != 0) emit_row(s);
    emit_snap(s, snap++);
    std::ofstream(dir + "/run_meta.json") << meta.dump(2) << "\n";
    return {step, s.t, dir + "/series.csv"};
}

RunResult run_reduced_tier(const RunConfig& cfg, const std::string& dir) {
    MeanWaveState s = make_reduced_preset(cfg);

    CsvWriter csv(dir + "/series.csv", {"t", "mass", "momentum", "wave_action_total",
                                        "mean_circulation", "min_grad_S"});
    json meta;
    meta["tier"] = "reduced";
    meta["eps"] = s.eps;
    meta["S_winding"] = s.S.winding[0];
    meta["snapshots"] = json::array();

    auto emit_row = [&](const MeanWaveState& st) {
        csv.row({st.t, integral(st.rho_bar), integral(st.p_bar[0]),
                 total_wave_action(st), mean_circulation(st), min_grad_s(st.S)});
    };
    auto emit_snap = [&](const MeanWaveState& st, int index) {
        write_snapshot(snap_name(dir, index, "rho_bar"), st.rho_bar);
        write_snapshot(snap_name(dir, index, "p0"), st.p_bar[0]);
        write_snapshot(snap_name(dir, index, "chi_bar"), st.chi_bar);
        write_snapshot(snap_name(dir, index, "action"), st.action);
        write_snapshot(snap_name(dir, index, "S_periodic"), st.S.periodic);
        meta["snapshots"].push_back({{"index", index}, {"t", st.t}});
    };

    emit_row(s);
    int step = 0, snap = 0;
    while (s.t < cfg.t_end * (1.0 - 1e-12)) {
        double dt = cfg.use_fixed_dt ? cfg.dt : cfl_limit_reduced(s, cfg.ham, cfg.cfl);
        dt = std::min(dt, cfg.t_end - s.t);
        s = step_reduced(s, cfg.ham, dt);
        ++step;
        if (cfg.csv_cadence > 0 && step % cfg.csv_cadence == 0) emit_row(s);
        if (cfg.snapshot_cadence > 0 && step % cfg.snapshot_cadence == 0)
            emit_snap(s, snap++);
    }
    if (cfg.csv_cadence == 0 || step % std::max(1, cfg.csv_cadence) != 0) emit_row(s);
    emit_snap(s, snap++);
    std::ofstream(dir + "/run_meta.json") << meta.dump(2) << "\n";
    return {step, s.t, dir + "/series.csv"};
}

/// L2 error of `got` against `want`, normalized by the L2 size of `scale`
/// (mean fields are measured against themselves, momenta against the
/// acoustic momentum scale c_s rho so a sign-changing mean flow cannot
/// zero the denominator).
double scaled_l2_err(const ScalarField& got, const ScalarField& want,
                     const ScalarField& scale) {
    double num = 0.0, den = 0.0;
    for (int k = 0; k < got.size(); ++k) {
        num += (got[k] - want[k]) * (got[k] - want[k]);
        den += scale[k] * scale[k];
    }
    return std::sqrt(num / std::max(den, 1e-300));
}

} // namespace

RunResult run_simulation(const RunConfig& cfg) {
    if (cfg.grid.dim != 1)
        throw ConfigError("simulation runs support dim = 1 (operators support dim 2)");
    fs::create_directories(cfg.output_dir);
    switch (cfg.tier) {
        case Tier::Base: return run_base_tier(cfg, cfg.output_dir);
        case Tier::Extended: return run_extended_tier(cfg, cfg.output_dir);
        case Tier::Reduced: return run_reduced_tier(cfg, cfg.output_dir);
    }
    throw ConfigError("unreachable tier");
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(std::max(y[i], 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

int sweep_thread_cap() {
    if (const char* env = std::getenv("WKBFLOW_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

CompareReport compare_full_reduced(const RunConfig& cfg_full,
                                   const RunConfig& cfg_reduced,
                                   const std::vector<double>& eps_list) {
    if (cfg_full.grid != cfg_reduced.grid)
        throw ConfigError("comparison requires matching grids");
    if (cfg_reduced.tier != Tier::Reduced)
        throw ConfigError("second config must run the reduced tier");
    if (cfg_full.tier == Tier::Reduced)
        throw ConfigError("first config must run the base or extended tier");
    if (eps_list.empty()) throw ConfigError("empty eps list");

    const int n_checkpoints = 5;
    const bool from_base = cfg_full.tier == Tier::Base;
    HamiltonianSpec H = isothermal_hamiltonian(cfg_full.ham);
    PhaseClosure closure = acoustic_eikonal_closure(cfg_full.ham.c_s);

    auto error_for_eps = [&](double eps) {
        RunConfig cfg = cfg_full;
        cfg.eps = eps;
        WavePresetFields f = make_wave_preset_fields(cfg);
        f.mean.eps = eps;
        MeanWaveState red = f.mean;
        red.action =
            wave_action_from_fluctuations(f.mean.rho_bar, f.rho_hat, f.mean.S, cfg.ham);
        ExtendedState ext = init_slow_manifold(f.mean, f.rho_hat, eps, cfg.ham);

        BaseState base(cfg.grid);
        if (from_base) {
            ReconstructedFields rec = reconstruct(ext);
            base.rho = rec.rho;
            base.p = rec.p;
            base.validate();
        }

        // Phase-average window: two wavelengths of the fast carrier.
        const double k_phase = two_pi * std::abs(f.mean.S.winding[0]) / cfg.grid.length[0];
        const double window = 2.0 * two_pi * eps / k_phase;

        double worst = 0.0;
        const double t_end = cfg_full.t_end;
        for (int c = 1; c <= n_checkpoints; ++c) {
            const double target = t_end * c / n_checkpoints;
            while (red.t < target * (1.0 - 1e-12)) {
                const double dt = std::min(cfl_limit_reduced(red, cfg.ham, cfg.cfl),
                                           target - red.t);
                red = step_reduced(red, cfg.ham, dt);
            }
            ScalarField rho_full(cfg.grid), p_full(cfg.grid);
            if (from_base) {
                while (base.t < target * (1.0 - 1e-12)) {
                    const double dt =
                        std::min(cfl_limit_base(base, H, cfg.cfl), target - base.t);
                    base = step_rk4(base, H, dt);
                }
                rho_full = box_filter(base.rho, window);
                p_full = box_filter(base.p[0], window);
            } else {
                while (ext.t < target * (1.0 - 1e-12)) {
                    const double dt = std::min(
                        cfl_limit_extended(ext, H, closure, cfg.cfl), target - ext.t);
                    ext = step_extended(ext, H, closure, dt);
                }
                rho_full = theta_average(ext.rho);
                p_full = theta_average(ext.p[0]);
            }
            ScalarField rho_red = red.rho_bar, p_red = red.p_bar[0];
            if (from_base) {
                // Filter both sides identically so the window bias cancels.
                rho_red = box_filter(rho_red, window);
                p_red = box_filter(p_red, window);
            }
            ScalarField p_scale = red.rho_bar;
            p_scale *= cfg.ham.c_s;
            worst = std::max(worst, scaled_l2_err(rho_full, rho_red, red.rho_bar));
            worst = std::max(worst, scaled_l2_err(p_full, p_red, p_scale));
        }
        return worst;
    };

    CompareReport rep;
    rep.eps_list = eps_list;
    rep.errors.assign(eps_list.size(), 0.0);

    // Independent jobs, capped by WKBFLOW_THREADS; assembly is ordered.
    const int cap = std::min<int>(sweep_thread_cap(), static_cast<int>(eps_list.size()));
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (int tix = 0; tix < cap; ++tix)
        pool.emplace_back([&]() {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= eps_list.size()) return;
                rep.errors[i] = error_for_eps(eps_list[i]);
            }
        });
    for (auto& th : pool) th.join();

    rep.slope = fit_loglog_slope(rep.eps_list, rep.errors);
    return rep;
}

} // namespace wkbflow
