#include "wkbflow/presets.hpp"

namespace wkbflow {

namespace {

double wrapped_gaussian(double x, double center, double width, double L) {
    double acc = 0.0;
    for (int im = -3; im <= 3; ++im) {
        const double d = x - center + im * L;
        acc += std::exp(-d * d / (2.0 * width * width));
    }
    return acc;
}

MeanWaveState make_mean(const RunConfig& cfg) {
    const TorusGrid& g = cfg.grid;
    const double rho0 = cfg.preset_param("rho0", 1.0);
    const double u0 = cfg.preset_param("u0", 0.0);
    const double bamp = cfg.preset_param("background_amplitude", 0.0);
    const int winding = static_cast<int>(cfg.preset_param("winding", 1.0));

    MeanWaveState m(g);
    m.eps = cfg.eps;
    m.rho_bar = ScalarField::sample(g, [&](double x, double) {
        return rho0 * (1.0 + bamp * std::cos(two_pi * x / g.length[0]));
    });
    for (int k = 0; k < g.points(); ++k) m.p_bar[0][k] = u0 * m.rho_bar[k];
    m.S = PhaseField(g, {winding, 0});
    return m;
}

} // namespace

BaseState make_base_preset(const RunConfig& cfg) {
    const TorusGrid& g = cfg.grid;
    if (g.dim != 1) throw ConfigError("presets are one-dimensional");
    const double rho0 = cfg.preset_param("rho0", 1.0);
    const double u0 = cfg.preset_param("u0", 0.0);
    const double amp = cfg.preset_param("amplitude", 0.0);
    const double L = g.length[0];

    BaseState s(g);
    if (cfg.preset == "rest") {
        s.rho = ScalarField(g, rho0);
    } else if (cfg.preset == "acoustic-harmonic") {
        // Right-moving linear eigenmode on a uniform background.
        const int winding = static_cast<int>(cfg.preset_param("winding", 1.0));
        s.rho = ScalarField::sample(g, [&](double x, double) {
            return rho0 * (1.0 + amp * std::cos(winding * two_pi * x / L));
        });
        s.p[0] = ScalarField::sample(g, [&](double x, double) {
            return rho0 * u0 +
                   (u0 + cfg.ham.c_s) * rho0 * amp * std::cos(winding * two_pi * x / L);
        });
    } else if (cfg.preset == "smooth-flow") {
        const double bamp = cfg.preset_param("background_amplitude", 0.1);
        s.rho = ScalarField::sample(g, [&](double x, double) {
            return rho0 * (1.0 + bamp * std::cos(two_pi * x / L));
        });
        for (int i = 0; i < g.n[0]; ++i) {
            const double x = g.x(0, i);
            s.p[0][i] = s.rho[i] * (u0 + amp * std::sin(2.0 * two_pi * x / L));
        }
    } else {
        throw ConfigError("preset '" + cfg.preset + "' does not apply to the base tier");
    }
    s.validate();
    return s;
}

WavePresetFields make_wave_preset_fields(const RunConfig& cfg) {
    const TorusGrid& g = cfg.grid;
    if (g.dim != 1) throw ConfigError("presets are one-dimensional");
    if (cfg.preset != "slow-manifold-wave")
        throw ConfigError("preset '" + cfg.preset + "' does not define wave fields");
    const double rho0 = cfg.preset_param("rho0", 1.0);
    const double amp = cfg.preset_param("amplitude", 0.1);
    const double env = cfg.preset_param("envelope", 0.0);

    WavePresetFields out{make_mean(cfg), LoopField(g)};
    out.rho_hat = LoopField::sample(g, [&](double x, double, double th) {
        return rho0 * amp * (1.0 + env * std::cos(two_pi * x / g.length[0])) *
               std::cos(th);
    });
    return out;
}

ExtendedState make_extended_preset(const RunConfig& cfg) {
    if (cfg.preset == "rest") {
        ExtendedState s(cfg.grid, cfg.eps);
        s.rho = LoopField::from_scalar(ScalarField(cfg.grid, cfg.preset_param("rho0", 1.0)));
        return s;
    }
    if (cfg.preset == "slow-manifold-wave") {
        WavePresetFields f = make_wave_preset_fields(cfg);
        return init_slow_manifold(f.mean, f.rho_hat, cfg.eps, cfg.ham);
    }
    throw ConfigError("preset '" + cfg.preset + "' does not apply to the extended tier");
}

MeanWaveState make_reduced_preset(const RunConfig& cfg) {
    const TorusGrid& g = cfg.grid;
    if (g.dim != 1) throw ConfigError("presets are one-dimensional");
    if (cfg.preset == "rest") {
        MeanWaveState s(g);
        s.eps = cfg.eps;
        s.rho_bar = ScalarField(g, cfg.preset_param("rho0", 1.0));
        s.S = PhaseField(g, {1, 0});
        s.validate();
        return s;
    }
    if (cfg.preset == "wave-packet" || cfg.preset == "wave-train") {
        MeanWaveState s = make_mean(cfg);
        const double i0 = cfg.preset_param("action0", 0.1);
        if (cfg.preset == "wave-train") {
            s.action = ScalarField(g, i0);
        } else {
            const double center = cfg.preset_param("packet_center", g.length[0] / 2);
            const double width = cfg.preset_param("packet_width", g.length[0] / 12);
            s.action = ScalarField::sample(g, [&](double x, double) {
                return i0 * wrapped_gaussian(x, center, width, g.length[0]);
            });
        }
        s.validate();
        return s;
    }
    throw ConfigError("preset '" + cfg.preset + "' does not apply to the reduced tier");
}

} // namespace wkbflow
