#include "wkbflow/reduced_solver.hpp"

#include <sstream>

namespace wkbflow {

namespace {

void require_grad_s(const ScalarField& gnorm, const TorusGrid& g, const char* who) {
    int arg = 0;
    const double m = field_min(gnorm, &arg);
    if (m < grad_s_floor(g)) {
        std::ostringstream msg;
        msg << who << ": min |grad S| = " << m << " < floor " << grad_s_floor(g)
            << " at index " << arg;
        throw VanishingPhaseGradient(msg.str());
    }
}

} // namespace

void MeanWaveState::validate() const {
    int arg = 0;
    const double rmin = field_min(rho_bar, &arg);
    if (!(rmin > rho_floor)) {
        std::ostringstream msg;
        msg << "min rho_bar = " << rmin << " at index " << arg;
        throw NonPositiveDensity(msg.str());
    }
    const double imin = field_min(action, &arg);
    const double iscale = std::max(1.0, linf(action));
    if (imin < -1e-10 * iscale) {
        std::ostringstream msg;
        msg << "wave action density negative: min I = " << imin << " at index " << arg;
        throw StepRejected(msg.str());
    }
    if (!all_finite(rho_bar) || !all_finite(chi_bar) || !all_finite(action) ||
        !all_finite(S.periodic))
        throw StepRejected("non-finite field in mean-wave state");
    if (wave_active()) {
        require_grad_s(S.gradient_norm(), grid(), "mean-wave state");
        // Pre-caustic guard: the periodic part of S must not steepen past the
        // winding gradient.
        VectorField gper(grid());
        for (int a = 0; a < grid().dim; ++a) {
            if (S.winding[a] == 0) continue;
            ScalarField d = spectral_deriv(S.periodic, a);
            const double lin = std::abs(two_pi * S.winding[a] / grid().length[a]);
            if (linf(d) >= lin) {
                std::ostringstream msg;
                msg << "phase steepening: |d periodic/dx" << a << "| = " << linf(d)
                    << " >= winding gradient " << lin;
                throw StepRejected(msg.str());
            }
        }
    }
}

MeanWaveTangent rhs_reduced(const MeanWaveState& state, const IsothermalParams& params) {
    const TorusGrid& g = state.grid();
    const int dim = g.dim;
    {
        int arg = 0;
        const double rmin = field_min(state.rho_bar, &arg);
        if (!(rmin > rho_floor)) {
            std::ostringstream msg;
            msg << "min rho_bar = " << rmin << " at index " << arg;
            throw NonPositiveDensity(msg.str());
        }
    }

    const double cs = params.c_s;
    const bool wave = state.wave_active();
    VectorField gs = state.S.gradient();
    ScalarField gnorm = state.S.gradient_norm();
    if (wave) require_grad_s(gnorm, g, "reduced rhs");

    // Mean velocity and specific kinetic quantities.
    VectorField u(g);
    for (int a = 0; a < dim; ++a)
        for (int k = 0; k < g.points(); ++k) u[a][k] = state.p_bar[a][k] / state.rho_bar[k];

    MeanWaveTangent out;
    out.rho_bar = ScalarField(g);
    out.p_bar = VectorField(g);
    out.chi_bar = ScalarField(g);
    out.action = ScalarField(g);
    out.S_periodic = ScalarField(g);

    // Continuity is linear: d rho_bar / dt = -div p_bar.
    for (int a = 0; a < dim; ++a) out.rho_bar -= spectral_deriv(state.p_bar[a], a);

    // Momentum flux: p u + eps^2 c_s I gradS gradS / |gradS| + c_s^2 rho I.
    const double eps2 = state.eps * state.eps;
    for (int b = 0; b < dim; ++b) {
        ScalarField dp(g);
        for (int a = 0; a < dim; ++a) {
            ScalarField flux = multiply(u[a], state.p_bar[b]);
            if (wave) {
                ScalarField stress(g);
                for (int k = 0; k < g.points(); ++k)
                    stress[k] = eps2 * cs * state.action[k] * gs[a][k] * gs[b][k] / gnorm[k];
                flux += dealias(stress);
            }
            dp += spectral_deriv(flux, a);
        }
        ScalarField iso = state.rho_bar;
        dp += spectral_deriv(iso *= cs * cs, b);
        out.p_bar[b] = -1.0 * dp;
    }

    // Wave action transported at the group velocity.
    if (wave) {
        for (int a = 0; a < dim; ++a) {
            ScalarField flux(g);
            for (int k = 0; k < g.points(); ++k)
                flux[k] = (u[a][k] + cs * gs[a][k] / gnorm[k]) * state.action[k];
            out.action -= spectral_deriv(dealias(flux), a);
        }
    }

    // Eikonal: dS/dt = -u . grad S - c_s |grad S|; updates the periodic part.
    {
        ScalarField ds(g);
        for (int k = 0; k < g.points(); ++k) {
            double adv = 0.0;
            for (int a = 0; a < dim; ++a) adv += u[a][k] * gs[a][k];
            ds[k] = -adv - cs * gnorm[k];
        }
        out.S_periodic = dealias(ds);
    }

    // Multiplier transport with the isothermal dH/drho.
    {
        ScalarField rhs(g);
        const double cs2 = cs * cs;
        for (int k = 0; k < g.points(); ++k) {
            double p2 = 0.0;
            for (int a = 0; a < dim; ++a) p2 += state.p_bar[a][k] * state.p_bar[a][k];
            const double r = state.rho_bar[k];
            rhs[k] = -0.5 * p2 / (r * r) + cs2 * (std::log(r / params.rho_ref) + 1.0);
        }
        out.chi_bar = dealias(rhs);
        for (int a = 0; a < dim; ++a)
            out.chi_bar -= multiply(u[a], spectral_deriv(state.chi_bar, a));
    }

    return out;
}

double cfl_limit_reduced(const MeanWaveState& state, const IsothermalParams& params,
                         double cfl) {
    const TorusGrid& g = state.grid();
    double umax = 0.0;
    for (int a = 0; a < g.dim; ++a)
        for (int k = 0; k < g.points(); ++k)
            umax = std::max(umax, std::abs(state.p_bar[a][k] / state.rho_bar[k]));
    return cfl * g.min_dx() / (umax + params.c_s);
}

MeanWaveState step_reduced(const MeanWaveState& state, const IsothermalParams& params,
                           double dt) {
    const double limit = cfl_limit_reduced(state, params);
    if (dt > limit * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "dt = " << dt << " exceeds CFL limit " << limit;
        throw StepRejected(msg.str());
    }

    auto advanced = [&](const MeanWaveState& s, const MeanWaveTangent& k, double h) {
        MeanWaveState out = s;
        out.rho_bar += h * k.rho_bar;
        out.p_bar += h * k.p_bar;
        out.chi_bar += h * k.chi_bar;
        out.action += h * k.action;
        out.S.periodic += h * k.S_periodic;
        return out;
    };

    MeanWaveTangent k1 = rhs_reduced(state, params);
    MeanWaveTangent k2 = rhs_reduced(advanced(state, k1, dt / 2), params);
    MeanWaveTangent k3 = rhs_reduced(advanced(state, k2, dt / 2), params);
    MeanWaveTangent k4 = rhs_reduced(advanced(state, k3, dt), params);

    MeanWaveState out = state;
    out.rho_bar += (dt / 6) * (k1.rho_bar + 2.0 * k2.rho_bar + 2.0 * k3.rho_bar + k4.rho_bar);
    out.p_bar += (dt / 6) * (k1.p_bar + 2.0 * k2.p_bar + 2.0 * k3.p_bar + k4.p_bar);
    out.chi_bar += (dt / 6) * (k1.chi_bar + 2.0 * k2.chi_bar + 2.0 * k3.chi_bar + k4.chi_bar);
    out.action += (dt / 6) * (k1.action + 2.0 * k2.action + 2.0 * k3.action + k4.action);
    out.S.periodic +=
        (dt / 6) * (k1.S_periodic + 2.0 * k2.S_periodic + 2.0 * k3.S_periodic + k4.S_periodic);
    out.t = state.t + dt;
    out.validate();
    return out;
}

ScalarField wave_action_from_fluctuations(const ScalarField& rho_bar,
                                          const LoopField& rho_hat, const PhaseField& S,
                                          const IsothermalParams& params) {
    const TorusGrid& g = rho_bar.grid();
    ScalarField gnorm = S.gradient_norm();
    require_grad_s(gnorm, g, "wave action from fluctuations");

    // fint rho_hat^2 dtheta by Parseval on the harmonics.
    ScalarField out(g);
    const int nh = g.harmonics();
    for (int ix = 0; ix < g.points(); ++ix) {
        double s = std::norm(rho_hat.coeff(ix, 0));
        for (int m = 1; m < nh; ++m) s += 2.0 * std::norm(rho_hat.coeff(ix, m));
        out[ix] = params.c_s / gnorm[ix] * s / rho_bar[ix];
    }
    return out;
}

double mean_circulation(const MeanWaveState& state) {
    const TorusGrid& g = state.grid();
    if (g.dim != 1)
        throw ConfigError("mean circulation over the full circle requires dim 1");
    VectorField gs = state.S.gradient();
    const double eps2 = state.eps * state.eps;
    ScalarField integrand(g);
    for (int k = 0; k < g.points(); ++k)
        integrand[k] = (state.p_bar[0][k] - eps2 * state.action[k] * gs[0][k]) /
                       state.rho_bar[k];
    return integral(integrand);
}

double total_wave_action(const MeanWaveState& state) { return integral(state.action); }

} // namespace wkbflow
