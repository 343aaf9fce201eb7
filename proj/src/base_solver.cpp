#include "wkbflow/base_solver.hpp"

#include <sstream>

namespace wkbflow {

namespace {

Vec2 point_vec(const VectorField& v, int k) {
    Vec2 out{0.0, 0.0};
    for (int a = 0; a < v.dim(); ++a) out[a] = v[a][k];
    return out;
}

} // namespace

void BaseState::validate() const {
    int arg = 0;
    const double rmin = field_min(rho, &arg);
    if (!(rmin > rho_floor)) {
        std::ostringstream msg;
        msg << "min rho = " << rmin << " <= floor " << rho_floor << " at index " << arg;
        throw NonPositiveDensity(msg.str());
    }
    if (!all_finite(rho) || !all_finite(chi)) throw StepRejected("non-finite scalar field");
    for (int a = 0; a < grid().dim; ++a)
        if (!all_finite(p[a]) || !all_finite(h_disp[a]))
            throw StepRejected("non-finite vector field component");
    if (grid().dim == 1) {
        ScalarField jac = spectral_deriv(h_disp[0], 0);
        for (int k = 0; k < jac.size(); ++k)
            if (!(1.0 + jac[k] > 0.0)) {
                std::ostringstream msg;
                msg << "label map not orientation-preserving: 1 + d(disp)/dx = "
                    << 1.0 + jac[k] << " at index " << k;
                throw SingularLabelMap(msg.str());
            }
    }
}

BaseTangent rhs_base(const BaseState& state, const HamiltonianSpec& H) {
    const TorusGrid& g = state.grid();
    const int dim = g.dim;
    const int npts = g.points();

    {
        int arg = 0;
        const double rmin = field_min(state.rho, &arg);
        if (!(rmin > rho_floor)) {
            std::ostringstream msg;
            msg << "min rho = " << rmin << " at index " << arg;
            throw NonPositiveDensity(msg.str());
        }
    }

    VectorField grad_rho(g);
    for (int a = 0; a < dim; ++a) grad_rho[a] = spectral_deriv(state.rho, a);

    // Pointwise partials of the Hamiltonian density.
    VectorField vel(g), h_grad(g);
    ScalarField h_rho(g), h_val(g);
    for (int k = 0; k < npts; ++k) {
        const Vec2 p = point_vec(state.p, k);
        const Vec2 gr = point_vec(grad_rho, k);
        const double rho = state.rho[k];
        const Vec2 v = H.d_p(p, rho, gr);
        const Vec2 hg = H.grad_rho_inert ? Vec2{0.0, 0.0} : H.d_grad_rho(p, rho, gr);
        for (int a = 0; a < dim; ++a) {
            vel[a][k] = v[a];
            h_grad[a][k] = hg[a];
        }
        h_rho[k] = H.d_rho(p, rho, gr);
        h_val[k] = H.eval(p, rho, gr);
    }

    ScalarField div_h_grad(g);
    if (!H.grad_rho_inert)
        for (int a = 0; a < dim; ++a) div_h_grad += spectral_deriv(h_grad[a], a);

    // Scalar potential rho dH/drho - rho div dH/dgrad rho + p . v - H.
    ScalarField pot = multiply(state.rho, h_rho) - dealias(h_val);
    if (!H.grad_rho_inert) pot -= multiply(state.rho, div_h_grad);
    for (int a = 0; a < dim; ++a) pot += multiply(state.p[a], vel[a]);

    BaseTangent out;
    out.rho = ScalarField(g);
    out.p = VectorField(g);
    out.h_disp = VectorField(g);
    out.chi = ScalarField(g);

    for (int a = 0; a < dim; ++a) out.rho -= spectral_deriv(multiply(state.rho, vel[a]), a);

    for (int b = 0; b < dim; ++b) {
        ScalarField dp = spectral_deriv(pot, b);
        for (int a = 0; a < dim; ++a) {
            ScalarField flux = multiply(vel[a], state.p[b]);
            if (!H.grad_rho_inert) flux += multiply(h_grad[a], grad_rho[b]);
            dp += spectral_deriv(flux, a);
        }
        out.p[b] = -1.0 * dp;
    }

    // Passive transport of the labels (identity part contributes -v) and chi.
    for (int b = 0; b < dim; ++b) {
        ScalarField dh = dealias(vel[b]);
        for (int a = 0; a < dim; ++a)
            dh += multiply(vel[a], spectral_deriv(state.h_disp[b], a));
        out.h_disp[b] = -1.0 * dh;
    }
    out.chi = dealias(h_rho) - div_h_grad;
    for (int a = 0; a < dim; ++a)
        out.chi -= multiply(vel[a], spectral_deriv(state.chi, a));

    return out;
}

double cfl_limit_base(const BaseState& state, const HamiltonianSpec& H, double cfl) {
    const TorusGrid& g = state.grid();
    VectorField grad_rho(g);
    for (int a = 0; a < g.dim; ++a) grad_rho[a] = spectral_deriv(state.rho, a);
    double vmax = 0.0;
    for (int k = 0; k < g.points(); ++k) {
        const Vec2 v = H.d_p(point_vec(state.p, k), state.rho[k], point_vec(grad_rho, k));
        for (int a = 0; a < g.dim; ++a) vmax = std::max(vmax, std::abs(v[a]));
    }
    return cfl * g.min_dx() / (vmax + H.wave_speed);
}

BaseState step_rk4(const BaseState& state, const HamiltonianSpec& H, double dt) {
    const double limit = cfl_limit_base(state, H);
    if (dt > limit * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "dt = " << dt << " exceeds CFL limit " << limit;
        throw StepRejected(msg.str());
    }

    auto advanced = [&](const BaseState& s, const BaseTangent& k, double h) {
        BaseState out = s;
        out.rho += h * k.rho;
        out.p += h * k.p;
        out.h_disp += h * k.h_disp;
        out.chi += h * k.chi;
        return out;
    };

    BaseTangent k1 = rhs_base(state, H);
    BaseTangent k2 = rhs_base(advanced(state, k1, dt / 2), H);
    BaseTangent k3 = rhs_base(advanced(state, k2, dt / 2), H);
    BaseTangent k4 = rhs_base(advanced(state, k3, dt), H);

    BaseState out = state;
    out.rho += (dt / 6) * (k1.rho + 2.0 * k2.rho + 2.0 * k3.rho + k4.rho);
    out.p += (dt / 6) * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
    out.h_disp += (dt / 6) * (k1.h_disp + 2.0 * k2.h_disp + 2.0 * k3.h_disp + k4.h_disp);
    out.chi += (dt / 6) * (k1.chi + 2.0 * k2.chi + 2.0 * k3.chi + k4.chi);
    out.t = state.t + dt;
    out.validate();
    return out;
}

double circulation_base(const BaseState& state) {
    const TorusGrid& g = state.grid();
    if (g.dim != 1)
        throw ConfigError("circulation over the full circle requires dim 1");
    ScalarField u(g);
    for (int k = 0; k < g.points(); ++k) u[k] = state.p[0][k] / state.rho[k];
    return integral(u);
}

double total_mass(const BaseState& state) { return integral(state.rho); }

double total_momentum(const BaseState& state, int axis) { return integral(state.p[axis]); }

double total_energy(const BaseState& state, const HamiltonianSpec& H) {
    const TorusGrid& g = state.grid();
    VectorField grad_rho(g);
    for (int a = 0; a < g.dim; ++a) grad_rho[a] = spectral_deriv(state.rho, a);
    ScalarField e(g);
    for (int k = 0; k < g.points(); ++k) {
        e[k] = H.eval(point_vec(state.p, k), state.rho[k], point_vec(grad_rho, k));
    }
    return integral(e);
}

} // namespace wkbflow
