#include "wkbflow/slow_manifold.hpp"

namespace wkbflow {

namespace {

/// Zero the angle mean, leaving only fluctuating harmonics.
LoopField fluctuation(const LoopField& f) {
    LoopField out = f;
    for (int ix = 0; ix < f.grid().points(); ++ix) out.coeff(ix, 0) = 0.0;
    return out;
}

} // namespace

FastSlowSplit split_state(const ExtendedState& ext, const IsothermalParams& params) {
    const TorusGrid& g = ext.grid();
    const int dim = g.dim;
    if (!(ext.eps > 0.0)) throw ConfigError("split requires eps > 0");

    FastSlowSplit out;
    out.eps = ext.eps;
    out.slow.rho_bar = theta_average(ext.rho);
    out.slow.p_bar = VectorField(g);
    out.h_disp_bar = VectorField(g);
    out.slow.chi_bar = theta_average(ext.chi);
    out.slow.S = ext.S;

    const double inv_e = 1.0 / ext.eps;
    const double inv_e2 = inv_e * inv_e;
    out.rho_hat = inv_e * fluctuation(ext.rho);
    out.fast = FastFields(g);
    for (int a = 0; a < dim; ++a) {
        out.slow.p_bar[a] = theta_average(ext.p[a]);
        out.h_disp_bar[a] = theta_average(ext.h_disp[a]);
        out.fast.p_hat[a] = inv_e * fluctuation(ext.p[a]);
        out.fast.alpha_hat[a] = inv_e2 * fluctuation(ext.h_disp[a]);
    }
    out.fast.chi_hat = inv_e2 * fluctuation(ext.chi);
    out.lambda_hat = lambda_hat(out.slow, params, out.rho_hat, out.fast.p_hat);
    return out;
}

double invariance_residual(const ExtendedState& ext, const HamiltonianSpec& H,
                           const PhaseClosure& closure, double fd_eps,
                           const IsothermalParams& params) {
    const double eps = ext.eps;

    auto slaved = [&](const ExtendedState& s) {
        FastSlowSplit sp = split_state(s, params);
        return slaving_leading(sp.slow, params, sp.rho_hat);
    };

    // Centered difference of the slaving map along the actual trajectory.
    ExtendedState fwd = step_extended(ext, H, closure, fd_eps);
    ExtendedState bwd = step_extended(ext, H, closure, -fd_eps);
    FastFields yp = slaved(fwd);
    FastFields ym = slaved(bwd);
    yp -= ym;
    yp *= eps / (2.0 * fd_eps); // eps D y*(x)[g]

    // Fast part of the vector field at the initial state, in the rescaled
    // variables: f = eps dt(y_hat).
    ExtendedTangent k = rhs_extended(ext, H, closure);
    FastFields f(ext.grid());
    for (int a = 0; a < ext.grid().dim; ++a) {
        f.p_hat[a] = fluctuation(k.p[a]);                      // eps d/dt p_hat
        f.alpha_hat[a] = (1.0 / eps) * fluctuation(k.h_disp[a]); // eps d/dt alpha_hat
    }
    f.chi_hat = (1.0 / eps) * fluctuation(k.chi);

    yp -= f;
    return fast_norm(yp);
}

ReynoldsCheck reynolds_stress_check(const FastSlowSplit& split,
                                    const IsothermalParams& params) {
    const TorusGrid& g = split.slow.rho_bar.grid();
    const int dim = g.dim, nh = g.harmonics();
    const double cs = params.c_s;

    ScalarField gnorm = split.slow.S.gradient_norm();
    VectorField gs = split.slow.S.gradient();
    {
        int arg = 0;
        if (field_min(gnorm, &arg) < grad_s_floor(g))
            throw VanishingPhaseGradient("reynolds check: |grad S| below floor at index " +
                                         std::to_string(arg));
    }

    ScalarField action =
        wave_action_from_fluctuations(split.slow.rho_bar, split.rho_hat, split.slow.S, params);

    // fint over theta of a product of two zero-mean-augmented loops, exact on
    // harmonics: fint f g = f0 g0 + 2 sum_m Re(f_m conj(g_m)).
    auto fint_product = [&](const LoopField& A, const LoopField& B) {
        ScalarField out(g);
        for (int ix = 0; ix < g.points(); ++ix) {
            double s = (A.coeff(ix, 0) * std::conj(B.coeff(ix, 0))).real();
            for (int m = 1; m < nh; ++m)
                s += 2.0 * (A.coeff(ix, m) * std::conj(B.coeff(ix, m))).real();
            out[ix] = s;
        }
        return out;
    };

    ReynoldsCheck out;
    out.quadrature.assign(dim * dim, ScalarField(g));
    out.closed_form.assign(dim * dim, ScalarField(g));

    double num = 0.0, den = 0.0;
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            ScalarField pp = fint_product(split.fast.p_hat[a], split.fast.p_hat[b]);
            ScalarField pr_a = fint_product(split.fast.p_hat[a], split.rho_hat);
            ScalarField pr_b = fint_product(split.fast.p_hat[b], split.rho_hat);
            ScalarField rr = fint_product(split.rho_hat, split.rho_hat);
            ScalarField q(g), c(g);
            for (int k = 0; k < g.points(); ++k) {
                const double r = split.slow.rho_bar[k];
                const double pa = split.slow.p_bar[a][k], pb = split.slow.p_bar[b][k];
                q[k] = pp[k] / r - pa * pr_b[k] / (r * r) - pb * pr_a[k] / (r * r) +
                       pa * pb * rr[k] / (r * r * r);
                c[k] = cs * action[k] * gs[a][k] * gs[b][k] / gnorm[k];
                num += (q[k] - c[k]) * (q[k] - c[k]);
                den += c[k] * c[k];
            }
            out.quadrature[a * dim + b] = q;
            out.closed_form[a * dim + b] = c;
        }
    out.discrepancy = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    return out;
}

} // namespace wkbflow
