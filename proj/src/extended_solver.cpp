#include "wkbflow/extended_solver.hpp"

#include <sstream>

#include "wkbflow/fft.hpp"

namespace wkbflow {

namespace {

using Cplx = std::complex<double>;

int signed_mode(int k, int n) { return (k <= n / 2) ? k : k - n; }

/// Evaluates the trigonometric interpolant of a scalar field at arbitrary
/// points. Built once per field; evaluation is a direct mode sum.
class TrigInterp {
public:
    explicit TrigInterp(const ScalarField& f) : grid_(f.grid()) {
        const int n0 = grid_.n[0], n1 = grid_.n[1];
        std::vector<Cplx> in(n0 * n1);
        for (int k = 0; k < n0 * n1; ++k) in[k] = f[k];
        hat_.resize(n0 * n1);
        if (grid_.dim == 1)
            fft::c2c_fwd(n0, in.data(), hat_.data());
        else
            fft::c2c_fwd_2d(n0, n1, in.data(), hat_.data());
    }

    double operator()(double x0, double x1 = 0.0) const {
        const int n0 = grid_.n[0], n1 = grid_.n[1];
        Cplx acc{0.0, 0.0};
        for (int i = 0; i < n0; ++i) {
            const double k0 = two_pi * signed_mode(i, n0) / grid_.length[0];
            if (grid_.dim == 1) {
                acc += hat_[i] * std::polar(1.0, k0 * x0);
            } else {
                for (int j = 0; j < n1; ++j) {
                    const double k1 = two_pi * signed_mode(j, n1) / grid_.length[1];
                    acc += hat_[i * n1 + j] * std::polar(1.0, k0 * x0 + k1 * x1);
                }
            }
        }
        return acc.real();
    }

private:
    TorusGrid grid_;
    std::vector<Cplx> hat_;
};

/// Shifted derivative along one axis: d_a + (grad S_a / eps) d_theta.
LoopField shifted_deriv(const LoopField& f, const VectorField& grad_S, double eps,
                        int axis) {
    LoopField out = x_deriv(f, axis);
    LoopField dth = theta_derivative(f);
    const int nh = f.grid().harmonics();
    for (int ix = 0; ix < f.grid().points(); ++ix) {
        const double c = grad_S[axis][ix] / eps;
        for (int m = 0; m < nh; ++m) out.coeff(ix, m) += c * dth.coeff(ix, m);
    }
    return out;
}

/// -(dS/dt / eps) d_theta f, the stiff part of the shifted time derivative.
LoopField stiff_term(const LoopField& f, const ScalarField& dS, double eps) {
    LoopField out = theta_derivative(f);
    const int nh = f.grid().harmonics();
    for (int ix = 0; ix < f.grid().points(); ++ix) {
        const double c = -dS[ix] / eps;
        for (int m = 0; m < nh; ++m) out.coeff(ix, m) *= c;
    }
    return out;
}

LoopField loop_of(const TorusGrid& g, const std::vector<double>& vals) {
    return dealias(LoopField::from_values(g, vals));
}

void check_min_density(const std::vector<double>& rho_vals, const TorusGrid& g,
                       const char* who) {
    const int nt = g.n_theta;
    for (size_t k = 0; k < rho_vals.size(); ++k) {
        if (!(rho_vals[k] > rho_floor)) {
            std::ostringstream msg;
            msg << who << ": rho = " << rho_vals[k] << " <= floor " << rho_floor
                << " at x-index " << k / nt << ", theta-index " << k % nt;
            throw NonPositiveDensity(msg.str());
        }
    }
}

bool has_fluctuations(const ExtendedState& s) {
    double m = fluctuation_norm(s.rho);
    for (int a = 0; a < s.grid().dim; ++a) {
        m = std::max(m, fluctuation_norm(s.p[a]));
        m = std::max(m, fluctuation_norm(s.h_disp[a]));
    }
    m = std::max(m, fluctuation_norm(s.chi));
    return m > 1e-12;
}

} // namespace

void ExtendedState::validate() const {
    const TorusGrid& g = grid();
    int aix = 0, aj = 0;
    const double rmin = loop_min(rho, &aix, &aj);
    if (!(rmin > rho_floor)) {
        std::ostringstream msg;
        msg << "min rho = " << rmin << " <= floor " << rho_floor << " at x-index " << aix
            << ", theta-index " << aj;
        throw NonPositiveDensity(msg.str());
    }
    if (!all_finite(rho) || !all_finite(chi) || !all_finite(S.periodic))
        throw StepRejected("non-finite field in extended state");
    for (int a = 0; a < g.dim; ++a)
        if (!all_finite(p[a]) || !all_finite(h_disp[a]))
            throw StepRejected("non-finite loop component in extended state");

    // The phase gradient must stay away from zero while the state actually
    // carries angle dependence (the eikonal / slaving geometry needs e_k).
    if (has_fluctuations(*this)) {
        ScalarField gn = S.gradient_norm();
        int arg = 0;
        const double m = field_min(gn, &arg);
        if (m < grad_s_floor(g)) {
            std::ostringstream msg;
            msg << "min |grad S| = " << m << " < floor " << grad_s_floor(g)
                << " at index " << arg << " on a wave-carrying state";
            throw VanishingPhaseGradient(msg.str());
        }
    }
}

PhaseClosure acoustic_eikonal_closure(double c_s) {
    PhaseClosure c;
    c.rate = [c_s](const ScalarField& rho_bar, const VectorField& p_bar,
                   const PhaseField& S) {
        const TorusGrid& g = rho_bar.grid();
        VectorField gs = S.gradient();
        ScalarField out(g);
        for (int k = 0; k < g.points(); ++k) {
            double adv = 0.0, g2 = 0.0;
            for (int a = 0; a < g.dim; ++a) {
                adv += p_bar[a][k] / rho_bar[k] * gs[a][k];
                g2 += gs[a][k] * gs[a][k];
            }
            out[k] = -adv - c_s * std::sqrt(g2);
        }
        return dealias(out);
    };
    return c;
}

ExtendedTangent rhs_extended(const ExtendedState& state, const HamiltonianSpec& H,
                             const PhaseClosure& closure) {
    const TorusGrid& g = state.grid();
    const int dim = g.dim;
    const int npts = g.points(), nt = g.n_theta;
    const double eps = state.eps;

    ScalarField rho_bar = theta_average(state.rho);
    VectorField p_bar(g);
    for (int a = 0; a < dim; ++a) p_bar[a] = theta_average(state.p[a]);
    ScalarField dS = closure.rate(rho_bar, p_bar, state.S);
    VectorField GS = state.S.gradient();

    // Shifted density gradient feeds the Hamiltonian partials.
    VectorLoopField grho(g);
    for (int a = 0; a < dim; ++a) grho[a] = shifted_deriv(state.rho, GS, eps, a);

    std::vector<double> R = state.rho.values();
    check_min_density(R, g, "extended rhs");
    std::vector<std::vector<double>> Pv(dim), GRv(dim);
    for (int a = 0; a < dim; ++a) {
        Pv[a] = state.p[a].values();
        GRv[a] = grho[a].values();
    }

    const size_t total = static_cast<size_t>(npts) * nt;
    std::vector<std::vector<double>> vel(dim, std::vector<double>(total)),
        hgrad(dim, std::vector<double>(total));
    std::vector<double> hrho(total), hval(total);
    for (size_t k = 0; k < total; ++k) {
        Vec2 p{Pv[0][k], dim == 2 ? Pv[1][k] : 0.0};
        Vec2 gr{GRv[0][k], dim == 2 ? GRv[1][k] : 0.0};
        const double r = R[k];
        const Vec2 v = H.d_p(p, r, gr);
        const Vec2 hg = H.grad_rho_inert ? Vec2{0.0, 0.0} : H.d_grad_rho(p, r, gr);
        for (int a = 0; a < dim; ++a) {
            vel[a][k] = v[a];
            hgrad[a][k] = hg[a];
        }
        hrho[k] = H.d_rho(p, r, gr);
        hval[k] = H.eval(p, r, gr);
    }

    LoopField div_hgrad(g);
    std::vector<double> div_hgrad_vals(total, 0.0);
    if (!H.grad_rho_inert) {
        for (int a = 0; a < dim; ++a)
            div_hgrad += shifted_deriv(loop_of(g, hgrad[a]), GS, eps, a);
        div_hgrad_vals = div_hgrad.values();
    }

    // Scalar potential rho dH/drho - rho divS dH/dgrad rho + p . v - H.
    std::vector<double> pot_vals(total);
    for (size_t k = 0; k < total; ++k) {
        double pv = 0.0;
        for (int a = 0; a < dim; ++a) pv += Pv[a][k] * vel[a][k];
        pot_vals[k] = R[k] * (hrho[k] - div_hgrad_vals[k]) + pv - hval[k];
    }
    LoopField pot = loop_of(g, pot_vals);

    ExtendedTangent out;
    out.rho = stiff_term(state.rho, dS, eps);
    out.p = VectorLoopField(g);
    out.h_disp = VectorLoopField(g);
    out.chi = stiff_term(state.chi, dS, eps);
    out.S_periodic = dS;

    // Continuity: -(divS of rho v).
    std::vector<double> scratch(total);
    for (int a = 0; a < dim; ++a) {
        for (size_t k = 0; k < total; ++k) scratch[k] = R[k] * vel[a][k];
        out.rho -= shifted_deriv(loop_of(g, scratch), GS, eps, a);
    }

    // Momentum: -(divS of [v p + dH/dgrad rho (x) gradS rho]) - gradS pot.
    for (int b = 0; b < dim; ++b) {
        LoopField dp = stiff_term(state.p[b], dS, eps);
        for (int a = 0; a < dim; ++a) {
            for (size_t k = 0; k < total; ++k) {
                scratch[k] = vel[a][k] * Pv[b][k];
                if (!H.grad_rho_inert) scratch[k] += hgrad[a][k] * GRv[b][k];
            }
            dp -= shifted_deriv(loop_of(g, scratch), GS, eps, a);
        }
        dp -= shifted_deriv(pot, GS, eps, b);
        out.p[b] = dp;
    }

    // Labels: dt h_b = -stiff - v_b - v . gradS(disp_b).
    for (int b = 0; b < dim; ++b) {
        LoopField dh = stiff_term(state.h_disp[b], dS, eps);
        VectorLoopField gh(g);
        for (int a = 0; a < dim; ++a) gh[a] = shifted_deriv(state.h_disp[b], GS, eps, a);
        std::vector<double> adv(total, 0.0);
        for (int a = 0; a < dim; ++a) {
            std::vector<double> gv = gh[a].values();
            for (size_t k = 0; k < total; ++k) adv[k] += vel[a][k] * gv[k];
        }
        for (size_t k = 0; k < total; ++k) adv[k] += vel[b][k];
        dh -= loop_of(g, adv);
        out.h_disp[b] = dh;
    }

    // Multiplier: dt chi = -stiff - v . gradS chi + dH/drho - divS dH/dgrad rho.
    {
        VectorLoopField gchi(g);
        for (int a = 0; a < dim; ++a) gchi[a] = shifted_deriv(state.chi, GS, eps, a);
        std::vector<double> adv(total, 0.0);
        for (int a = 0; a < dim; ++a) {
            std::vector<double> gv = gchi[a].values();
            for (size_t k = 0; k < total; ++k) adv[k] += vel[a][k] * gv[k];
        }
        for (size_t k = 0; k < total; ++k) adv[k] = hrho[k] - adv[k];
        out.chi += loop_of(g, adv);
        if (!H.grad_rho_inert) out.chi -= div_hgrad;
    }

    return out;
}

double cfl_limit_extended(const ExtendedState& state, const HamiltonianSpec& H,
                          const PhaseClosure& closure, double cfl) {
    const TorusGrid& g = state.grid();
    const int dim = g.dim, nt = g.n_theta;

    ScalarField rho_bar = theta_average(state.rho);
    VectorField p_bar(g);
    for (int a = 0; a < dim; ++a) p_bar[a] = theta_average(state.p[a]);
    ScalarField dS = closure.rate(rho_bar, p_bar, state.S);
    VectorField GS = state.S.gradient();

    VectorLoopField grho(g);
    for (int a = 0; a < dim; ++a) grho[a] = shifted_deriv(state.rho, GS, state.eps, a);
    std::vector<double> R = state.rho.values();
    std::vector<std::vector<double>> Pv(dim), GRv(dim);
    for (int a = 0; a < dim; ++a) {
        Pv[a] = state.p[a].values();
        GRv[a] = grho[a].values();
    }

    double vmax = 0.0, omega_max = 0.0;
    const size_t total = R.size();
    for (size_t k = 0; k < total; ++k) {
        Vec2 p{Pv[0][k], dim == 2 ? Pv[1][k] : 0.0};
        Vec2 gr{GRv[0][k], dim == 2 ? GRv[1][k] : 0.0};
        const Vec2 v = H.d_p(p, R[k], gr);
        const int ix = static_cast<int>(k / nt);
        double omega = dS[ix];
        for (int a = 0; a < dim; ++a) {
            vmax = std::max(vmax, std::abs(v[a]));
            omega += v[a] * GS[a][ix];
        }
        omega_max = std::max(omega_max, std::abs(omega));
    }

    const double dt_x = cfl * g.min_dx() / (vmax + H.wave_speed);
    if (omega_max <= 0.0) return dt_x;
    const double dt_theta = cfl * state.eps * g.d_theta() / omega_max;
    return std::min(dt_x, dt_theta);
}

ExtendedState step_extended(const ExtendedState& state, const HamiltonianSpec& H,
                            const PhaseClosure& closure, double dt) {
    const double limit = cfl_limit_extended(state, H, closure);
    if (std::abs(dt) > limit * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "dt = " << dt << " exceeds CFL limit " << limit;
        throw StepRejected(msg.str());
    }

    auto advanced = [&](const ExtendedState& s, const ExtendedTangent& k, double h) {
        ExtendedState out = s;
        out.rho += h * k.rho;
        out.p += h * k.p;
        out.h_disp += h * k.h_disp;
        out.chi += h * k.chi;
        out.S.periodic += h * k.S_periodic;
        return out;
    };

    ExtendedTangent k1 = rhs_extended(state, H, closure);
    ExtendedTangent k2 = rhs_extended(advanced(state, k1, dt / 2), H, closure);
    ExtendedTangent k3 = rhs_extended(advanced(state, k2, dt / 2), H, closure);
    ExtendedTangent k4 = rhs_extended(advanced(state, k3, dt), H, closure);

    ExtendedState out = state;
    out.rho += (dt / 6) * (k1.rho + 2.0 * k2.rho + 2.0 * k3.rho + k4.rho);
    out.p += (dt / 6) * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
    out.h_disp += (dt / 6) * (k1.h_disp + 2.0 * k2.h_disp + 2.0 * k3.h_disp + k4.h_disp);
    out.chi += (dt / 6) * (k1.chi + 2.0 * k2.chi + 2.0 * k3.chi + k4.chi);
    out.S.periodic +=
        (dt / 6) * (k1.S_periodic + 2.0 * k2.S_periodic + 2.0 * k3.S_periodic + k4.S_periodic);
    out.t = state.t + dt;
    out.validate();
    return out;
}

ReconstructedFields reconstruct(const ExtendedState& state) {
    const TorusGrid& g = state.grid();
    ReconstructedFields out{ScalarField(g), VectorField(g)};
    const double sigma = 1.0 / state.eps;
    for (int i = 0; i < g.n[0]; ++i)
        for (int j = 0; j < g.n[1]; ++j) {
            const int ix = g.index(i, j);
            const double th = sigma * state.S.value(i, j);
            out.rho[ix] = state.rho.value_at(ix, th);
            for (int a = 0; a < g.dim; ++a) out.p[a][ix] = state.p[a].value_at(ix, th);
        }
    return out;
}

LoopField specific_wave_action(const ExtendedState& state) {
    const TorusGrid& g = state.grid();
    const int dim = g.dim, nt = g.n_theta;
    const double eps = state.eps;
    VectorField GS = state.S.gradient();

    std::vector<double> R = state.rho.values();
    std::vector<double> dchi_th = theta_derivative(state.chi).values();
    std::vector<std::vector<double>> P(dim), gchi(dim), dth_d(dim);
    std::vector<std::vector<std::vector<double>>> M(dim,
        std::vector<std::vector<double>>(dim));
    for (int b = 0; b < dim; ++b) {
        P[b] = state.p[b].values();
        gchi[b] = shifted_deriv(state.chi, GS, eps, b).values();
        dth_d[b] = theta_derivative(state.h_disp[b]).values();
        for (int a = 0; a < dim; ++a)
            M[a][b] = shifted_deriv(state.h_disp[b], GS, eps, a).values();
    }

    const size_t total = R.size();
    std::vector<double> out(total);
    for (size_t k = 0; k < total; ++k) {
        double zeta[2] = {0.0, 0.0};
        if (dim == 1) {
            const double m00 = 1.0 + M[0][0][k];
            if (std::abs(m00) < 1e-12) {
                std::ostringstream msg;
                msg << "shifted label gradient vanishes at x-index " << k / nt
                    << ", theta-index " << k % nt;
                throw SingularLabelMap(msg.str());
            }
            zeta[0] = -dth_d[0][k] / m00;
        } else {
            const double m00 = 1.0 + M[0][0][k], m01 = M[0][1][k];
            const double m10 = M[1][0][k], m11 = 1.0 + M[1][1][k];
            const double det = m00 * m11 - m01 * m10;
            if (std::abs(det) < 1e-12) {
                std::ostringstream msg;
                msg << "singular shifted label gradient (det = " << det << ") at x-index "
                    << k / nt << ", theta-index " << k % nt;
                throw SingularLabelMap(msg.str());
            }
            const double d0 = dth_d[0][k], d1 = dth_d[1][k];
            zeta[0] = (-d0 * m11 + d1 * m10) / det;
            zeta[1] = (d0 * m01 - d1 * m00) / det;
        }
        double acc = R[k] * dchi_th[k];
        for (int a = 0; a < dim; ++a) acc += (P[a][k] + R[k] * gchi[a][k]) * zeta[a];
        out[k] = acc;
    }
    return LoopField::from_values(g, out);
}

std::vector<double> circulation_family(const ExtendedState& state, int n_theta_samples) {
    const TorusGrid& g = state.grid();
    if (g.dim != 1)
        throw ConfigError("circulation family over the full circle requires dim 1");
    const int nx = g.n[0], nh = g.harmonics();
    const double sigma = 1.0 / state.eps;

    // Velocity ratio as angle harmonics.
    std::vector<double> R = state.rho.values(), P = state.p[0].values();
    for (size_t k = 0; k < R.size(); ++k) P[k] /= R[k];
    LoopField ratio = LoopField::from_values(g, P);

    // The integrand of harmonic m carries the factor exp(i m S / eps), whose
    // spatial modes reach m sigma w; quadrature on the solver grid would
    // alias them onto the mean. Supersample on a zero-padded grid that
    // resolves every contributing harmonic exactly.
    const int wind = std::abs(state.S.winding[0]);
    int fine = 2 * nx;
    const int need = 4 * (static_cast<int>(std::ceil(sigma)) * wind * (nh - 1) + nx);
    while (fine < need && fine < (1 << 16)) fine *= 2;

    auto upsample = [&](const std::vector<Cplx>& coarse_vals) {
        std::vector<Cplx> hat(nx), fine_hat(fine, Cplx{0.0, 0.0});
        fft::c2c_fwd(nx, coarse_vals.data(), hat.data());
        for (int k = 0; k < nx; ++k) {
            const int m = signed_mode(k, nx);
            if (std::abs(m) == nx / 2) continue;
            fine_hat[(m + fine) % fine] = hat[k];
        }
        std::vector<Cplx> out(fine);
        fft::c2c_bwd(fine, fine_hat.data(), out.data());
        return out;
    };

    std::vector<Cplx> per(nx);
    for (int i = 0; i < nx; ++i) per[i] = state.S.periodic[i];
    std::vector<Cplx> per_fine = upsample(per);

    // Mean over x of r_m(x) exp(i m S(x)/eps), per harmonic.
    std::vector<Cplx> moment(nh, Cplx{0.0, 0.0});
    std::vector<Cplx> col(nx);
    for (int m = 0; m < nh; ++m) {
        for (int i = 0; i < nx; ++i) col[i] = ratio.coeff(i, m);
        std::vector<Cplx> col_fine = upsample(col);
        Cplx acc{0.0, 0.0};
        for (int i = 0; i < fine; ++i) {
            const double x = g.length[0] * i / fine;
            const double S_val =
                two_pi * state.S.winding[0] * x / g.length[0] + per_fine[i].real();
            acc += col_fine[i] * std::polar(1.0, m * sigma * S_val);
        }
        moment[m] = acc / double(fine);
    }

    std::vector<double> out(n_theta_samples, 0.0);
    for (int s = 0; s < n_theta_samples; ++s) {
        const double th0 = two_pi * s / n_theta_samples;
        Cplx acc = moment[0];
        for (int m = 1; m < nh; ++m)
            acc += 2.0 * moment[m] * std::polar(1.0, m * th0);
        out[s] = acc.real() * g.length[0];
    }
    return out;
}

ExtendedState init_slow_manifold(const MeanWaveState& mean, const LoopField& rho_hat,
                                 double eps, const IsothermalParams& params,
                                 const VectorField* mean_disp) {
    const TorusGrid& g = mean.grid();
    SlowMeanFields slow{mean.rho_bar, mean.p_bar, mean.chi_bar, mean.S};
    FastFields fast = slaving_leading(slow, params, rho_hat);

    ExtendedState out(g, eps);
    out.rho = LoopField::from_scalar(mean.rho_bar) + eps * rho_hat;
    out.p = VectorLoopField(g);
    for (int a = 0; a < g.dim; ++a)
        out.p[a] = LoopField::from_scalar(mean.p_bar[a]) + eps * fast.p_hat[a];
    out.chi = LoopField::from_scalar(mean.chi_bar) + (eps * eps) * fast.chi_hat;

    // Labels: mean displacement composed with the near-identity fluctuation
    // x -> x + eps^2 alpha_hat, the mean part evaluated at the shifted points
    // by trigonometric interpolation.
    const double e2 = eps * eps;
    std::vector<std::vector<double>> av(g.dim);
    for (int a = 0; a < g.dim; ++a) av[a] = fast.alpha_hat[a].values();
    bool disp_zero = (mean_disp == nullptr);
    if (!disp_zero) {
        double m = 0.0;
        for (int a = 0; a < g.dim; ++a) m = std::max(m, linf((*mean_disp)[a]));
        disp_zero = (m == 0.0);
    }
    for (int b = 0; b < g.dim; ++b) {
        std::vector<double> dv(static_cast<size_t>(g.points()) * g.n_theta);
        if (disp_zero) {
            for (size_t k = 0; k < dv.size(); ++k) dv[k] = e2 * av[b][k];
        } else {
            TrigInterp interp((*mean_disp)[b]);
            const int nt = g.n_theta;
            for (int i = 0; i < g.n[0]; ++i)
                for (int j = 0; j < g.n[1]; ++j) {
                    const int ix = g.index(i, j);
                    for (int t = 0; t < nt; ++t) {
                        const size_t k = static_cast<size_t>(ix) * nt + t;
                        const double x0 = g.x(0, i) + e2 * av[0][k];
                        const double x1 =
                            g.dim == 2 ? g.x(1, j) + e2 * av[1][k] : 0.0;
                        dv[k] = e2 * av[b][k] + interp(x0, x1);
                    }
                }
        }
        out.h_disp[b] = LoopField::from_values(g, dv);
    }

    out.S = mean.S;
    out.t = mean.t;
    out.validate();
    return out;
}

double total_mass_extended(const ExtendedState& state) {
    return integral_xtheta(state.rho);
}

double total_momentum_extended(const ExtendedState& state, int axis) {
    return integral_xtheta(state.p[axis]);
}

double total_energy_extended(const ExtendedState& state, const HamiltonianSpec& H) {
    const TorusGrid& g = state.grid();
    const int dim = g.dim;
    VectorField GS = state.S.gradient();
    VectorLoopField grho(g);
    for (int a = 0; a < dim; ++a) grho[a] = shifted_deriv(state.rho, GS, state.eps, a);
    std::vector<double> R = state.rho.values();
    std::vector<std::vector<double>> Pv(dim), GRv(dim);
    for (int a = 0; a < dim; ++a) {
        Pv[a] = state.p[a].values();
        GRv[a] = grho[a].values();
    }
    double acc = 0.0;
    for (size_t k = 0; k < R.size(); ++k) {
        Vec2 p{Pv[0][k], dim == 2 ? Pv[1][k] : 0.0};
        Vec2 gr{GRv[0][k], dim == 2 ? GRv[1][k] : 0.0};
        acc += H.eval(p, R[k], gr);
    }
    return acc / R.size() * g.volume();
}

} // namespace wkbflow
