#include "wkbflow/loop_ops.hpp"

#include <sstream>

#include "wkbflow/fft.hpp"

namespace wkbflow {

namespace {

constexpr std::complex<double> imag_unit{0.0, 1.0};
using Cplx = std::complex<double>;

int signed_mode(int k, int n) { return (k <= n / 2) ? k : k - n; }

/// Apply a per-mode complex multiplier to the spatial spectrum of one
/// harmonic column. The multiplier sees the signed mode pair (m0, m1).
template <class Fn>
void x_transform(LoopField& f, Fn&& multiplier) {
    const TorusGrid& g = f.grid();
    const int nh = g.harmonics();
    if (g.dim == 1) {
        const int n0 = g.n[0];
        std::vector<Cplx> col(n0), hat(n0);
        for (int m = 0; m < nh; ++m) {
            for (int i = 0; i < n0; ++i) col[i] = f.coeff(i, m);
            fft::c2c_fwd(n0, col.data(), hat.data());
            for (int k = 0; k < n0; ++k) {
                hat[k] *= multiplier(signed_mode(k, n0), 0);
                if (k == n0 / 2) hat[k] = 0.0;
            }
            fft::c2c_bwd(n0, hat.data(), col.data());
            for (int i = 0; i < n0; ++i) f.coeff(i, m) = col[i];
        }
        return;
    }
    const int n0 = g.n[0], n1 = g.n[1];
    std::vector<Cplx> col(n0 * n1), hat(n0 * n1);
    for (int m = 0; m < nh; ++m) {
        for (int i = 0; i < n0; ++i)
            for (int j = 0; j < n1; ++j) col[i * n1 + j] = f.coeff(g.index(i, j), m);
        fft::c2c_fwd_2d(n0, n1, col.data(), hat.data());
        for (int i = 0; i < n0; ++i)
            for (int j = 0; j < n1; ++j) {
                Cplx& c = hat[i * n1 + j];
                c *= multiplier(signed_mode(i, n0), signed_mode(j, n1));
                if (i == n0 / 2 || j == n1 / 2) c = 0.0;
            }
        fft::c2c_bwd_2d(n0, n1, hat.data(), col.data());
        for (int i = 0; i < n0; ++i)
            for (int j = 0; j < n1; ++j) f.coeff(g.index(i, j), m) = col[i * n1 + j];
    }
}

} // namespace

ScalarField theta_average(const LoopField& f) {
    ScalarField out(f.grid());
    for (int ix = 0; ix < f.grid().points(); ++ix) out[ix] = f.coeff(ix, 0).real();
    return out;
}

LoopField theta_derivative(const LoopField& f) {
    LoopField out = f;
    const int nh = f.grid().harmonics();
    for (int ix = 0; ix < f.grid().points(); ++ix)
        for (int m = 0; m < nh; ++m) out.coeff(ix, m) *= imag_unit * double(m);
    return out;
}

LoopField theta_antiderivative(const LoopField& f) {
    const TorusGrid& g = f.grid();
    for (int ix = 0; ix < g.points(); ++ix) {
        if (std::abs(f.coeff(ix, 0)) > tol_mean) {
            std::ostringstream msg;
            msg << "theta antiderivative requires zero mean; |mean| = "
                << std::abs(f.coeff(ix, 0)) << " at x-index " << ix;
            throw MeanNotZero(msg.str());
        }
    }
    LoopField out = f;
    const int nh = g.harmonics();
    for (int ix = 0; ix < g.points(); ++ix) {
        out.coeff(ix, 0) = 0.0;
        for (int m = 1; m < nh; ++m) out.coeff(ix, m) /= imag_unit * double(m);
    }
    return out;
}

LoopField phase_shift(const LoopField& f, const PhaseField& S, double scale) {
    const TorusGrid& g = f.grid();
    LoopField out = f;
    const int nh = g.harmonics();
    for (int i = 0; i < g.n[0]; ++i)
        for (int j = 0; j < g.n[1]; ++j) {
            const int ix = g.index(i, j);
            const double phi = scale * S.value(i, j);
            const Cplx rot{std::cos(phi), std::sin(phi)};
            Cplx r = rot;
            for (int m = 1; m < nh; ++m) {
                out.coeff(ix, m) *= r;
                r *= rot;
            }
        }
    return out;
}

LoopField x_deriv(const LoopField& f, int axis) {
    const TorusGrid& g = f.grid();
    if (axis < 0 || axis >= g.dim)
        throw ConfigError("derivative axis " + std::to_string(axis) +
                          " out of range for dim " + std::to_string(g.dim));
    LoopField out = f;
    const double k0 = two_pi / g.length[axis];
    x_transform(out, [&](int m0, int m1) {
        return imag_unit * k0 * double(axis == 0 ? m0 : m1);
    });
    return out;
}

VectorLoopField grad_s(const LoopField& f, const PhaseField& S, double eps) {
    const TorusGrid& g = f.grid();
    VectorLoopField out(g);
    LoopField dth = theta_derivative(f);
    VectorField gs = S.gradient();
    for (int a = 0; a < g.dim; ++a) {
        out[a] = x_deriv(f, a);
        const int nh = g.harmonics();
        for (int ix = 0; ix < g.points(); ++ix) {
            const double c = gs[a][ix] / eps;
            for (int m = 0; m < nh; ++m) out[a].coeff(ix, m) += c * dth.coeff(ix, m);
        }
    }
    return out;
}

LoopField dealias(const LoopField& f) {
    const TorusGrid& g = f.grid();
    LoopField out = f;
    const int nh = g.harmonics();
    const int cut_t = dealias_cutoff(g.n_theta);
    for (int ix = 0; ix < g.points(); ++ix)
        for (int m = 0; m < nh; ++m)
            if (m > cut_t || m == g.n_theta / 2) out.coeff(ix, m) = 0.0;
    const int c0 = dealias_cutoff(g.n[0]);
    const int c1 = g.dim == 2 ? dealias_cutoff(g.n[1]) : 0;
    x_transform(out, [&](int m0, int m1) {
        bool keep = std::abs(m0) <= c0 && (g.dim == 1 || std::abs(m1) <= c1);
        return keep ? 1.0 : 0.0;
    });
    return out;
}

LoopField multiply(const LoopField& a, const LoopField& b) {
    std::vector<double> va = a.values(), vb = b.values();
    for (size_t k = 0; k < va.size(); ++k) va[k] *= vb[k];
    return dealias(LoopField::from_values(a.grid(), va));
}

LoopField scale_by(const LoopField& f, const ScalarField& g) {
    LoopField out = f;
    const int nh = f.grid().harmonics();
    for (int ix = 0; ix < f.grid().points(); ++ix)
        for (int m = 0; m < nh; ++m) out.coeff(ix, m) *= g[ix];
    return out;
}

double integral_xtheta(const LoopField& f) { return integral(theta_average(f)); }

} // namespace wkbflow
