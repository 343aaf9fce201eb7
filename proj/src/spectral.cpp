#include "wkbflow/spectral.hpp"

#include <complex>

#include "wkbflow/fft.hpp"

namespace wkbflow {

namespace {

constexpr std::complex<double> imag_unit{0.0, 1.0};

/// Signed mode index for position k in a length-n complex spectrum.
int signed_mode(int k, int n) { return (k <= n / 2) ? k : k - n; }

using Cplx = std::complex<double>;

void spectrum_1d(const ScalarField& f, std::vector<Cplx>& hat) {
    hat.resize(f.grid().n[0] / 2 + 1);
    fft::r2c(f.grid().n[0], f.data().data(), hat.data());
}

void synthesize_1d(const std::vector<Cplx>& hat, ScalarField& f) {
    fft::c2r(f.grid().n[0], hat.data(), f.data().data());
}

} // namespace

ScalarField spectral_deriv(const ScalarField& f, int axis) {
    const TorusGrid& g = f.grid();
    if (axis < 0 || axis >= g.dim)
        throw ConfigError("derivative axis " + std::to_string(axis) +
                          " out of range for dim " + std::to_string(g.dim));

    ScalarField out(g);
    if (g.dim == 1) {
        std::vector<Cplx> hat;
        spectrum_1d(f, hat);
        const int n = g.n[0];
        for (int k = 0; k <= n / 2; ++k) {
            double kappa = two_pi * k / g.length[0];
            hat[k] *= imag_unit * kappa;
        }
        hat[n / 2] = 0.0; // odd operator has no well-defined Nyquist image
        synthesize_1d(hat, out);
        return out;
    }

    const int n0 = g.n[0], n1 = g.n[1];
    std::vector<Cplx> hat(n0 * (n1 / 2 + 1));
    fft::r2c_2d(n0, n1, f.data().data(), hat.data());
    for (int i = 0; i < n0; ++i) {
        const int m0 = signed_mode(i, n0);
        for (int j = 0; j <= n1 / 2; ++j) {
            const int m = (axis == 0) ? m0 : j;
            double kappa = two_pi * m / g.length[axis];
            Cplx& c = hat[i * (n1 / 2 + 1) + j];
            c *= imag_unit * kappa;
            if ((axis == 0 && i == n0 / 2) || (axis == 1 && j == n1 / 2)) c = 0.0;
        }
    }
    fft::c2r_2d(n0, n1, hat.data(), out.data().data());
    return out;
}

ScalarField dealias(const ScalarField& f) {
    const TorusGrid& g = f.grid();
    ScalarField out(g);
    if (g.dim == 1) {
        std::vector<Cplx> hat;
        spectrum_1d(f, hat);
        const int cut = dealias_cutoff(g.n[0]);
        for (int k = 0; k <= g.n[0] / 2; ++k)
            if (k > cut) hat[k] = 0.0;
        hat[g.n[0] / 2] = 0.0;
        synthesize_1d(hat, out);
        return out;
    }
    const int n0 = g.n[0], n1 = g.n[1];
    const int c0 = dealias_cutoff(n0), c1 = dealias_cutoff(n1);
    std::vector<Cplx> hat(n0 * (n1 / 2 + 1));
    fft::r2c_2d(n0, n1, f.data().data(), hat.data());
    for (int i = 0; i < n0; ++i) {
        const int m0 = std::abs(signed_mode(i, n0));
        for (int j = 0; j <= n1 / 2; ++j) {
            if (m0 > c0 || j > c1 || i == n0 / 2 || j == n1 / 2)
                hat[i * (n1 / 2 + 1) + j] = 0.0;
        }
    }
    fft::c2r_2d(n0, n1, hat.data(), out.data().data());
    return out;
}

ScalarField multiply(const ScalarField& a, const ScalarField& b) {
    ScalarField out(a.grid());
    for (int k = 0; k < a.size(); ++k) out[k] = a[k] * b[k];
    return dealias(out);
}

ScalarField box_filter(const ScalarField& f, double width) {
    const TorusGrid& g = f.grid();
    auto sinc = [](double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; };
    ScalarField out(g);
    if (g.dim == 1) {
        std::vector<Cplx> hat;
        spectrum_1d(f, hat);
        for (int k = 0; k <= g.n[0] / 2; ++k) {
            double kappa = two_pi * k / g.length[0];
            hat[k] *= sinc(kappa * width / 2.0);
        }
        synthesize_1d(hat, out);
        return out;
    }
    const int n0 = g.n[0], n1 = g.n[1];
    std::vector<Cplx> hat(n0 * (n1 / 2 + 1));
    fft::r2c_2d(n0, n1, f.data().data(), hat.data());
    for (int i = 0; i < n0; ++i) {
        double k0 = two_pi * signed_mode(i, n0) / g.length[0];
        for (int j = 0; j <= n1 / 2; ++j) {
            double k1 = two_pi * j / g.length[1];
            hat[i * (n1 / 2 + 1) + j] *= sinc(k0 * width / 2.0) * sinc(k1 * width / 2.0);
        }
    }
    fft::c2r_2d(n0, n1, hat.data(), out.data().data());
    return out;
}

} // namespace wkbflow
