#pragma once

#include "wkbflow/fields.hpp"
#include "wkbflow/spectral.hpp"

namespace wkbflow {

/// Circle-valued phase function on the spatial torus, stored as integer
/// winding numbers plus a single-valued periodic part. The split keeps the
/// gradient exact: differentiating a sawtooth representative spectrally would
/// be wrong, while the linear part differentiates in closed form.
struct PhaseField {
    std::array<int, 2> winding{0, 0};
    ScalarField periodic;

    PhaseField() = default;
    explicit PhaseField(const TorusGrid& g, std::array<int, 2> w = {0, 0})
        : winding(w), periodic(g) {}

    const TorusGrid& grid() const { return periodic.grid(); }

    /// Pointwise representative S(x) = sum_i 2 pi w_i x_i / L_i + periodic(x).
    /// Well defined for pointwise use (e.g. harmonic phase factors) even
    /// though it is only single-valued modulo 2 pi.
    double value(int i, int j = 0) const {
        const TorusGrid& g = grid();
        double s = two_pi * winding[0] * g.x(0, i) / g.length[0];
        if (g.dim == 2) s += two_pi * winding[1] * g.x(1, j) / g.length[1];
        return s + periodic.at(i, j);
    }

    ScalarField values() const {
        const TorusGrid& g = grid();
        ScalarField out(g);
        for (int i = 0; i < g.n[0]; ++i)
            for (int j = 0; j < g.n[1]; ++j) out.at(i, j) = value(i, j);
        return out;
    }

    VectorField gradient() const {
        const TorusGrid& g = grid();
        VectorField out(g);
        for (int a = 0; a < g.dim; ++a) {
            out[a] = spectral_deriv(periodic, a);
            const double lin = two_pi * winding[a] / g.length[a];
            for (int k = 0; k < out[a].size(); ++k) out[a][k] += lin;
        }
        return out;
    }

    ScalarField gradient_norm() const {
        VectorField gs = gradient();
        const TorusGrid& g = grid();
        ScalarField out(g);
        for (int k = 0; k < out.size(); ++k) {
            double s = gs[0][k] * gs[0][k];
            if (g.dim == 2) s += gs[1][k] * gs[1][k];
            out[k] = std::sqrt(s);
        }
        return out;
    }
};

/// Guard used by operations that divide by |grad S|.
inline double grad_s_floor(const TorusGrid& g) {
    double lmax = g.length[0];
    if (g.dim == 2) lmax = std::max(lmax, g.length[1]);
    return 1e-6 * two_pi / lmax;
}

} // namespace wkbflow
