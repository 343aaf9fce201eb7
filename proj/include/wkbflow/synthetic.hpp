#pragma once

#include <random>

#include "wkbflow/loop_ops.hpp"

namespace wkbflow {

/// Deterministic band-limited random fields for invariant suites and tests.
/// Coefficients decay geometrically with the mode numbers, so the fields are
/// smooth and comfortably inside the 2/3 band.
inline ScalarField random_scalar(const TorusGrid& g, unsigned seed, int k_max,
                                 double amplitude = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    ScalarField out(g);
    for (int kx = 0; kx <= k_max; ++kx) {
        const int ky_hi = g.dim == 2 ? k_max : 0;
        for (int ky = -ky_hi; ky <= ky_hi; ++ky) {
            if (kx == 0 && ky < 0) continue;
            const double a = unif(rng) * amplitude / (1.0 + kx * kx + ky * ky);
            const double b = unif(rng) * amplitude / (1.0 + kx * kx + ky * ky);
            for (int i = 0; i < g.n[0]; ++i)
                for (int j = 0; j < g.n[1]; ++j) {
                    const double ph =
                        two_pi * (kx * g.x(0, i) / g.length[0] +
                                  (g.dim == 2 ? ky * g.x(1, j) / g.length[1] : 0.0));
                    out.at(i, j) += a * std::cos(ph) + b * std::sin(ph);
                }
        }
    }
    return out;
}

/// Random loop field with spatial modes <= k_max and angle harmonics in
/// [1, m_max]; the angle mean is zero unless include_mean is set.
inline LoopField random_loop(const TorusGrid& g, unsigned seed, int k_max, int m_max,
                             double amplitude = 1.0, bool include_mean = false) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> vals(static_cast<size_t>(g.points()) * g.n_theta, 0.0);
    const int m_lo = include_mean ? 0 : 1;
    for (int m = m_lo; m <= m_max; ++m)
        for (int kx = 0; kx <= k_max; ++kx) {
            const double a = unif(rng) * amplitude / (1.0 + m * m + kx * kx);
            const double b = unif(rng) * amplitude / (1.0 + m * m + kx * kx);
            for (int i = 0; i < g.n[0]; ++i)
                for (int j = 0; j < g.n[1]; ++j)
                    for (int t = 0; t < g.n_theta; ++t) {
                        const double xph = two_pi * kx * g.x(0, i) / g.length[0];
                        const double th = g.theta(t);
                        vals[static_cast<size_t>(g.index(i, j)) * g.n_theta + t] +=
                            a * std::cos(m * th + xph) + b * std::sin(m * th + xph);
                    }
        }
    return LoopField::from_values(g, vals);
}

} // namespace wkbflow
