#pragma once

#include "wkbflow/hamiltonian.hpp"
#include "wkbflow/loop_ops.hpp"

namespace wkbflow {

/// Slow mean fields entering the fast linear operator and the slaving
/// formulas. S is the order-one phase; e_k = grad S / |grad S|.
struct SlowMeanFields {
    ScalarField rho_bar;
    VectorField p_bar;
    ScalarField chi_bar;
    PhaseField S;
};

/// Fast fluctuation block: label displacement, momentum and multiplier
/// fluctuations, all with zero angle average.
struct FastFields {
    VectorLoopField alpha_hat;
    VectorLoopField p_hat;
    LoopField chi_hat;

    FastFields() = default;
    explicit FastFields(const TorusGrid& g) : alpha_hat(g), p_hat(g), chi_hat(g) {}

    FastFields& operator+=(const FastFields& o) {
        alpha_hat += o.alpha_hat;
        p_hat += o.p_hat;
        chi_hat += o.chi_hat;
        return *this;
    }
    FastFields& operator-=(const FastFields& o) {
        for (int a = 0; a < alpha_hat.dim(); ++a) {
            alpha_hat[a] -= o.alpha_hat[a];
            p_hat[a] -= o.p_hat[a];
        }
        chi_hat -= o.chi_hat;
        return *this;
    }
    FastFields& operator*=(double s) {
        alpha_hat *= s;
        p_hat *= s;
        chi_hat *= s;
        return *this;
    }
};

/// Leading-order linear part A(x)[y] of the fast vector field, acting
/// diagonally on angle harmonics and pointwise in x.
FastFields apply_A(const SlowMeanFields& slow, const IsothermalParams& params,
                   const FastFields& y);

/// Closed-form inverse of A(x) on zero-mean fast fields, built from the
/// zero-mean angle antiderivative and the projection tensor that splits
/// momentum fluctuations along and across e_k.
FastFields invert_A(const SlowMeanFields& slow, const IsothermalParams& params,
                    const FastFields& dy);

/// Leading-order slaving functions expressing the fast fields in terms of
/// the slow fields and the density fluctuation.
FastFields slaving_leading(const SlowMeanFields& slow, const IsothermalParams& params,
                           const LoopField& rho_hat);

/// The slow combination of density and momentum fluctuations,
/// rho_hat + p_hat . grad S / (c_s |grad S| - p_bar . grad S / rho_bar).
LoopField lambda_hat(const SlowMeanFields& slow, const IsothermalParams& params,
                     const LoopField& rho_hat, const VectorLoopField& p_hat);

/// L2 norm over (x, theta) collocation of a fast block, via Parseval.
double fast_norm(const FastFields& y);
double l2(const LoopField& f);

} // namespace wkbflow
