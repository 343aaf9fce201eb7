#pragma once

#include "wkbflow/extended_solver.hpp"

namespace wkbflow {

/// Decomposition of an extended state into slow mean fields plus rescaled
/// fluctuations. All hatted fields have zero angle average; lambda_hat is the
/// slow fluctuation combination.
struct FastSlowSplit {
    SlowMeanFields slow;
    VectorField h_disp_bar;
    LoopField rho_hat;    // (rho - mean) / eps
    LoopField lambda_hat; // rho_hat + p_hat . grad S / (c_s |grad S| - ...)
    FastFields fast;      // alpha_hat, p_hat (.. / eps), chi_hat ( / eps^2)
    double eps = 1.0;
};

/// Means via the angle average, fluctuations rescaled by their asymptotic
/// orders (1/eps for rho and p, 1/eps^2 for the labels and multiplier).
FastSlowSplit split_state(const ExtendedState& ext, const IsothermalParams& params);

/// Defect of the leading-order slaving functions under the flow: compares
/// eps times the finite-difference derivative of the slaving map along a
/// short solver trajectory (centered step fd_eps) against the fast part of
/// the vector field at the initial state. Returns the combined L2 mismatch.
double invariance_residual(const ExtendedState& ext, const HamiltonianSpec& H,
                           const PhaseClosure& closure, double fd_eps,
                           const IsothermalParams& params);

/// Reynolds stress by direct angle quadrature of the quadratic fluctuation
/// flux, its closed form c_s I gradS (x) gradS / |gradS| on slaved
/// fluctuations, and the relative Frobenius discrepancy between the two.
struct ReynoldsCheck {
    std::vector<ScalarField> quadrature; // dim*dim components, row-major
    std::vector<ScalarField> closed_form;
    double discrepancy = 0.0;
};
ReynoldsCheck reynolds_stress_check(const FastSlowSplit& split,
                                    const IsothermalParams& params);

} // namespace wkbflow
