#pragma once

#include "wkbflow/loop_field.hpp"
#include "wkbflow/phase_field.hpp"

namespace wkbflow {

inline constexpr double tol_mean = 1e-12;

/// Harmonic 0, i.e. (2 pi)^-1 times the integral over the phase angle.
ScalarField theta_average(const LoopField& f);

/// Multiplication by (i m) on harmonics.
LoopField theta_derivative(const LoopField& f);

/// Unique zero-mean antiderivative in the phase angle: harmonic m maps to
/// harmonic / (i m) for m != 0, harmonic 0 of the output is zero.
/// Requires |theta_average(f)| <= tol_mean everywhere.
LoopField theta_antiderivative(const LoopField& f);

/// f^{scale S}(x, theta) = f(x, theta + scale S(x)): harmonic m is multiplied
/// pointwise by exp(i m scale S(x)). Exact in harmonic space; inverse shift
/// recovers f exactly.
LoopField phase_shift(const LoopField& f, const PhaseField& S, double scale);

/// Fourier differentiation in a spatial axis, applied per harmonic.
LoopField x_deriv(const LoopField& f, int axis);

/// Shifted gradient: component a is x_deriv(f, a) + (grad S_a / eps) d_theta f.
VectorLoopField grad_s(const LoopField& f, const PhaseField& S, double eps);

/// 2/3-rule truncation in the angle and every spatial axis.
LoopField dealias(const LoopField& f);

/// Pointwise product at (x, theta) collocation followed by the truncation.
LoopField multiply(const LoopField& a, const LoopField& b);

/// Pointwise multiplication of every harmonic by a theta-independent field.
LoopField scale_by(const LoopField& f, const ScalarField& g);

/// fint over theta then integral over the torus.
double integral_xtheta(const LoopField& f);

} // namespace wkbflow
