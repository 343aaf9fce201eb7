#pragma once

#include "wkbflow/fields.hpp"

namespace wkbflow {

/// Fourier differentiation along a spatial axis; exact for resolved harmonics.
/// The Nyquist mode of the differentiated axis is zeroed.
ScalarField spectral_deriv(const ScalarField& f, int axis);

/// 2/3-rule truncation in every spatial axis (Nyquist included).
ScalarField dealias(const ScalarField& f);

/// Pointwise product followed by the 2/3 truncation.
ScalarField multiply(const ScalarField& a, const ScalarField& b);

/// Convolution with a periodic box window of the given width, applied as the
/// exact Fourier multiplier sinc(k w / 2). Used for local phase averaging.
ScalarField box_filter(const ScalarField& f, double width);

/// Largest kept mode index under the 2/3 rule for n samples.
inline int dealias_cutoff(int n) { return n / 3; }

} // namespace wkbflow
