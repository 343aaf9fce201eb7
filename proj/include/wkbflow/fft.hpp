#pragma once

#include <complex>

namespace wkbflow::fft {

// Thin, deterministic wrappers around FFTW. Forward transforms divide by the
// transform length so stored coefficients are amplitudes; the inverses
// synthesize values directly. Plans are cached per size behind a mutex and
// executed on caller buffers, so concurrent calls from different threads are
// safe and bit-identical regardless of thread count.

void r2c(int n, const double* in, std::complex<double>* out);  // out: n/2+1
void c2r(int n, const std::complex<double>* in, double* out);

void r2c_2d(int n0, int n1, const double* in, std::complex<double>* out); // out: n0*(n1/2+1)
void c2r_2d(int n0, int n1, const std::complex<double>* in, double* out);

void c2c_fwd(int n, const std::complex<double>* in, std::complex<double>* out);
void c2c_bwd(int n, const std::complex<double>* in, std::complex<double>* out);

void c2c_fwd_2d(int n0, int n1, const std::complex<double>* in, std::complex<double>* out);
void c2c_bwd_2d(int n0, int n1, const std::complex<double>* in, std::complex<double>* out);

} // namespace wkbflow::fft
