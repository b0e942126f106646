#pragma once

#include <complex>

namespace pwdirac {

/// Thin FFTW wrappers with a guarded plan cache (the FFTW planner is not
/// thread-safe; execution of cached plans is). Unnormalized transforms in
/// the FFTW sign convention: forward multiplies by e^{-i 2 pi j k / n}.
void fft_1d(std::complex<double>* data, int n, bool inverse);

/// In-place 3D transform of an n^3 cube (row-major, last index fastest).
void fft_3d(std::complex<double>* data, int n, bool inverse);

}  // namespace pwdirac
