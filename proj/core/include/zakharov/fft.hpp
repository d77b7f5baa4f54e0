#pragma once

#include <complex>

namespace zakharov::fft {

// Unnormalized n^3 complex transforms in FFTW sign convention
// (forward uses e^{-i}). Plans are cached per (n, direction, placement) and
// created under a lock; execution is thread safe. `in` may equal `out`.
void forward(int n, const std::complex<double>* in, std::complex<double>* out);
void backward(int n, const std::complex<double>* in, std::complex<double>* out);

// Releases all cached plans. Only call when no transform is running.
void clear_plan_cache();

}  // namespace zakharov::fft
