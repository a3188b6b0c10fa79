#pragma once

#include <complex>
#include <vector>

namespace levyig::detail {

/// Forward DFT, X_j = sum_k x_k e^{-2 pi i j k / N}; N must be a power of two.
/// Thread-safe (plans are cached per size behind a mutex, execution runs on
/// caller-owned buffers).
void fft_forward(std::vector<std::complex<double>>& data);

}  // namespace levyig::detail
