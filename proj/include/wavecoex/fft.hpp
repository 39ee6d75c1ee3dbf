#pragma once

#include <complex>
#include <vector>

namespace wavecoex {

// In-place radix-2 FFT; size must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& data);

std::size_t next_pow2(std::size_t n);

}  // namespace wavecoex
