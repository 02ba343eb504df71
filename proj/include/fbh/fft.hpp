#ifndef FBH_FFT_HPP
#define FBH_FFT_HPP

#include <complex>
#include <vector>

namespace fbh::fft {

// In-place n-dimensional complex DFT (row-major layout, last dim fastest).
// sign = -1 forward, +1 backward (unnormalized, FFTW convention).
void dft(std::vector<std::complex<double>>& data, const std::vector<int>& dims, int sign);

// DFT frequency for index k of an n-point axis with physical length 2L:
// xi_k = pi * k' / L with k' the signed index.
double frequency(int k, int n, double L);

} // namespace fbh::fft

#endif
