#pragma once

#include <complex>
#include <vector>

namespace gaborcx::detail {

// Cyclic convolution of two equal-length sequences through FFTW.
std::vector<std::complex<double>> cyclic_convolution(std::vector<std::complex<double>> a,
                                                     std::vector<std::complex<double>> b);

}  // namespace gaborcx::detail
