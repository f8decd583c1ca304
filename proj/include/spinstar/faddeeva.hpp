#pragma once

#include <complex>

namespace spinstar {

// Faddeeva function w(z) = exp(-z^2) erfc(-iz), accurate to ~1e-14
// relative over the whole plane (absolute near the real-axis zeros of
// Re w).  Entire in z; the two internal branches overlap smoothly.
std::complex<double> faddeeva_w(std::complex<double> z);

// Error functions of complex argument, built on w.
std::complex<double> erf_c(std::complex<double> z);
std::complex<double> erfc_c(std::complex<double> z);

} // namespace spinstar
