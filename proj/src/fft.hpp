#pragma once

#include <complex>
#include <span>
#include <vector>

namespace fractalmsg::detail {

// Unnormalized real-to-complex DFT; returns N/2 + 1 bins.
std::vector<std::complex<double>> real_dft(std::span<const double> samples);

// Inverse of real_dft scaled by 1/N, so real_inverse_dft(real_dft(x), N) == x.
std::vector<double> real_inverse_dft(std::span<const std::complex<double>> bins, std::size_t n);

} // namespace fractalmsg::detail
