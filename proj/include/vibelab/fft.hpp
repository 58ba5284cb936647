#pragma once

#include <complex>
#include <span>
#include <vector>

namespace vibelab {

/// Forward DFT, any length >= 1. Radix-2 for powers of two, Bluestein
/// otherwise; butterflies run under OpenMP for large frames.
std::vector<std::complex<double>> fft(std::span<const std::complex<double>> input);
std::vector<std::complex<double>> fft_real(std::span<const double> input);

/// Direct O(n^2) transform. Serial reference for the tests and benchmark.
std::vector<std::complex<double>> dft_reference(std::span<const std::complex<double>> input);
std::vector<std::complex<double>> dft_reference_real(std::span<const double> input);

}  // namespace vibelab
