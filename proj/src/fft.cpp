#include "vibelab/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace vibelab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr size_t kParallelThreshold = 8192;

bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

size_t next_pow2(size_t n) {
  size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft_radix2_inplace(std::vector<std::complex<double>>& a, bool inverse) {
  const size_t n = a.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const double sign = inverse ? 1.0 : -1.0;
  for (size_t len = 2; len <= n; len <<= 1) {
    const size_t half = len >> 1;
    const double base = sign * 2.0 * kPi / static_cast<double>(len);
    const auto pairs = static_cast<long long>(n >> 1);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
    for (long long p = 0; p < pairs; ++p) {
      const size_t group = static_cast<size_t>(p) / half;
      const size_t k = static_cast<size_t>(p) % half;
      const size_t i = group * len + k;
      const std::complex<double> w = std::polar(1.0, base * static_cast<double>(k));
      const std::complex<double> u = a[i];
      const std::complex<double> t = w * a[i + half];
      a[i] = u + t;
      a[i + half] = u - t;
    }
  }
}

std::vector<std::complex<double>> fft_bluestein(std::span<const std::complex<double>> x) {
  const size_t n = x.size();
  const size_t m = next_pow2(2 * n - 1);
  const auto two_n = static_cast<unsigned long long>(2 * n);

  // chirp w_k = exp(-i*pi*k^2/n); k^2 reduced mod 2n keeps the angle small
  std::vector<std::complex<double>> chirp(n);
  for (size_t k = 0; k < n; ++k) {
    const unsigned long long kk = (static_cast<unsigned long long>(k) * k) % two_n;
    chirp[k] = std::polar(1.0, -kPi * static_cast<double>(kk) / static_cast<double>(n));
  }

  std::vector<std::complex<double>> a(m), b(m);
  for (size_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
  b[0] = std::conj(chirp[0]);
  for (size_t k = 1; k < n; ++k) b[k] = b[m - k] = std::conj(chirp[k]);

  fft_radix2_inplace(a, false);
  fft_radix2_inplace(b, false);
  for (size_t k = 0; k < m; ++k) a[k] *= b[k];
  fft_radix2_inplace(a, true);

  std::vector<std::complex<double>> out(n);
  const double scale = 1.0 / static_cast<double>(m);
  for (size_t k = 0; k < n; ++k) out[k] = a[k] * scale * chirp[k];
  return out;
}

}  // namespace

std::vector<std::complex<double>> fft(std::span<const std::complex<double>> input) {
  const size_t n = input.size();
  if (n == 0) return {};
  if (n == 1) return {input[0]};
  if (is_pow2(n)) {
    std::vector<std::complex<double>> a(input.begin(), input.end());
    fft_radix2_inplace(a, false);
    return a;
  }
  return fft_bluestein(input);
}

std::vector<std::complex<double>> fft_real(std::span<const double> input) {
  std::vector<std::complex<double>> buf(input.size());
  for (size_t i = 0; i < input.size(); ++i) buf[i] = {input[i], 0.0};
  return fft(buf);
}

std::vector<std::complex<double>> dft_reference(
    std::span<const std::complex<double>> input) {
  const size_t n = input.size();
  std::vector<std::complex<double>> out(n);
  for (size_t k = 0; k < n; ++k) {
    std::complex<double> sum{0.0, 0.0};
    for (size_t j = 0; j < n; ++j) {
      const double angle =
          -2.0 * kPi * static_cast<double>((k * j) % n) / static_cast<double>(n);
      sum += input[j] * std::polar(1.0, angle);
    }
    out[k] = sum;
  }
  return out;
}

std::vector<std::complex<double>> dft_reference_real(std::span<const double> input) {
  std::vector<std::complex<double>> buf(input.size());
  for (size_t i = 0; i < input.size(); ++i) buf[i] = {input[i], 0.0};
  return dft_reference(buf);
}

}  // namespace vibelab
