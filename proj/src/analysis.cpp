#include "vibelab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vibelab/fft.hpp"

namespace vibelab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

VibrationMetrics metrics(std::span<const double> samples) {
  if (samples.empty()) throw std::domain_error("metrics: empty series");
  double sum_sq = 0.0, peak = 0.0;
  for (double x : samples) {
    if (!std::isfinite(x)) throw std::domain_error("metrics: non-finite sample");
    sum_sq += x * x;
    peak = std::max(peak, std::abs(x));
  }
  VibrationMetrics m;
  m.rms = std::sqrt(sum_sq / static_cast<double>(samples.size()));
  m.peak = peak;
  if (m.rms > 0.0) m.crest_factor = m.peak / m.rms;
  return m;
}

Spectrum spectrum(std::span<const double> samples, double sample_rate_hz) {
  if (samples.size() < 8) throw std::domain_error("spectrum: need at least 8 samples");
  if (!std::isfinite(sample_rate_hz) || sample_rate_hz <= 0.0)
    throw std::domain_error("spectrum: sample rate must be positive");

  const size_t n = samples.size();
  std::vector<double> windowed(n);
  double window_sum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    if (!std::isfinite(samples[i]))
      throw std::domain_error("spectrum: non-finite sample");
    const double w =
        0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n)));
    windowed[i] = w * samples[i];
    window_sum += w;
  }

  const auto bins = fft_real(windowed);

  Spectrum spec;
  spec.sample_rate_hz = sample_rate_hz;
  spec.frequency_resolution_hz = sample_rate_hz / static_cast<double>(n);
  const size_t half = n / 2;
  spec.magnitudes.resize(half + 1);
  for (size_t k = 0; k <= half; ++k) {
    const bool one_sided_pair = k != 0 && !(n % 2 == 0 && k == half);
    const double correction = one_sided_pair ? 2.0 : 1.0;
    spec.magnitudes[k] = correction * std::abs(bins[k]) / window_sum;
  }
  return spec;
}

double dominant_frequency(const Spectrum& spec, double min_frequency_hz) {
  if (min_frequency_hz < 0.0)
    throw std::domain_error("dominant_frequency: min frequency must be >= 0");
  const size_t n = spec.magnitudes.size();
  size_t first = static_cast<size_t>(
      std::ceil(min_frequency_hz / spec.frequency_resolution_hz - 1e-12));
  if (first >= n)
    throw std::domain_error("dominant_frequency: no bin at or above the minimum frequency");

  size_t peak = first;
  for (size_t k = first + 1; k < n; ++k)
    if (spec.magnitudes[k] > spec.magnitudes[peak]) peak = k;

  double offset = 0.0;
  if (peak > 0 && peak + 1 < n) {
    const double ym = spec.magnitudes[peak - 1];
    const double y0 = spec.magnitudes[peak];
    const double yp = spec.magnitudes[peak + 1];
    const double denom = ym - 2.0 * y0 + yp;
    if (denom != 0.0) offset = std::clamp(0.5 * (ym - yp) / denom, -0.5, 0.5);
  }
  return (static_cast<double>(peak) + offset) * spec.frequency_resolution_hz;
}

bool compare_signatures(const Spectrum& a, const Spectrum& b, double tolerance_hz,
                        double min_frequency_hz) {
  if (a.sample_rate_hz != b.sample_rate_hz)
    throw std::invalid_argument("compare_signatures: sample rates differ");
  if (!(tolerance_hz > 0.0))
    throw std::domain_error("compare_signatures: tolerance must be positive");
  const double fa = dominant_frequency(a, min_frequency_hz);
  const double fb = dominant_frequency(b, min_frequency_hz);
  return std::abs(fa - fb) <= tolerance_hz;
}

}  // namespace vibelab
