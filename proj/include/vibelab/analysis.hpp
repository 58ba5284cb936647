#pragma once

#include <optional>
#include <span>
#include <vector>

namespace vibelab {

struct VibrationMetrics {
  double rms = 0.0;
  double peak = 0.0;  // max |x|
  std::optional<double> crest_factor;  // absent when rms == 0
};

/// RMS (sqrt of the mean of squares), peak, crest factor peak/rms.
VibrationMetrics metrics(std::span<const double> samples);

/// One-sided amplitude spectrum of a Hann-windowed frame. Magnitudes are
/// normalized by the window's coherent gain and doubled except at DC and
/// Nyquist, so a steady unit-amplitude bin-centered sine reads 1.0.
struct Spectrum {
  double sample_rate_hz = 0.0;
  double frequency_resolution_hz = 0.0;
  std::vector<double> magnitudes;  // bins 0 .. floor(n/2)

  double frequency_at(size_t bin) const {
    return frequency_resolution_hz * static_cast<double>(bin);
  }
};

Spectrum spectrum(std::span<const double> samples, double sample_rate_hz);

/// Peak bin at or above min_frequency_hz, refined by parabolic interpolation
/// over the three bins around it. Throws std::domain_error when no bin
/// qualifies.
double dominant_frequency(const Spectrum& spec, double min_frequency_hz = 0.0);

/// True when the two dominant frequencies agree within tolerance_hz.
bool compare_signatures(const Spectrum& a, const Spectrum& b, double tolerance_hz,
                        double min_frequency_hz = 0.0);

}  // namespace vibelab
