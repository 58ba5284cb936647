#pragma once

#include <string>
#include <vector>

namespace vibelab {

struct PlantParams {
  double natural_frequency_rad_s = 0.0;
  double damping_ratio = 0.0;  // 0 <= zeta < 1 (underdamped)

  double damped_frequency_rad_s() const;
  void validate() const;  // throws std::domain_error
};

struct Impulse {
  double amplitude = 0.0;
  double time_s = 0.0;
};

/// Unit-gain impulse train: amplitudes sum to 1, first impulse at t = 0,
/// times strictly increasing.
struct ImpulseSequence {
  std::vector<Impulse> impulses;

  double duration_s() const;
  double amplitude_sum() const;
  void validate() const;  // throws std::invalid_argument
};

enum class ShaperKind { Zv, Zvd, Zvdd, Ei };

const char* to_string(ShaperKind kind);
ShaperKind parse_shaper_kind(const std::string& name);  // throws std::invalid_argument

inline constexpr double kDefaultTolerableVibration = 0.05;

/// Closed forms for ZV/ZVD/ZVDD; EI undamped closed form, damped EI solved
/// numerically (throws ConvergenceError with a residual report on failure).
/// tolerable_vibration applies to EI only.
ImpulseSequence design_shaper(ShaperKind kind, const PlantParams& plant,
                              double tolerable_vibration = kDefaultTolerableVibration);

/// Residual vibration amplitude left by the impulse train, as a fraction of
/// the unshaped single-impulse response, evaluated at the last impulse time.
double residual_vibration(const ImpulseSequence& seq, const PlantParams& plant);

/// Slope of residual_vibration with respect to the frequency ratio
/// actual/design, at the given ratio (analytic, not finite-difference).
double residual_vibration_slope(const ImpulseSequence& seq, const PlantParams& design,
                                double frequency_ratio);

struct SensitivityPoint {
  double frequency_ratio = 0.0;  // actual / design natural frequency
  double residual = 0.0;
};

/// Residual vibration over a frequency-ratio grid [ratio_lo, ratio_hi],
/// design damping held fixed. OpenMP path; sensitivity_curve_serial is the
/// plain-loop reference used by the tests and the benchmark.
std::vector<SensitivityPoint> sensitivity_curve(const ImpulseSequence& seq,
                                                const PlantParams& design,
                                                double ratio_lo = 0.5, double ratio_hi = 1.5,
                                                int points = 2001);
std::vector<SensitivityPoint> sensitivity_curve_serial(const ImpulseSequence& seq,
                                                       const PlantParams& design,
                                                       double ratio_lo = 0.5,
                                                       double ratio_hi = 1.5,
                                                       int points = 2001);

/// Width of the largest contiguous frequency-ratio interval containing 1.0
/// where the residual stays <= tolerable_vibration; edges refined by
/// bisection within [0.5, 1.5]. Returns 0 when the residual at ratio 1.0
/// already exceeds the tolerance.
double insensitivity_width(const ImpulseSequence& seq, const PlantParams& design,
                           double tolerable_vibration);

struct ConvergenceError;  // defined in errors.hpp

}  // namespace vibelab
