#pragma once

#include <vector>

#include "vibelab/shaper.hpp"

namespace vibelab {

struct MotionSample {
  double position_m = 0.0;
  double velocity_mps = 0.0;
  double acceleration_mps2 = 0.0;
};

/// Uniformly sampled command. Velocity and position are the discrete
/// integrals of acceleration: v[i] = v[i-1] + h*a[i], p[i] = p[i-1] + h*v[i].
struct MotionProfile {
  double sample_period_s = 0.0;
  std::vector<MotionSample> samples;

  double duration_s() const { return sample_period_s * static_cast<double>(samples.size()); }
  void validate() const;  // throws std::invalid_argument
};

struct TrapezoidParams {
  double distance_m = 0.0;        // signed; 0 gives a single all-zero sample
  double max_velocity_mps = 0.0;  // > 0
  double max_acceleration_mps2 = 0.0;  // > 0

  void validate() const;  // throws std::domain_error
};

/// Bang-coast-bang acceleration profile (triangular when the distance is too
/// short to reach max velocity). Phase edges are quantized to the sample
/// grid; the acceleration level is solved so the discretely integrated final
/// position equals the requested distance. Ends at rest with a zero sample.
MotionProfile trapezoid_profile(const TrapezoidParams& params, double sample_period_s);

/// Convolves the acceleration series with the impulse train and rebuilds
/// velocity/position by discrete integration. Off-grid impulse times are
/// split across the two adjacent samples preserving the first moment, so
/// on-grid times place a single tap. Output is longer by the shaper span.
MotionProfile shape_command(const MotionProfile& profile, const ImpulseSequence& seq);

}  // namespace vibelab
