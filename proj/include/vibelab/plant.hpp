#pragma once

#include <vector>

#include "vibelab/analysis.hpp"
#include "vibelab/motion.hpp"
#include "vibelab/shaper.hpp"

namespace vibelab {

/// Endpoint deflection relative to the commanded trajectory, from
///   x'' + 2*zeta*wn*x' + wn^2*x = -u(t),
/// u being the commanded base acceleration. acceleration_mps2 holds x''.
struct SimulationResult {
  double sample_period_s = 0.0;
  double command_end_time_s = 0.0;
  std::vector<double> displacement_m;
  std::vector<double> acceleration_mps2;
};

/// Steps the plant with the exact zero-order-hold discretization of the
/// two-state transition; no integration drift accumulates. The horizon is
/// appended after the command with u = 0.
SimulationResult simulate(const PlantParams& plant, const MotionProfile& command,
                          double settle_horizon_s);

struct SettlingTime {
  double time_s = 0.0;
  bool settled = false;  // false means the band was still violated at horizon end
};

inline constexpr double kDefaultSettleBand = 5e-6;

/// Earliest time at or after the command end from which |displacement| stays
/// within the band through the end of the horizon.
SettlingTime settling_time(const SimulationResult& result, double band_m = kDefaultSettleBand);

/// RMS of the endpoint acceleration restricted to t >= command end.
double residual_rms(const SimulationResult& result);

/// Full metrics (RMS, peak, crest factor) over the same residual span.
VibrationMetrics residual_metrics(const SimulationResult& result);

}  // namespace vibelab
