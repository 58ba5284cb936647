#include "vibelab/plant.hpp"

#include <cmath>
#include <stdexcept>

#include "vibelab/analysis.hpp"

namespace vibelab {

SimulationResult simulate(const PlantParams& plant, const MotionProfile& command,
                          double settle_horizon_s) {
  plant.validate();
  command.validate();
  if (!std::isfinite(settle_horizon_s) || settle_horizon_s < 0.0)
    throw std::domain_error("settle horizon must be non-negative");

  const double h = command.sample_period_s;
  const double wn = plant.natural_frequency_rad_s;
  const double zeta = plant.damping_ratio;
  const double wd = plant.damped_frequency_rad_s();

  // State transition over one sample with piecewise-constant input.
  const double e = std::exp(-zeta * wn * h);
  const double c = std::cos(wd * h), s = std::sin(wd * h);
  const double f11 = e * (c + zeta * wn / wd * s);
  const double f12 = e * s / wd;
  const double f21 = -wn * wn / wd * e * s;
  const double f22 = e * (c - zeta * wn / wd * s);
  const double g1 = (f11 - 1.0) / (wn * wn);
  const double g2 = f21 / (wn * wn);

  const size_t n_cmd = command.samples.size();
  const size_t n_total = n_cmd + static_cast<size_t>(std::ceil(settle_horizon_s / h - 1e-9));

  SimulationResult result;
  result.sample_period_s = h;
  result.command_end_time_s = h * static_cast<double>(n_cmd);
  result.displacement_m.resize(n_total);
  result.acceleration_mps2.resize(n_total);

  double x = 0.0, v = 0.0;
  for (size_t k = 0; k < n_total; ++k) {
    const double u = k < n_cmd ? command.samples[k].acceleration_mps2 : 0.0;
    result.displacement_m[k] = x;
    result.acceleration_mps2[k] = -2.0 * zeta * wn * v - wn * wn * x - u;
    const double xn = f11 * x + f12 * v + g1 * u;
    const double vn = f21 * x + f22 * v + g2 * u;
    x = xn;
    v = vn;
  }
  return result;
}

SettlingTime settling_time(const SimulationResult& result, double band_m) {
  if (!std::isfinite(band_m) || band_m <= 0.0)
    throw std::domain_error("settling band must be positive");
  if (result.displacement_m.empty())
    throw std::domain_error("simulation result is empty");

  const double h = result.sample_period_s;
  const size_t n = result.displacement_m.size();
  const auto first_residual =
      static_cast<size_t>(std::ceil(result.command_end_time_s / h - 1e-9));

  size_t last_outside = n;  // sentinel: none
  for (size_t k = n; k-- > first_residual;) {
    if (std::abs(result.displacement_m[k]) > band_m) {
      last_outside = k;
      break;
    }
  }
  if (last_outside == n - 1)
    return {h * static_cast<double>(n), false};
  if (last_outside == n)
    return {result.command_end_time_s, true};
  return {std::max(result.command_end_time_s, h * static_cast<double>(last_outside + 1)),
          true};
}

VibrationMetrics residual_metrics(const SimulationResult& result) {
  if (result.acceleration_mps2.empty())
    throw std::domain_error("simulation result is empty");
  const double h = result.sample_period_s;
  const auto first =
      static_cast<size_t>(std::ceil(result.command_end_time_s / h - 1e-9));
  if (first >= result.acceleration_mps2.size())
    throw std::domain_error("simulation has no samples after the command end");
  return metrics({result.acceleration_mps2.data() + first,
                  result.acceleration_mps2.size() - first});
}

double residual_rms(const SimulationResult& result) { return residual_metrics(result).rms; }

}  // namespace vibelab
