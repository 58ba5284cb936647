#include "vibelab/motion.hpp"

#include <cmath>
#include <stdexcept>

namespace vibelab {

namespace {

void check_sample_period(double h) {
  if (!std::isfinite(h) || h <= 0.0)
    throw std::domain_error("sample period must be positive and finite");
}

// Rebuild velocity and position from acceleration per the documented
// integration convention.
void integrate(MotionProfile& profile) {
  const double h = profile.sample_period_s;
  double v = 0.0, p = 0.0;
  for (MotionSample& s : profile.samples) {
    v += h * s.acceleration_mps2;
    p += h * v;
    s.velocity_mps = v;
    s.position_m = p;
  }
}

}  // namespace

void MotionProfile::validate() const {
  check_sample_period(sample_period_s);
  if (samples.empty()) throw std::invalid_argument("motion profile has no samples");
  for (const MotionSample& s : samples) {
    if (!std::isfinite(s.position_m) || !std::isfinite(s.velocity_mps) ||
        !std::isfinite(s.acceleration_mps2))
      throw std::invalid_argument("motion profile contains a non-finite sample");
  }
}

void TrapezoidParams::validate() const {
  if (!std::isfinite(distance_m)) throw std::domain_error("distance must be finite");
  if (!std::isfinite(max_velocity_mps) || max_velocity_mps <= 0.0)
    throw std::domain_error("max velocity must be positive");
  if (!std::isfinite(max_acceleration_mps2) || max_acceleration_mps2 <= 0.0)
    throw std::domain_error("max acceleration must be positive");
}

MotionProfile trapezoid_profile(const TrapezoidParams& params, double sample_period_s) {
  params.validate();
  check_sample_period(sample_period_s);

  MotionProfile profile;
  profile.sample_period_s = sample_period_s;
  if (params.distance_m == 0.0) {
    profile.samples.resize(1);
    return profile;
  }

  const double dist = std::abs(params.distance_m);
  const double sign = params.distance_m < 0.0 ? -1.0 : 1.0;
  const double vmax = params.max_velocity_mps;
  const double amax = params.max_acceleration_mps2;
  const double h = sample_period_s;

  double ramp_s, coast_s;
  if (dist >= vmax * vmax / amax) {
    ramp_s = vmax / amax;
    coast_s = (dist - vmax * vmax / amax) / vmax;
  } else {
    ramp_s = std::sqrt(dist / amax);
    coast_s = 0.0;
  }

  // Round phase edges up so the solved levels stay within the limits, then
  // pick the acceleration that closes the displacement exactly:
  //   final position = accel * h^2 * n * (n + m).
  const auto ceil_count = [](double t, double h_) {
    return std::max<long>(1, static_cast<long>(std::ceil(t / h_ - 1e-9)));
  };
  const long n = ceil_count(ramp_s, h);
  const long m = coast_s > 0.0 ? static_cast<long>(std::ceil(coast_s / h - 1e-9)) : 0;
  const double accel = dist / (h * h * static_cast<double>(n) * static_cast<double>(n + m));

  profile.samples.reserve(2 * n + m + 1);
  for (long i = 0; i < n; ++i) profile.samples.push_back({0, 0, sign * accel});
  for (long i = 0; i < m; ++i) profile.samples.push_back({0, 0, 0.0});
  for (long i = 0; i < n; ++i) profile.samples.push_back({0, 0, -sign * accel});
  profile.samples.push_back({0, 0, 0.0});
  integrate(profile);
  return profile;
}

MotionProfile shape_command(const MotionProfile& profile, const ImpulseSequence& seq) {
  profile.validate();
  seq.validate();

  const double h = profile.sample_period_s;
  struct Tap {
    size_t delay;
    double weight;
  };
  std::vector<Tap> taps;
  size_t max_delay = 0;
  for (const Impulse& imp : seq.impulses) {
    const double pos = imp.time_s / h;
    const auto k = static_cast<size_t>(std::floor(pos + 1e-12));
    const double frac = pos - static_cast<double>(k);
    if (frac < 1e-9) {
      taps.push_back({k, imp.amplitude});
      max_delay = std::max(max_delay, k);
    } else {
      taps.push_back({k, imp.amplitude * (1.0 - frac)});
      taps.push_back({k + 1, imp.amplitude * frac});
      max_delay = std::max(max_delay, k + 1);
    }
  }

  MotionProfile shaped;
  shaped.sample_period_s = h;
  shaped.samples.resize(profile.samples.size() + max_delay);
  for (const Tap& tap : taps) {
    for (size_t i = 0; i < profile.samples.size(); ++i)
      shaped.samples[i + tap.delay].acceleration_mps2 +=
          tap.weight * profile.samples[i].acceleration_mps2;
  }
  integrate(shaped);
  return shaped;
}

}  // namespace vibelab
