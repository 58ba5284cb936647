#include "vibelab/shaper.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "vibelab/errors.hpp"

namespace vibelab {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Phasor {
  double c = 0.0;  // sum A_i e^{zeta*wn*t_i} cos(wd t_i)
  double s = 0.0;
};

Phasor mode_phasor(const ImpulseSequence& seq, double wn, double zeta) {
  const double wd = wn * std::sqrt(1.0 - zeta * zeta);
  Phasor p;
  for (const Impulse& imp : seq.impulses) {
    const double g = imp.amplitude * std::exp(zeta * wn * imp.time_s);
    p.c += g * std::cos(wd * imp.time_s);
    p.s += g * std::sin(wd * imp.time_s);
  }
  return p;
}

double residual_at(const ImpulseSequence& seq, double wn, double zeta) {
  const Phasor p = mode_phasor(seq, wn, zeta);
  const double t_last = seq.impulses.back().time_s;
  return std::exp(-zeta * wn * t_last) * std::hypot(p.c, p.s);
}

// dV/dw at actual frequency w, design damping fixed.
double residual_slope_at(const ImpulseSequence& seq, double w, double zeta) {
  const double sq = std::sqrt(1.0 - zeta * zeta);
  const double wd = w * sq;
  double c = 0.0, s = 0.0, cp = 0.0, sp = 0.0;
  for (const Impulse& imp : seq.impulses) {
    const double g = imp.amplitude * std::exp(zeta * w * imp.time_s);
    const double co = std::cos(wd * imp.time_s);
    const double si = std::sin(wd * imp.time_s);
    c += g * co;
    s += g * si;
    cp += g * imp.time_s * (zeta * co - sq * si);
    sp += g * imp.time_s * (zeta * si + sq * co);
  }
  const double t_last = seq.impulses.back().time_s;
  const double decay = std::exp(-zeta * w * t_last);
  const double r = std::hypot(c, s);
  if (r == 0.0) return 0.0;  // at an exact zero the curve has a kink
  return -zeta * t_last * decay * r + decay * (c * cp + s * sp) / r;
}

ImpulseSequence from_raw(const double* raw, const double* times, int n) {
  double denom = 0.0;
  for (int i = 0; i < n; ++i) denom += raw[i];
  ImpulseSequence seq;
  seq.impulses.resize(n);
  for (int i = 0; i < n; ++i) seq.impulses[i] = {raw[i] / denom, times[i]};
  return seq;
}

ImpulseSequence design_ei_undamped(double wn, double vtol) {
  ImpulseSequence seq;
  seq.impulses = {{(1.0 + vtol) / 4.0, 0.0},
                  {(1.0 - vtol) / 2.0, kPi / wn},
                  {(1.0 + vtol) / 4.0, 2.0 * kPi / wn}};
  return seq;
}

// Damped EI: three impulses solving
//   V = 0 at two frequencies bracketing the design point (C = S = 0 at each),
//   V(wn) = vtol, dV/dw(wn) = 0, sum A = 1 (eliminated via A2).
// Newton on nondimensional unknowns [A1, A3, t2/Td, t3/Td, wlo/wn, whi/wn],
// continuation in damping from the undamped closed form.
ImpulseSequence design_ei_damped(double wn, double zeta_target, double vtol) {
  using Vec6 = Eigen::Matrix<double, 6, 1>;
  using Mat6 = Eigen::Matrix<double, 6, 6>;

  const double theta = std::acos(-(1.0 - vtol) / (1.0 + vtol));
  Vec6 z;
  z << (1.0 + vtol) / 4.0, (1.0 + vtol) / 4.0, 0.5, 1.0, theta / kPi, 2.0 - theta / kPi;

  double zeta = 0.0;
  const int steps = std::max(1, static_cast<int>(std::ceil(zeta_target / 0.05)));
  double max_resid = 0.0;

  auto assemble = [&](const Vec6& v, double zt) {
    const double td = 2.0 * kPi / (wn * std::sqrt(1.0 - zt * zt));
    ImpulseSequence seq;
    seq.impulses = {{v[0], 0.0}, {1.0 - v[0] - v[1], v[2] * td}, {v[1], v[3] * td}};
    return seq;
  };
  auto residuals = [&](const Vec6& v, double zt) {
    const ImpulseSequence seq = assemble(v, zt);
    const Phasor lo = mode_phasor(seq, v[4] * wn, zt);
    const Phasor hi = mode_phasor(seq, v[5] * wn, zt);
    Vec6 r;
    r << lo.c, lo.s, hi.c, hi.s, residual_at(seq, wn, zt) - vtol,
        residual_slope_at(seq, wn, zt) * wn;
    return r;
  };

  for (int step = 1; step <= steps; ++step) {
    zeta = zeta_target * step / steps;
    bool converged = false;
    for (int iter = 0; iter < 80; ++iter) {
      const Vec6 r = residuals(z, zeta);
      max_resid = r.cwiseAbs().maxCoeff();
      if (!std::isfinite(max_resid)) break;
      if (max_resid < 1e-12) {
        converged = true;
        break;
      }
      Mat6 jac;
      for (int j = 0; j < 6; ++j) {
        const double dz = 1e-7 * std::max(std::abs(z[j]), 1e-2);
        Vec6 zp = z, zm = z;
        zp[j] += dz;
        zm[j] -= dz;
        jac.col(j) = (residuals(zp, zeta) - residuals(zm, zeta)) / (2.0 * dz);
      }
      const Vec6 delta = jac.partialPivLu().solve(r);
      double lambda = 1.0;
      Vec6 next = z - delta;
      for (int back = 0; back < 30; ++back) {
        const double trial = residuals(next, zeta).cwiseAbs().maxCoeff();
        if (std::isfinite(trial) && trial < max_resid) break;
        lambda *= 0.5;
        next = z - lambda * delta;
      }
      z = next;
    }
    if (!converged && residuals(z, zeta).cwiseAbs().maxCoeff() > 1e-10) {
      std::ostringstream msg;
      msg << "damped EI solve did not converge (zeta=" << zeta_target << ", vtol=" << vtol
          << "): max constraint residual " << residuals(z, zeta).cwiseAbs().maxCoeff();
      throw ConvergenceError(msg.str(), residuals(z, zeta).cwiseAbs().maxCoeff());
    }
  }

  ImpulseSequence seq = assemble(z, zeta_target);
  for (const Impulse& imp : seq.impulses) {
    if (!(imp.amplitude > 0.0)) {
      std::ostringstream msg;
      msg << "damped EI solve produced a non-positive amplitude " << imp.amplitude
          << " (zeta=" << zeta_target << ", vtol=" << vtol << ")";
      throw ConvergenceError(msg.str(), max_resid);
    }
  }
  seq.validate();
  return seq;
}

}  // namespace

double PlantParams::damped_frequency_rad_s() const {
  return natural_frequency_rad_s * std::sqrt(1.0 - damping_ratio * damping_ratio);
}

void PlantParams::validate() const {
  if (!std::isfinite(natural_frequency_rad_s) || natural_frequency_rad_s <= 0.0)
    throw std::domain_error("plant natural frequency must be positive and finite");
  if (!std::isfinite(damping_ratio) || damping_ratio < 0.0 || damping_ratio >= 1.0)
    throw std::domain_error("plant damping ratio must satisfy 0 <= zeta < 1");
}

double ImpulseSequence::duration_s() const {
  return impulses.empty() ? 0.0 : impulses.back().time_s;
}

double ImpulseSequence::amplitude_sum() const {
  double sum = 0.0;
  for (const Impulse& imp : impulses) sum += imp.amplitude;
  return sum;
}

void ImpulseSequence::validate() const {
  if (impulses.empty()) throw std::invalid_argument("impulse sequence is empty");
  if (impulses.front().time_s != 0.0)
    throw std::invalid_argument("first impulse must be at t = 0");
  for (size_t i = 0; i < impulses.size(); ++i) {
    if (!std::isfinite(impulses[i].amplitude) || !std::isfinite(impulses[i].time_s))
      throw std::invalid_argument("impulse sequence contains a non-finite value");
    if (i > 0 && impulses[i].time_s <= impulses[i - 1].time_s)
      throw std::invalid_argument("impulse times must be strictly increasing");
  }
  if (std::abs(amplitude_sum() - 1.0) > 1e-12)
    throw std::invalid_argument("impulse amplitudes must sum to 1 within 1e-12");
}

const char* to_string(ShaperKind kind) {
  switch (kind) {
    case ShaperKind::Zv: return "zv";
    case ShaperKind::Zvd: return "zvd";
    case ShaperKind::Zvdd: return "zvdd";
    case ShaperKind::Ei: return "ei";
  }
  throw std::invalid_argument("unknown shaper kind");
}

ShaperKind parse_shaper_kind(const std::string& name) {
  if (name == "zv") return ShaperKind::Zv;
  if (name == "zvd") return ShaperKind::Zvd;
  if (name == "zvdd") return ShaperKind::Zvdd;
  if (name == "ei") return ShaperKind::Ei;
  throw std::invalid_argument("unknown shaper kind '" + name +
                              "' (expected one of zv, zvd, zvdd, ei)");
}

ImpulseSequence design_shaper(ShaperKind kind, const PlantParams& plant,
                              double tolerable_vibration) {
  plant.validate();
  const double wn = plant.natural_frequency_rad_s;
  const double zeta = plant.damping_ratio;
  const double wd = plant.damped_frequency_rad_s();
  const double half_period = kPi / wd;
  const double k = std::exp(-zeta * kPi / std::sqrt(1.0 - zeta * zeta));

  switch (kind) {
    case ShaperKind::Zv: {
      const double raw[] = {1.0, k};
      const double times[] = {0.0, half_period};
      return from_raw(raw, times, 2);
    }
    case ShaperKind::Zvd: {
      const double raw[] = {1.0, 2.0 * k, k * k};
      const double times[] = {0.0, half_period, 2.0 * half_period};
      return from_raw(raw, times, 3);
    }
    case ShaperKind::Zvdd: {
      const double raw[] = {1.0, 3.0 * k, 3.0 * k * k, k * k * k};
      const double times[] = {0.0, half_period, 2.0 * half_period, 3.0 * half_period};
      return from_raw(raw, times, 4);
    }
    case ShaperKind::Ei: {
      if (!std::isfinite(tolerable_vibration) || tolerable_vibration <= 0.0 ||
          tolerable_vibration > 0.2)
        throw std::domain_error("EI tolerable vibration must be in (0, 0.2]");
      if (zeta == 0.0) return design_ei_undamped(wn, tolerable_vibration);
      return design_ei_damped(wn, zeta, tolerable_vibration);
    }
  }
  throw std::invalid_argument("unknown shaper kind");
}

double residual_vibration(const ImpulseSequence& seq, const PlantParams& plant) {
  seq.validate();
  plant.validate();
  return residual_at(seq, plant.natural_frequency_rad_s, plant.damping_ratio);
}

double residual_vibration_slope(const ImpulseSequence& seq, const PlantParams& design,
                                double frequency_ratio) {
  seq.validate();
  design.validate();
  if (!(frequency_ratio > 0.0))
    throw std::domain_error("frequency ratio must be positive");
  const double wn = design.natural_frequency_rad_s;
  return residual_slope_at(seq, frequency_ratio * wn, design.damping_ratio) * wn;
}

std::vector<SensitivityPoint> sensitivity_curve_serial(const ImpulseSequence& seq,
                                                       const PlantParams& design,
                                                       double ratio_lo, double ratio_hi,
                                                       int points) {
  seq.validate();
  design.validate();
  if (!(ratio_lo > 0.0) || !(ratio_hi > ratio_lo))
    throw std::domain_error("sensitivity scan range must satisfy 0 < lo < hi");
  if (points < 2) throw std::domain_error("sensitivity scan needs at least 2 points");

  std::vector<SensitivityPoint> curve(points);
  const double step = (ratio_hi - ratio_lo) / (points - 1);
  for (int i = 0; i < points; ++i) {
    const double ratio = ratio_lo + step * i;
    curve[i] = {ratio, residual_at(seq, ratio * design.natural_frequency_rad_s,
                                   design.damping_ratio)};
  }
  return curve;
}

std::vector<SensitivityPoint> sensitivity_curve(const ImpulseSequence& seq,
                                                const PlantParams& design, double ratio_lo,
                                                double ratio_hi, int points) {
  seq.validate();
  design.validate();
  if (!(ratio_lo > 0.0) || !(ratio_hi > ratio_lo))
    throw std::domain_error("sensitivity scan range must satisfy 0 < lo < hi");
  if (points < 2) throw std::domain_error("sensitivity scan needs at least 2 points");

  std::vector<SensitivityPoint> curve(points);
  const double step = (ratio_hi - ratio_lo) / (points - 1);
  const double wn = design.natural_frequency_rad_s;
  const double zeta = design.damping_ratio;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < points; ++i) {
    const double ratio = ratio_lo + step * i;
    curve[i] = {ratio, residual_at(seq, ratio * wn, zeta)};
  }
  return curve;
}

double insensitivity_width(const ImpulseSequence& seq, const PlantParams& design,
                           double tolerable_vibration) {
  seq.validate();
  design.validate();
  if (!(tolerable_vibration > 0.0))
    throw std::domain_error("tolerable vibration must be positive");

  const double wn = design.natural_frequency_rad_s;
  const double zeta = design.damping_ratio;
  auto value = [&](double ratio) { return residual_at(seq, ratio * wn, zeta); };
  // A designed EI sits exactly at the tolerance at ratio 1; absorb solver noise.
  const double vtol = tolerable_vibration * (1.0 + 1e-9) + 1e-12;
  if (value(1.0) > vtol) return 0.0;

  constexpr double kLo = 0.5, kHi = 1.5;
  constexpr int kPoints = 2001;
  const double step = (kHi - kLo) / (kPoints - 1);
  const int center = static_cast<int>(std::lround((1.0 - kLo) / step));

  auto bisect = [&](double inside, double outside) {
    for (int i = 0; i < 60; ++i) {
      const double mid = 0.5 * (inside + outside);
      (value(mid) <= vtol ? inside : outside) = mid;
    }
    return inside;
  };

  int left = center;
  while (left > 0 && value(kLo + step * (left - 1)) <= vtol) --left;
  int right = center;
  while (right < kPoints - 1 && value(kLo + step * (right + 1)) <= vtol) ++right;

  const double lo_edge =
      left == 0 ? kLo : bisect(kLo + step * left, kLo + step * (left - 1));
  const double hi_edge =
      right == kPoints - 1 ? kHi : bisect(kLo + step * right, kLo + step * (right + 1));
  return hi_edge - lo_edge;
}

}  // namespace vibelab
