#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "vibelab/motion.hpp"
#include "vibelab/shaper.hpp"

using namespace vibelab;

namespace {

constexpr double kPi = 3.14159265358979323846;

MotionProfile random_profile(std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(0.005, 0.2);
  std::uniform_real_distribution<double> vel(0.1, 1.0);
  std::uniform_real_distribution<double> acc(5.0, 80.0);
  TrapezoidParams p;
  p.distance_m = dist(rng);
  p.max_velocity_mps = vel(rng);
  p.max_acceleration_mps2 = acc(rng);
  return trapezoid_profile(p, 2e-4);
}

double peak_accel(const MotionProfile& p) {
  double peak = 0.0;
  for (const auto& s : p.samples) peak = std::max(peak, std::abs(s.acceleration_mps2));
  return peak;
}

}  // namespace

TEST_CASE("reference trapezoid move hits the documented sample counts") {
  TrapezoidParams p;
  p.distance_m = 0.05;
  p.max_velocity_mps = 0.5;
  p.max_acceleration_mps2 = 50.0;
  const MotionProfile prof = trapezoid_profile(p, 2e-4);

  // accel 50 for 0.01 s (50 samples), cruise 0.09 s (450), decel 50, then one
  // trailing zero sample
  REQUIRE(prof.samples.size() == 551);
  CHECK(prof.samples[0].acceleration_mps2 == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(prof.samples[49].acceleration_mps2 == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(prof.samples[50].acceleration_mps2 == 0.0);
  CHECK(prof.samples[499].acceleration_mps2 == 0.0);
  CHECK(prof.samples[500].acceleration_mps2 == doctest::Approx(-50.0).epsilon(1e-12));
  CHECK(prof.samples.back().acceleration_mps2 == 0.0);

  CHECK(prof.samples.back().position_m == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(prof.samples.back().velocity_mps == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(prof.duration_s() == doctest::Approx(0.1102).epsilon(1e-12));

  double vmax = 0.0;
  for (const auto& s : prof.samples) vmax = std::max(vmax, s.velocity_mps);
  CHECK(vmax == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("short move degenerates to a triangular profile") {
  TrapezoidParams p;
  p.distance_m = 0.002;
  p.max_velocity_mps = 0.5;
  p.max_acceleration_mps2 = 50.0;
  const double h = 2e-4;
  const MotionProfile prof = trapezoid_profile(p, h);

  double vmax = 0.0;
  for (const auto& s : prof.samples) vmax = std::max(vmax, s.velocity_mps);
  // ideal peak velocity sqrt(a*D), quantized by at most one accel sample
  CHECK(std::abs(vmax - std::sqrt(50.0 * 0.002)) <= 50.0 * h + 1e-12);
  CHECK(vmax <= 0.5);
  CHECK(prof.samples.back().position_m == doctest::Approx(0.002).epsilon(1e-12));
  CHECK(prof.samples.back().velocity_mps == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("profiles close displacement exactly and respect both limits") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> dist(0.001, 0.5);
  std::uniform_real_distribution<double> vel(0.05, 2.0);
  std::uniform_real_distribution<double> acc(1.0, 200.0);
  for (int trial = 0; trial < 50; ++trial) {
    TrapezoidParams p;
    p.distance_m = dist(rng);
    p.max_velocity_mps = vel(rng);
    p.max_acceleration_mps2 = acc(rng);
    const MotionProfile prof = trapezoid_profile(p, 1e-4);
    CAPTURE(trial);
    CHECK(std::abs(prof.samples.back().position_m - p.distance_m) <
          1e-12 * std::max(1.0, p.distance_m));
    CHECK(std::abs(prof.samples.back().velocity_mps) < 1e-9);
    CHECK(peak_accel(prof) <= p.max_acceleration_mps2 * (1.0 + 1e-12));
    double vmax = 0.0;
    for (const auto& s : prof.samples) vmax = std::max(vmax, std::abs(s.velocity_mps));
    CHECK(vmax <= p.max_velocity_mps * (1.0 + 1e-12));
  }
}

TEST_CASE("negative distance mirrors the move") {
  TrapezoidParams p;
  p.distance_m = -0.05;
  p.max_velocity_mps = 0.5;
  p.max_acceleration_mps2 = 50.0;
  const MotionProfile prof = trapezoid_profile(p, 2e-4);
  CHECK(prof.samples.back().position_m == doctest::Approx(-0.05).epsilon(1e-12));
  CHECK(prof.samples[0].acceleration_mps2 == doctest::Approx(-50.0).epsilon(1e-12));
}

TEST_CASE("zero distance yields a single idle sample") {
  TrapezoidParams p;
  p.distance_m = 0.0;
  p.max_velocity_mps = 0.5;
  p.max_acceleration_mps2 = 50.0;
  const MotionProfile prof = trapezoid_profile(p, 2e-4);
  REQUIRE(prof.samples.size() == 1);
  CHECK(prof.samples[0].acceleration_mps2 == 0.0);
  CHECK(prof.samples[0].position_m == 0.0);
}

TEST_CASE("integration convention is cumulative from each sample") {
  // feed raw accelerations through the identity shaper, which rebuilds
  // velocity and position by the documented rule
  MotionProfile raw;
  raw.sample_period_s = 0.1;
  raw.samples.resize(3);
  raw.samples[0].acceleration_mps2 = 1.0;
  raw.samples[1].acceleration_mps2 = 1.0;
  raw.samples[2].acceleration_mps2 = -2.0;
  ImpulseSequence identity;
  identity.impulses = {{1.0, 0.0}};
  const MotionProfile prof = shape_command(raw, identity);
  CHECK(prof.samples[0].velocity_mps == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(prof.samples[0].position_m == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(prof.samples[1].velocity_mps == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(prof.samples[1].position_m == doctest::Approx(0.03).epsilon(1e-15));
  CHECK(prof.samples[2].velocity_mps == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(prof.samples[2].position_m == doctest::Approx(0.03).epsilon(1e-15));
}

TEST_CASE("identity shaper reproduces the command exactly") {
  std::mt19937 rng(7);
  const MotionProfile prof = random_profile(rng);
  ImpulseSequence identity;
  identity.impulses = {{1.0, 0.0}};
  const MotionProfile shaped = shape_command(prof, identity);
  REQUIRE(shaped.samples.size() == prof.samples.size());
  for (size_t i = 0; i < prof.samples.size(); ++i) {
    REQUIRE(shaped.samples[i].acceleration_mps2 == prof.samples[i].acceleration_mps2);
    REQUIRE(std::abs(shaped.samples[i].position_m - prof.samples[i].position_m) < 1e-15);
  }
}

TEST_CASE("on-grid shaper is an exact two-tap convolution") {
  // zv at 25 Hz undamped: second impulse at 0.02 s = 100 samples of 2e-4 s
  const PlantParams plant{2.0 * kPi * 25.0, 0.0};
  const ImpulseSequence zv = design_shaper(ShaperKind::Zv, plant);
  TrapezoidParams p;
  p.distance_m = 0.05;
  p.max_velocity_mps = 0.5;
  p.max_acceleration_mps2 = 50.0;
  const MotionProfile prof = trapezoid_profile(p, 2e-4);
  const MotionProfile shaped = shape_command(prof, zv);

  REQUIRE(shaped.samples.size() == prof.samples.size() + 100);
  auto at = [&](size_t i) {
    return i < prof.samples.size() ? prof.samples[i].acceleration_mps2 : 0.0;
  };
  for (size_t i = 0; i < shaped.samples.size(); ++i) {
    const double expect = 0.5 * at(i) + 0.5 * (i >= 100 ? at(i - 100) : 0.0);
    REQUIRE(std::abs(shaped.samples[i].acceleration_mps2 - expect) < 1e-15);
  }
}

TEST_CASE("shaping preserves final displacement and the accel bound") {
  std::mt19937 rng(20250816);
  for (int trial = 0; trial < 30; ++trial) {
    const MotionProfile prof = random_profile(rng);
    std::uniform_real_distribution<double> freq(8.0, 90.0);
    std::uniform_real_distribution<double> damp(0.0, 0.3);
    const PlantParams plant{2.0 * kPi * freq(rng), damp(rng)};
    const ShaperKind kind =
        std::array{ShaperKind::Zv, ShaperKind::Zvd, ShaperKind::Zvdd, ShaperKind::Ei}[trial % 4];
    const ImpulseSequence seq = kind == ShaperKind::Ei
                                    ? design_shaper(kind, plant, 0.05)
                                    : design_shaper(kind, plant);
    const MotionProfile shaped = shape_command(prof, seq);
    CAPTURE(trial);
    CHECK(std::abs(shaped.samples.back().position_m - prof.samples.back().position_m) < 1e-9);
    CHECK(std::abs(shaped.samples.back().velocity_mps) < 1e-9);
    CHECK(peak_accel(shaped) <= peak_accel(prof) * (1.0 + 1e-12));
    CHECK(shaped.duration_s() >= prof.duration_s());
    CHECK(shaped.duration_s() <= prof.duration_s() + seq.duration_s() + 2.0 * prof.sample_period_s);
  }
}

TEST_CASE("shaping is linear in the command") {
  std::mt19937 rng(3);
  const MotionProfile prof = random_profile(rng);
  const PlantParams plant{2.0 * kPi * 30.0, 0.03};
  const ImpulseSequence seq = design_shaper(ShaperKind::Zvd, plant);
  const MotionProfile shaped = shape_command(prof, seq);

  MotionProfile doubled = prof;
  for (auto& s : doubled.samples) s.acceleration_mps2 *= 2.0;
  const MotionProfile shaped2 = shape_command(doubled, seq);
  REQUIRE(shaped2.samples.size() == shaped.samples.size());
  for (size_t i = 0; i < shaped.samples.size(); ++i)
    REQUIRE(shaped2.samples[i].acceleration_mps2 ==
            doctest::Approx(2.0 * shaped.samples[i].acceleration_mps2).epsilon(1e-12));
}

TEST_CASE("parameter validation") {
  TrapezoidParams p;
  p.distance_m = 0.05;
  p.max_velocity_mps = 0.5;
  p.max_acceleration_mps2 = 50.0;

  TrapezoidParams bad = p;
  bad.max_velocity_mps = 0.0;
  CHECK_THROWS_AS(trapezoid_profile(bad, 2e-4), std::domain_error);
  bad = p;
  bad.max_acceleration_mps2 = -1.0;
  CHECK_THROWS_AS(trapezoid_profile(bad, 2e-4), std::domain_error);
  CHECK_THROWS_AS(trapezoid_profile(p, 0.0), std::domain_error);

  MotionProfile empty;
  empty.sample_period_s = 1e-3;
  ImpulseSequence zv = design_shaper(ShaperKind::Zv, {100.0, 0.0});
  CHECK_THROWS_AS(shape_command(empty, zv), std::invalid_argument);
}
