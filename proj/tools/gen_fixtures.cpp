// Regenerates the committed fixture files. Run with an output directory
// argument (default "fixtures"); the results must be byte-identical to the
// files in the repository, and a test checks exactly that.
#include <cmath>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "vibelab/io.hpp"
#include "vibelab/motion.hpp"
#include "vibelab/plant.hpp"
#include "vibelab/shaper.hpp"

namespace fs = std::filesystem;
using namespace vibelab;

namespace {

constexpr double kPi = 3.14159265358979323846;

// pick-and-place stage parameters used by every reference artifact
constexpr double kFreqHz = 30.0;
constexpr double kZeta = 0.03;
constexpr double kDistance = 0.05;
constexpr double kMaxVel = 0.5;
constexpr double kMaxAcc = 50.0;
constexpr double kSamplePeriod = 2e-4;
constexpr size_t kResidualSamples = 5000;  // 1 s of post-move data

void write_doe_table(const std::string& path) {
  // mean residual vibration (m/s^2) from the screening study of the stage:
  // active suppression on/off, servo tuning PID aggressive/conservative,
  // external vibration present/absent
  std::string csv = "Active Suppression,Servo Tuning PID,External Vibration,response\n";
  const double response[2][2][2] = {
      // [suppression][servo][external]
      {{0.5238, 0.4977}, {0.5790, 0.6228}},
      {{0.2969, 0.2997}, {0.4860, 0.4418}},
  };
  for (int ev = 0; ev < 2; ++ev)
    for (int sp = 0; sp < 2; ++sp)
      for (int as = 0; as < 2; ++as)
        csv += std::string(as ? "+1" : "-1") + "," + (sp ? "+1" : "-1") + "," +
               (ev ? "+1" : "-1") + "," + io::format_g9(response[as][sp][ev]) + "\n";
  io::write_text_file(path, csv);
}

void write_tone(const std::string& path) {
  // 98 Hz unit sine at 2 kHz for 2 s with white noise at 10 dB SNR
  const double rate = 2000.0;
  const size_t n = 4000;
  std::mt19937 rng(20240816);
  std::normal_distribution<double> noise(0.0, std::sqrt(0.05));
  std::vector<TraceSample> trace(n);
  for (size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate;
    trace[i] = {t, std::sin(2.0 * kPi * 98.0 * t) + noise(rng)};
  }
  io::write_trace(path, trace);
}

std::vector<TraceSample> residual_trace(const SimulationResult& result) {
  const auto first = static_cast<size_t>(
      std::ceil(result.command_end_time_s / result.sample_period_s - 1e-9));
  if (result.acceleration_mps2.size() < first + kResidualSamples)
    throw std::logic_error("simulation horizon too short for the residual trace");
  std::vector<TraceSample> trace(kResidualSamples);
  for (size_t i = 0; i < kResidualSamples; ++i)
    trace[i] = {static_cast<double>(i) * result.sample_period_s,
                result.acceleration_mps2[first + i]};
  return trace;
}

void write_reference_traces(const std::string& unshaped_path,
                            const std::string& shaped_path) {
  const PlantParams plant{2.0 * kPi * kFreqHz, kZeta};
  TrapezoidParams tp;
  tp.distance_m = kDistance;
  tp.max_velocity_mps = kMaxVel;
  tp.max_acceleration_mps2 = kMaxAcc;
  const MotionProfile move = trapezoid_profile(tp, kSamplePeriod);

  const double horizon = static_cast<double>(kResidualSamples) * kSamplePeriod;
  io::write_trace(unshaped_path, residual_trace(simulate(plant, move, horizon)));

  const ImpulseSequence ei = design_shaper(ShaperKind::Ei, plant, 0.05);
  io::write_trace(shaped_path,
                  residual_trace(simulate(plant, shape_command(move, ei), horizon)));
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "fixtures";
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    std::cerr << "cannot create " << dir << "\n";
    return 3;
  }
  const auto in_dir = [&](const char* name) { return (fs::path(dir) / name).string(); };

  write_doe_table(in_dir("doe_pick_place.csv"));
  write_tone(in_dir("tone_98hz.csv"));
  write_reference_traces(in_dir("reference_unshaped_trace.csv"),
                         in_dir("reference_ei_shaped_trace.csv"));
  std::cout << "fixtures written to " << dir << "\n";
  return 0;
}
