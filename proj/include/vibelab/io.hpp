#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vibelab/analysis.hpp"
#include "vibelab/doe.hpp"
#include "vibelab/errors.hpp"
#include "vibelab/monitor.hpp"
#include "vibelab/motion.hpp"
#include "vibelab/plant.hpp"
#include "vibelab/shaper.hpp"

namespace vibelab::io {

/// All numeric text output is fixed to 9 significant digits so repeated runs
/// are byte-identical.
std::string format_g9(double value);
/// Nearest double to the 9-significant-digit decimal rendering; applied to
/// numbers before they enter JSON documents.
double round9(double value);

struct ShaperDocument {
  ShaperKind kind = ShaperKind::Zv;
  PlantParams plant;
  std::optional<double> tolerable_vibration;  // EI only
  ImpulseSequence impulses;
};

std::string shaper_to_json(const ShaperDocument& doc);
ShaperDocument shaper_from_json(const std::string& text);
void write_shaper(const std::string& path, const ShaperDocument& doc);
ShaperDocument read_shaper(const std::string& path);

// profile CSV: time_s,position_m,velocity_mps,acceleration_mps2
void write_profile(const std::string& path, const MotionProfile& profile);
MotionProfile read_profile(const std::string& path);  // sample period from time column

// simulation response CSV: time_s,displacement_m,acceleration_mps2
void write_simulation(const std::string& path, const SimulationResult& result);

// trace CSV: time_s,accel_mps2 (non-finite cells pass through for the
// monitor's data-quality handling). read_trace also accepts a simulation
// response CSV and takes its acceleration column.
void write_trace(const std::string& path, const std::vector<TraceSample>& trace);
std::vector<TraceSample> read_trace(const std::string& path);

// spectrum CSV: frequency_hz,magnitude
void write_spectrum(const std::string& path, const Spectrum& spec);

// design CSV: header names the factors plus a `response` column; cells are
// coded -1/+1. Repeated rows of the same level pattern become replicates.
FactorialDesign read_design(const std::string& path);
void write_design(const std::string& path, const FactorialDesign& design);

struct MonitorConfigFile {
  MonitorConfig config;
};
MonitorConfig read_monitor_config(const std::string& path);
void write_monitor_config(const std::string& path, const MonitorConfig& config);

// event log: one JSON object per line
// {"sample_index":..,"time_s":..,"from":..,"to":..,"rms":..,"kind":..}
void write_event_log(const std::string& path, const std::vector<MonitorEvent>& events);

std::string read_text_file(const std::string& path);   // IoError on failure
void write_text_file(const std::string& path, const std::string& content);

}  // namespace vibelab::io
