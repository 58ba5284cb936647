#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace vibelab {

struct MonitorConfig {
  double sample_rate_hz = 0.0;
  std::size_t window = 0;             // rolling RMS window, samples
  double warning_threshold = 0.0;     // RMS units
  double alarm_threshold = 0.0;       // > warning_threshold
  double rearm_fraction = 0.8;        // de-escalate below fraction * threshold

  void validate() const;  // throws std::domain_error
};

enum class MonitorState { Ok, Warning, Alarm };

const char* to_string(MonitorState state);

struct MonitorEvent {
  enum class Kind { Transition, DataQuality };
  Kind kind = Kind::Transition;
  std::size_t sample_index = 0;
  double time_s = 0.0;
  MonitorState from = MonitorState::Ok;
  MonitorState to = MonitorState::Ok;
  double rms = 0.0;
};

/// Streaming threshold watchdog. Escalates when the rolling RMS reaches a
/// threshold; de-escalates only below rearm_fraction times the threshold
/// that was crossed, so a signal hovering near a threshold cannot chatter.
/// The RMS covers the last min(samples seen, window) samples; the running
/// sum of squares is recomputed exactly every 2^16 feeds to stop drift.
class Monitor {
 public:
  explicit Monitor(const MonitorConfig& config);

  /// Returns a transition event when the state changes. Non-finite samples
  /// are rejected: a DataQuality event is returned and the window is left
  /// untouched.
  std::optional<MonitorEvent> feed(double sample);

  MonitorState state() const { return state_; }
  double rolling_rms() const;
  std::size_t samples_seen() const { return samples_seen_; }

 private:
  MonitorConfig config_;
  std::vector<double> ring_;
  std::size_t head_ = 0;
  std::size_t filled_ = 0;
  std::size_t samples_seen_ = 0;
  std::size_t feeds_since_rebuild_ = 0;
  double sum_squares_ = 0.0;
  MonitorState state_ = MonitorState::Ok;
};

struct TraceSample {
  double time_s = 0.0;
  double accel_mps2 = 0.0;
};

struct ReplaySummary {
  std::size_t samples = 0;
  std::size_t data_quality_events = 0;
  double max_rms = 0.0;
  double seconds_in_ok = 0.0;
  double seconds_in_warning = 0.0;
  double seconds_in_alarm = 0.0;
  MonitorState final_state = MonitorState::Ok;
};

struct ReplayResult {
  std::vector<MonitorEvent> events;
  ReplaySummary summary;
};

/// Offline pass over a recorded trace; event-for-event identical to feeding
/// the samples one at a time. Timestamps must be monotone and within 1% of
/// the configured nominal rate (throws std::invalid_argument naming the
/// first offending row). Rows with non-finite values become DataQuality
/// events and processing continues.
ReplayResult replay(std::span<const TraceSample> trace, const MonitorConfig& config);

struct Thresholds {
  double warning = 0.0;
  double alarm = 0.0;
};

/// Per-window RMS over non-overlapping windows of a calibration trace;
/// thresholds are mean + sigma_multiplier * stddev (population). Requires at
/// least 10 full windows. window_rms_batch is the OpenMP kernel behind it;
/// the _serial variant is the reference kept for the tests and benchmark.
Thresholds baseline_thresholds(std::span<const double> calibration, std::size_t window,
                               double warning_sigma, double alarm_sigma);
std::vector<double> window_rms_batch(std::span<const double> samples, std::size_t window);
std::vector<double> window_rms_batch_serial(std::span<const double> samples,
                                            std::size_t window);

}  // namespace vibelab
