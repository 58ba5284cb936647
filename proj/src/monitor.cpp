#include "vibelab/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace vibelab {

namespace {
constexpr std::size_t kRebuildInterval = std::size_t{1} << 16;
}

void MonitorConfig::validate() const {
  if (!std::isfinite(sample_rate_hz) || sample_rate_hz <= 0.0)
    throw std::domain_error("monitor sample rate must be positive");
  if (window == 0) throw std::domain_error("monitor window must be at least 1 sample");
  if (!std::isfinite(warning_threshold) || warning_threshold <= 0.0)
    throw std::domain_error("warning threshold must be positive");
  if (!std::isfinite(alarm_threshold) || alarm_threshold <= warning_threshold)
    throw std::domain_error("alarm threshold must exceed the warning threshold");
  if (!std::isfinite(rearm_fraction) || rearm_fraction <= 0.0 || rearm_fraction >= 1.0)
    throw std::domain_error("rearm fraction must be in (0, 1)");
}

const char* to_string(MonitorState state) {
  switch (state) {
    case MonitorState::Ok: return "OK";
    case MonitorState::Warning: return "WARNING";
    case MonitorState::Alarm: return "ALARM";
  }
  throw std::invalid_argument("unknown monitor state");
}

Monitor::Monitor(const MonitorConfig& config) : config_(config) {
  config_.validate();
  ring_.assign(config_.window, 0.0);
}

double Monitor::rolling_rms() const {
  if (filled_ == 0) return 0.0;
  return std::sqrt(std::max(sum_squares_, 0.0) / static_cast<double>(filled_));
}

std::optional<MonitorEvent> Monitor::feed(double sample) {
  const std::size_t index = samples_seen_;
  const double t = static_cast<double>(index) / config_.sample_rate_hz;
  ++samples_seen_;

  if (!std::isfinite(sample)) {
    return MonitorEvent{MonitorEvent::Kind::DataQuality, index, t,
                        state_, state_, rolling_rms()};
  }

  if (filled_ < ring_.size()) {
    ring_[head_] = sample;
    sum_squares_ += sample * sample;
    ++filled_;
  } else {
    const double leaving = ring_[head_];
    sum_squares_ += sample * sample - leaving * leaving;
    ring_[head_] = sample;
  }
  head_ = (head_ + 1) % ring_.size();

  if (++feeds_since_rebuild_ >= kRebuildInterval) {
    feeds_since_rebuild_ = 0;
    double exact = 0.0;
    for (std::size_t i = 0; i < filled_; ++i) exact += ring_[i] * ring_[i];
    sum_squares_ = exact;
  }

  const double rms = rolling_rms();
  const MonitorState before = state_;
  switch (state_) {
    case MonitorState::Ok:
      if (rms >= config_.alarm_threshold) state_ = MonitorState::Alarm;
      else if (rms >= config_.warning_threshold) state_ = MonitorState::Warning;
      break;
    case MonitorState::Warning:
      if (rms >= config_.alarm_threshold) state_ = MonitorState::Alarm;
      else if (rms < config_.rearm_fraction * config_.warning_threshold)
        state_ = MonitorState::Ok;
      break;
    case MonitorState::Alarm:
      if (rms < config_.rearm_fraction * config_.alarm_threshold)
        state_ = rms < config_.rearm_fraction * config_.warning_threshold
                     ? MonitorState::Ok
                     : MonitorState::Warning;
      break;
  }
  if (state_ != before)
    return MonitorEvent{MonitorEvent::Kind::Transition, index, t, before, state_, rms};
  return std::nullopt;
}

ReplayResult replay(std::span<const TraceSample> trace, const MonitorConfig& config) {
  config.validate();
  if (trace.empty()) return {};  // nothing recorded: empty log, OK throughout

  const double nominal_dt = 1.0 / config.sample_rate_hz;
  double previous_time = 0.0;
  std::size_t previous_index = 0;
  bool have_previous = false;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (!std::isfinite(trace[i].time_s)) continue;  // becomes a data-quality event
    if (have_previous) {
      const double dt = trace[i].time_s - previous_time;
      if (dt <= 0.0)
        throw std::invalid_argument("trace timestamps are not monotone at row " +
                                    std::to_string(i + 1));
      // corrupted-timestamp rows were skipped above, so the expected interval
      // spans every row in between
      const double expected = nominal_dt * static_cast<double>(i - previous_index);
      if (std::abs(dt - expected) > 0.01 * expected)
        throw std::invalid_argument(
            "trace sample interval deviates more than 1% from nominal at row " +
            std::to_string(i + 1));
    }
    previous_time = trace[i].time_s;
    previous_index = i;
    have_previous = true;
  }

  Monitor monitor(config);
  ReplayResult result;
  result.summary.samples = trace.size();
  double seconds[3] = {0.0, 0.0, 0.0};
  for (const TraceSample& s : trace) {
    const double value =
        std::isfinite(s.time_s) ? s.accel_mps2 : std::numeric_limits<double>::quiet_NaN();
    auto event = monitor.feed(value);
    if (event) {
      if (event->kind == MonitorEvent::Kind::DataQuality)
        ++result.summary.data_quality_events;
      result.events.push_back(*event);
    }
    result.summary.max_rms = std::max(result.summary.max_rms, monitor.rolling_rms());
    seconds[static_cast<int>(monitor.state())] += nominal_dt;
  }
  result.summary.seconds_in_ok = seconds[0];
  result.summary.seconds_in_warning = seconds[1];
  result.summary.seconds_in_alarm = seconds[2];
  result.summary.final_state = monitor.state();
  return result;
}

std::vector<double> window_rms_batch_serial(std::span<const double> samples,
                                            std::size_t window) {
  if (window == 0) throw std::domain_error("window must be at least 1 sample");
  const std::size_t count = samples.size() / window;
  std::vector<double> out(count);
  for (std::size_t w = 0; w < count; ++w) {
    double sum = 0.0;
    for (std::size_t i = 0; i < window; ++i) {
      const double x = samples[w * window + i];
      sum += x * x;
    }
    out[w] = std::sqrt(sum / static_cast<double>(window));
  }
  return out;
}

std::vector<double> window_rms_batch(std::span<const double> samples, std::size_t window) {
  if (window == 0) throw std::domain_error("window must be at least 1 sample");
  const auto count = static_cast<long long>(samples.size() / window);
  std::vector<double> out(count);
#pragma omp parallel for schedule(static) if (count >= 16)
  for (long long w = 0; w < count; ++w) {
    double sum = 0.0;
    for (std::size_t i = 0; i < window; ++i) {
      const double x = samples[static_cast<std::size_t>(w) * window + i];
      sum += x * x;
    }
    out[w] = std::sqrt(sum / static_cast<double>(window));
  }
  return out;
}

Thresholds baseline_thresholds(std::span<const double> calibration, std::size_t window,
                               double warning_sigma, double alarm_sigma) {
  if (window == 0) throw std::domain_error("window must be at least 1 sample");
  if (calibration.size() < 10 * window)
    throw std::invalid_argument("calibration trace must cover at least 10 windows");
  if (!std::isfinite(warning_sigma) || !std::isfinite(alarm_sigma) ||
      warning_sigma >= alarm_sigma)
    throw std::domain_error("warning sigma must be below alarm sigma");
  for (double x : calibration)
    if (!std::isfinite(x))
      throw std::invalid_argument("calibration trace contains a non-finite sample");

  const std::vector<double> rms = window_rms_batch(calibration, window);
  double mean = 0.0;
  for (double r : rms) mean += r;
  mean /= static_cast<double>(rms.size());
  double var = 0.0;
  for (double r : rms) var += (r - mean) * (r - mean);
  var /= static_cast<double>(rms.size());
  const double sigma = std::sqrt(var);
  return {mean + warning_sigma * sigma, mean + alarm_sigma * sigma};
}

}  // namespace vibelab
