#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "vibelab/monitor.hpp"

using namespace vibelab;

namespace {

MonitorConfig basic_config() {
  MonitorConfig c;
  c.sample_rate_hz = 1000.0;
  c.window = 4;
  c.warning_threshold = 2.0;
  c.alarm_threshold = 5.0;
  c.rearm_fraction = 0.8;
  return c;
}

std::vector<TraceSample> to_trace(const std::vector<double>& accel, double rate) {
  std::vector<TraceSample> trace(accel.size());
  for (size_t i = 0; i < accel.size(); ++i)
    trace[i] = {static_cast<double>(i) / rate, accel[i]};
  return trace;
}

int severity(MonitorState s) { return static_cast<int>(s); }

}  // namespace

TEST_CASE("rolling rms covers the trailing window") {
  Monitor mon(basic_config());
  // four ones: rms hits exactly 1.0 once the window is full and stays there
  for (int i = 0; i < 4; ++i) {
    mon.feed(1.0);
    CHECK(mon.rolling_rms() == doctest::Approx(1.0).epsilon(1e-12));
  }
  mon.feed(0.0);  // window now 1,1,1,0
  CHECK(mon.rolling_rms() == doctest::Approx(std::sqrt(3.0 / 4.0)).epsilon(1e-12));
  mon.feed(0.0);
  mon.feed(0.0);
  mon.feed(0.0);
  CHECK(mon.rolling_rms() == 0.0);
}

TEST_CASE("partial windows average over what has been seen") {
  Monitor mon(basic_config());
  mon.feed(3.0);
  CHECK(mon.rolling_rms() == doctest::Approx(3.0).epsilon(1e-12));
  mon.feed(0.0);
  CHECK(mon.rolling_rms() == doctest::Approx(std::sqrt(9.0 / 2.0)).epsilon(1e-12));
}

TEST_CASE("escalation and guarded de-escalation") {
  Monitor mon(basic_config());
  std::vector<MonitorEvent> events;
  auto push = [&](double v) {
    if (auto e = mon.feed(v)) events.push_back(*e);
  };

  for (int i = 0; i < 4; ++i) push(2.5);  // rms 2.5 >= warn
  REQUIRE(events.size() == 1);
  CHECK(events[0].from == MonitorState::Ok);
  CHECK(events[0].to == MonitorState::Warning);
  CHECK(events[0].sample_index == 0);  // first feed already reaches 2.5

  // hover just under the warning threshold: no chatter because the rearm
  // level is 0.8 * 2.0 = 1.6
  for (int i = 0; i < 20; ++i) push(1.9);
  CHECK(events.size() == 1);
  CHECK(mon.state() == MonitorState::Warning);

  for (int i = 0; i < 8; ++i) push(6.0);  // escalate to alarm
  REQUIRE(events.size() == 2);
  CHECK(events[1].to == MonitorState::Alarm);

  // drop below 0.8 * alarm but above warning: back to warning only
  for (int i = 0; i < 8; ++i) push(3.0);
  REQUIRE(events.size() == 3);
  CHECK(events[2].from == MonitorState::Alarm);
  CHECK(events[2].to == MonitorState::Warning);

  // fall below the warning rearm level: fully ok
  for (int i = 0; i < 8; ++i) push(0.1);
  REQUIRE(events.size() == 4);
  CHECK(events[3].to == MonitorState::Ok);
}

TEST_CASE("alarm clears straight to ok when the signal collapses") {
  MonitorConfig c = basic_config();
  Monitor mon(c);
  for (int i = 0; i < 4; ++i) mon.feed(10.0);
  CHECK(mon.state() == MonitorState::Alarm);
  for (int i = 0; i < 4; ++i) mon.feed(0.0);
  CHECK(mon.state() == MonitorState::Ok);
}

TEST_CASE("thresholds are inclusive on escalation") {
  MonitorConfig c = basic_config();
  c.window = 1;
  Monitor mon(c);
  mon.feed(c.warning_threshold);  // exactly at the threshold
  CHECK(mon.state() == MonitorState::Warning);
  mon.feed(c.alarm_threshold);
  CHECK(mon.state() == MonitorState::Alarm);
}

TEST_CASE("non-finite samples raise data quality events and do not pollute") {
  Monitor mon(basic_config());
  mon.feed(1.0);
  const double before = mon.rolling_rms();
  const auto event = mon.feed(std::nan(""));
  REQUIRE(event.has_value());
  CHECK(event->kind == MonitorEvent::Kind::DataQuality);
  CHECK(mon.rolling_rms() == before);
  CHECK(mon.state() == MonitorState::Ok);
  const auto inf_event = mon.feed(std::numeric_limits<double>::infinity());
  REQUIRE(inf_event.has_value());
  CHECK(inf_event->kind == MonitorEvent::Kind::DataQuality);
}

TEST_CASE("long streams do not drift away from the exact rms") {
  MonitorConfig c = basic_config();
  c.window = 64;
  Monitor mon(c);
  std::mt19937 rng(123);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> history;
  const size_t total = 300000;  // crosses the periodic exact rebuild
  history.reserve(total);
  for (size_t i = 0; i < total; ++i) {
    const double v = gauss(rng);
    history.push_back(v);
    mon.feed(v);
  }
  double ss = 0.0;
  for (size_t i = total - 64; i < total; ++i) ss += history[i] * history[i];
  CHECK(mon.rolling_rms() == doctest::Approx(std::sqrt(ss / 64.0)).epsilon(1e-9));
}

TEST_CASE("replay equals streaming feed for random traces") {
  std::mt19937 rng(321);
  std::normal_distribution<double> gauss(0.0, 2.0);
  std::uniform_int_distribution<int> len(5, 400);
  MonitorConfig c = basic_config();
  c.window = 8;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> accel(len(rng));
    for (auto& v : accel) v = gauss(rng);
    if (trial % 7 == 0) accel[accel.size() / 2] = std::nan("");

    const ReplayResult rep = replay(to_trace(accel, c.sample_rate_hz), c);

    Monitor mon(c);
    std::vector<MonitorEvent> streamed;
    for (double v : accel)
      if (auto e = mon.feed(v)) streamed.push_back(*e);

    CAPTURE(trial);
    REQUIRE(rep.events.size() == streamed.size());
    for (size_t i = 0; i < streamed.size(); ++i) {
      REQUIRE(rep.events[i].kind == streamed[i].kind);
      REQUIRE(rep.events[i].sample_index == streamed[i].sample_index);
      REQUIRE(rep.events[i].from == streamed[i].from);
      REQUIRE(rep.events[i].to == streamed[i].to);
      REQUIRE(rep.events[i].rms == streamed[i].rms);
    }
    CHECK(rep.summary.final_state == mon.state());
    CHECK(rep.summary.samples == accel.size());
  }
}

TEST_CASE("replay summary accounts for every second") {
  MonitorConfig c = basic_config();
  std::vector<double> accel(1000, 0.1);
  for (size_t i = 200; i < 400; ++i) accel[i] = 3.0;   // warning stretch
  for (size_t i = 600; i < 700; ++i) accel[i] = 10.0;  // alarm stretch
  const ReplayResult rep = replay(to_trace(accel, c.sample_rate_hz), c);
  const double total = rep.summary.seconds_in_ok + rep.summary.seconds_in_warning +
                       rep.summary.seconds_in_alarm;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.summary.seconds_in_warning > 0.15);
  CHECK(rep.summary.seconds_in_alarm > 0.05);
  CHECK(rep.summary.max_rms == doctest::Approx(10.0).epsilon(1e-6));
  CHECK(rep.summary.final_state == MonitorState::Ok);
}

TEST_CASE("each excursion produces one escalation, not chatter") {
  MonitorConfig c = basic_config();
  c.window = 16;
  std::mt19937 rng(77);
  std::normal_distribution<double> jitter(0.0, 0.05);
  std::vector<double> accel;
  for (int burst = 0; burst < 5; ++burst) {
    for (int i = 0; i < 200; ++i) accel.push_back(0.2 + jitter(rng));
    for (int i = 0; i < 200; ++i) accel.push_back(2.2 + jitter(rng));  // near warn
  }
  const ReplayResult rep = replay(to_trace(accel, c.sample_rate_hz), c);
  size_t escalations = 0, clears = 0;
  for (const auto& e : rep.events) {
    if (e.kind != MonitorEvent::Kind::Transition) continue;
    if (severity(e.to) > severity(e.from))
      ++escalations;
    else
      ++clears;
  }
  CHECK(escalations == 5);
  CHECK(clears >= 4);  // the final burst may end while still in warning
  CHECK(escalations + clears == rep.events.size());
}

TEST_CASE("scaling a trace down never raises severity at any sample") {
  MonitorConfig c = basic_config();
  c.window = 8;
  std::mt19937 rng(88);
  std::normal_distribution<double> gauss(0.0, 3.0);
  std::vector<double> accel(2000);
  for (auto& v : accel) v = gauss(rng);

  Monitor full(c), scaled(c);
  for (double v : accel) {
    full.feed(v);
    scaled.feed(0.6 * v);
    REQUIRE(severity(scaled.state()) <= severity(full.state()));
  }
}

TEST_CASE("replay rejects broken timebases by row") {
  MonitorConfig c = basic_config();
  std::vector<TraceSample> trace = to_trace(std::vector<double>(10, 0.1), c.sample_rate_hz);

  auto broken = trace;
  broken[5].time_s = broken[4].time_s;  // stalled clock surfaces at the 6th row
  CHECK_THROWS_WITH_AS(replay(broken, c), doctest::Contains("row 6"),
                       std::invalid_argument);

  broken = trace;
  broken[7].time_s = broken[6].time_s + 1.5 / c.sample_rate_hz;  // 50% off nominal
  CHECK_THROWS_WITH_AS(replay(broken, c), doctest::Contains("row 8"),
                       std::invalid_argument);
}

TEST_CASE("an empty trace replays to an empty log") {
  const ReplayResult rep = replay(std::vector<TraceSample>{}, basic_config());
  CHECK(rep.events.empty());
  CHECK(rep.summary.samples == 0);
  CHECK(rep.summary.final_state == MonitorState::Ok);
}

TEST_CASE("replay tolerates non-finite timestamps as data quality rows") {
  MonitorConfig c = basic_config();
  std::vector<TraceSample> trace = to_trace(std::vector<double>(20, 0.1), c.sample_rate_hz);
  trace[10].time_s = std::nan("");
  trace[10].accel_mps2 = std::nan("");
  const ReplayResult rep = replay(trace, c);
  CHECK(rep.summary.data_quality_events == 1);
  CHECK(rep.summary.samples == 20);
}

TEST_CASE("batch window rms matches the serial reference and the monitor") {
  std::mt19937 rng(456);
  std::normal_distribution<double> gauss(0.0, 1.5);
  std::vector<double> samples(10000);
  for (auto& v : samples) v = gauss(rng);

  const auto batch = window_rms_batch(samples, 250);
  const auto serial = window_rms_batch_serial(samples, 250);
  REQUIRE(batch.size() == 40);
  REQUIRE(batch.size() == serial.size());
  for (size_t i = 0; i < batch.size(); ++i) REQUIRE(batch[i] == serial[i]);

  // each full non-overlapping window agrees with a monitor sized to match
  MonitorConfig c = basic_config();
  c.window = 250;
  Monitor mon(c);
  for (size_t i = 0; i < samples.size(); ++i) {
    mon.feed(samples[i]);
    if ((i + 1) % 250 == 0)
      REQUIRE(mon.rolling_rms() == doctest::Approx(batch[i / 250]).epsilon(1e-9));
  }
}

TEST_CASE("baseline thresholds from a calibration trace") {
  // constant signal: zero variance, thresholds collapse onto the mean rms
  const std::vector<double> flat(4000, 0.5);
  const Thresholds t = baseline_thresholds(flat, 100, 3.0, 6.0);
  CHECK(t.warning == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(t.alarm == doctest::Approx(0.5).epsilon(1e-12));

  std::mt19937 rng(9);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> noise(40000);
  for (auto& v : noise) v = gauss(rng);
  const Thresholds tn = baseline_thresholds(noise, 400, 3.0, 6.0);
  CHECK(tn.warning > 0.9);  // near the rms of unit noise
  CHECK(tn.warning < 1.1);
  CHECK(tn.alarm > tn.warning);
  // mean + k * sigma structure: alarm sits twice as far out as warning
  const auto rms = window_rms_batch(noise, 400);
  double mean = 0.0;
  for (double r : rms) mean += r;
  mean /= static_cast<double>(rms.size());
  CHECK(tn.alarm - mean == doctest::Approx(2.0 * (tn.warning - mean)).epsilon(1e-9));
}

TEST_CASE("baseline thresholds preconditions") {
  const std::vector<double> shortish(900, 0.5);
  CHECK_THROWS_AS(baseline_thresholds(shortish, 100, 3.0, 6.0), std::invalid_argument);
  const std::vector<double> enough(1000, 0.5);
  CHECK_NOTHROW(baseline_thresholds(enough, 100, 3.0, 6.0));
  CHECK_THROWS_AS(baseline_thresholds(enough, 100, 6.0, 3.0), std::domain_error);
  CHECK_THROWS_AS(baseline_thresholds(enough, 0, 3.0, 6.0), std::domain_error);
  std::vector<double> tainted = enough;
  tainted[123] = std::nan("");
  CHECK_THROWS_AS(baseline_thresholds(tainted, 100, 3.0, 6.0), std::invalid_argument);
}

TEST_CASE("config validation") {
  MonitorConfig c = basic_config();
  c.window = 0;
  CHECK_THROWS_AS(c.validate(), std::domain_error);
  c = basic_config();
  c.alarm_threshold = c.warning_threshold;
  CHECK_THROWS_AS(c.validate(), std::domain_error);
  c = basic_config();
  c.rearm_fraction = 1.2;
  CHECK_THROWS_AS(c.validate(), std::domain_error);
  c = basic_config();
  c.sample_rate_hz = 0.0;
  CHECK_THROWS_AS(c.validate(), std::domain_error);
}

TEST_CASE("state names") {
  CHECK(std::string(to_string(MonitorState::Ok)) == "OK");
  CHECK(std::string(to_string(MonitorState::Warning)) == "WARNING");
  CHECK(std::string(to_string(MonitorState::Alarm)) == "ALARM");
}
