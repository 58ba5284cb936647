// vibelab: design input shapers, simulate moves, analyze traces, fit factorial
// experiments, and replay condition-monitor traces. Every run writes a
// manifest next to its outputs; reruns with the same inputs are byte-identical.
#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "vibelab/analysis.hpp"
#include "vibelab/doe.hpp"
#include "vibelab/errors.hpp"
#include "vibelab/io.hpp"
#include "vibelab/monitor.hpp"
#include "vibelab/motion.hpp"
#include "vibelab/plant.hpp"
#include "vibelab/shaper.hpp"
#include "vibelab/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace vibelab;

namespace {

constexpr double kPi = 3.14159265358979323846;

double hz_to_rad(double hz) { return 2.0 * kPi * hz; }

struct GlobalOpts {
  std::string out_dir = ".";
  unsigned seed = 0;  // reserved for stochastic generators; recorded in manifests
  std::string format = "json";
};

std::string out_path(const GlobalOpts& g, const std::string& name) {
  return (fs::path(g.out_dir) / name).string();
}

void ensure_out_dir(const GlobalOpts& g) {
  std::error_code ec;
  fs::create_directories(g.out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + g.out_dir);
}

json num(double v) { return io::round9(v); }

// Ordered key/value summary: written as a JSON object or as key,value CSV
// depending on --format. Values are scalars only.
struct Summary {
  std::vector<std::pair<std::string, json>> fields;

  void add(const std::string& key, json value) { fields.emplace_back(key, std::move(value)); }

  std::string write(const GlobalOpts& g, const std::string& basename) const {
    const std::string path = out_path(g, basename + "." + g.format);
    if (g.format == "json") {
      json obj = json::object();
      for (const auto& [k, v] : fields) obj[k] = v;
      io::write_text_file(path, obj.dump(2) + "\n");
    } else {
      std::string text = "key,value\n";
      for (const auto& [k, v] : fields) {
        text += k;
        text += ',';
        if (v.is_null())
          ;  // empty cell
        else if (v.is_boolean())
          text += v.get<bool>() ? "true" : "false";
        else if (v.is_string())
          text += v.get<std::string>();
        else if (v.is_number_unsigned())
          text += std::to_string(v.get<unsigned long long>());
        else
          text += io::format_g9(v.get<double>());
        text += '\n';
      }
      io::write_text_file(path, text);
    }
    return path;
  }
};

void write_manifest(const GlobalOpts& g, const std::string& subcommand, json inputs,
                    json outputs, json parameters) {
  json manifest;
  manifest["tool_version"] = kVersion;
  manifest["subcommand"] = subcommand;
  manifest["inputs"] = std::move(inputs);
  manifest["outputs"] = std::move(outputs);
  manifest["parameters"] = std::move(parameters);
  io::write_text_file(out_path(g, subcommand + "_manifest.json"), manifest.dump(2) + "\n");
}

double trace_sample_rate(const std::vector<TraceSample>& trace) {
  for (size_t i = 1; i < trace.size(); ++i) {
    if (!std::isfinite(trace[i].time_s) || !std::isfinite(trace[i - 1].time_s)) continue;
    const double dt = trace[i].time_s - trace[i - 1].time_s;
    if (dt > 0.0) return 1.0 / dt;
  }
  throw std::invalid_argument("trace is too short to derive a sample rate");
}

std::vector<double> accel_column(const std::vector<TraceSample>& trace) {
  std::vector<double> out(trace.size());
  for (size_t i = 0; i < trace.size(); ++i) out[i] = trace[i].accel_mps2;
  return out;
}

// ----- design ---------------------------------------------------------------

struct DesignArgs {
  std::string kind;
  double freq_hz = 0.0;
  double zeta = 0.0;
  double vtol = kDefaultTolerableVibration;
  bool vtol_given = false;
  double ratio_lo = 0.5;
  double ratio_hi = 1.5;
  size_t points = 2001;
};

void run_design(const GlobalOpts& g, const DesignArgs& a) {
  const ShaperKind kind = parse_shaper_kind(a.kind);
  if (a.vtol_given && kind != ShaperKind::Ei)
    throw std::invalid_argument("--vtol only applies to the ei shaper");

  const PlantParams plant{hz_to_rad(a.freq_hz), a.zeta};
  const ImpulseSequence seq = kind == ShaperKind::Ei
                                  ? design_shaper(kind, plant, a.vtol)
                                  : design_shaper(kind, plant);

  ensure_out_dir(g);
  io::ShaperDocument doc;
  doc.kind = kind;
  doc.plant = plant;
  if (kind == ShaperKind::Ei) doc.tolerable_vibration = a.vtol;
  doc.impulses = seq;
  const std::string shaper_path = out_path(g, "shaper_" + std::string(to_string(kind)) + ".json");
  io::write_shaper(shaper_path, doc);

  const auto curve = sensitivity_curve(seq, plant, a.ratio_lo, a.ratio_hi, a.points);
  std::string csv = "frequency_ratio,residual\n";
  for (const auto& pt : curve)
    csv += io::format_g9(pt.frequency_ratio) + "," + io::format_g9(pt.residual) + "\n";
  const std::string curve_path =
      out_path(g, "sensitivity_" + std::string(to_string(kind)) + ".csv");
  io::write_text_file(curve_path, csv);

  const double width = insensitivity_width(seq, plant, a.vtol);

  std::cout << "designed " << to_string(kind) << " shaper for " << io::format_g9(a.freq_hz)
            << " Hz, zeta " << io::format_g9(a.zeta) << "\n";
  for (const Impulse& imp : seq.impulses)
    std::cout << "  amplitude " << io::format_g9(imp.amplitude) << "  time "
              << io::format_g9(imp.time_s) << " s\n";
  std::cout << "duration " << io::format_g9(seq.duration_s()) << " s\n";
  std::cout << "insensitivity width at V<=" << io::format_g9(a.vtol) << ": "
            << io::format_g9(width) << "\n";

  json params;
  params["kind"] = to_string(kind);
  params["freq_hz"] = num(a.freq_hz);
  params["zeta"] = num(a.zeta);
  params["vtol"] = num(a.vtol);
  params["ratio_lo"] = num(a.ratio_lo);
  params["ratio_hi"] = num(a.ratio_hi);
  params["points"] = a.points;
  params["seed"] = g.seed;
  json outputs;
  outputs["shaper"] = shaper_path;
  outputs["sensitivity"] = curve_path;
  write_manifest(g, "design", json::object(), outputs, params);
}

// ----- simulate -------------------------------------------------------------

struct SimulateArgs {
  double freq_hz = 0.0;
  double zeta = 0.0;
  double distance_m = 0.0;
  double max_velocity = 0.0;
  double max_accel = 0.0;
  double sample_rate_hz = 5000.0;
  double horizon_s = 1.0;
  double band_m = kDefaultSettleBand;
  std::string shaper_path;
  bool compare = false;
};

void add_arm_fields(Summary& s, const std::string& prefix, const SimulationResult& res,
                    double band_m) {
  const VibrationMetrics m = residual_metrics(res);
  const SettlingTime st = settling_time(res, band_m);
  s.add(prefix + "residual_rms", num(m.rms));
  s.add(prefix + "residual_peak", num(m.peak));
  s.add(prefix + "residual_crest_factor",
        m.crest_factor ? json(num(*m.crest_factor)) : json());
  s.add(prefix + "settling_time_s", num(st.time_s));
  s.add(prefix + "settled", st.settled);
}

void run_simulate(const GlobalOpts& g, const SimulateArgs& a) {
  if (a.compare && a.shaper_path.empty())
    throw std::invalid_argument("--compare requires --shaper");
  if (!(a.sample_rate_hz > 0.0))
    throw std::domain_error("--sample-rate-hz must be positive");

  const PlantParams plant{hz_to_rad(a.freq_hz), a.zeta};
  plant.validate();

  TrapezoidParams tp;
  tp.distance_m = a.distance_m;
  tp.max_velocity_mps = a.max_velocity;
  tp.max_acceleration_mps2 = a.max_accel;
  const MotionProfile raw = trapezoid_profile(tp, 1.0 / a.sample_rate_hz);

  std::optional<io::ShaperDocument> doc;
  if (!a.shaper_path.empty()) doc = io::read_shaper(a.shaper_path);

  const MotionProfile command = doc ? shape_command(raw, doc->impulses) : raw;
  const SimulationResult response = simulate(plant, command, a.horizon_s);

  ensure_out_dir(g);
  const std::string command_path = out_path(g, "command.csv");
  const std::string response_path = out_path(g, "response.csv");
  io::write_profile(command_path, command);
  io::write_simulation(response_path, response);

  Summary s;
  s.add("sample_rate_hz", num(a.sample_rate_hz));
  s.add("command_end_time_s", num(response.command_end_time_s));
  s.add("shaped", doc.has_value());
  add_arm_fields(s, "", response, a.band_m);

  json outputs;
  outputs["command"] = command_path;
  outputs["response"] = response_path;

  if (a.compare) {
    const SimulationResult base = simulate(plant, raw, a.horizon_s);
    const std::string base_command_path = out_path(g, "command_unshaped.csv");
    const std::string base_response_path = out_path(g, "response_unshaped.csv");
    io::write_profile(base_command_path, raw);
    io::write_simulation(base_response_path, base);
    outputs["command_unshaped"] = base_command_path;
    outputs["response_unshaped"] = base_response_path;

    add_arm_fields(s, "unshaped_", base, a.band_m);
    const double rms_base = residual_rms(base);
    const double rms_shaped = residual_rms(response);
    if (rms_base > 0.0) {
      const double reduction = 100.0 * (1.0 - rms_shaped / rms_base);
      s.add("reduction_percent", num(reduction));
      std::cout << "residual rms " << io::format_g9(rms_shaped) << " vs unshaped "
                << io::format_g9(rms_base) << ": reduction " << io::format_g9(reduction)
                << "%\n";
    } else {
      s.add("reduction_percent", json());
    }
  } else {
    std::cout << "residual rms " << io::format_g9(residual_rms(response)) << "\n";
  }
  const SettlingTime st = settling_time(response, a.band_m);
  std::cout << "settling time " << io::format_g9(st.time_s) << " s"
            << (st.settled ? "" : " (did not settle within the horizon)") << "\n";

  const std::string metrics_path = s.write(g, "metrics");
  outputs["metrics"] = metrics_path;

  json inputs = json::object();
  if (!a.shaper_path.empty()) inputs["shaper"] = a.shaper_path;
  json params;
  params["freq_hz"] = num(a.freq_hz);
  params["zeta"] = num(a.zeta);
  params["distance_m"] = num(a.distance_m);
  params["max_velocity"] = num(a.max_velocity);
  params["max_accel"] = num(a.max_accel);
  params["sample_rate_hz"] = num(a.sample_rate_hz);
  params["horizon_s"] = num(a.horizon_s);
  params["band_m"] = num(a.band_m);
  params["compare"] = a.compare;
  params["seed"] = g.seed;
  write_manifest(g, "simulate", inputs, outputs, params);
}

// ----- analyze --------------------------------------------------------------

struct AnalyzeArgs {
  std::string input;
  double min_freq_hz = 0.0;
  std::string compare_with;
  double match_tolerance_hz = 1.0;
};

void run_analyze(const GlobalOpts& g, const AnalyzeArgs& a) {
  const std::vector<TraceSample> trace = io::read_trace(a.input);
  const double rate = trace_sample_rate(trace);
  const std::vector<double> samples = accel_column(trace);

  const VibrationMetrics m = metrics(samples);
  const Spectrum spec = spectrum(samples, rate);
  const double dominant = dominant_frequency(spec, a.min_freq_hz);

  ensure_out_dir(g);
  const std::string spectrum_path = out_path(g, "spectrum.csv");
  io::write_spectrum(spectrum_path, spec);

  Summary s;
  s.add("samples", json(samples.size()));
  s.add("sample_rate_hz", num(rate));
  s.add("rms", num(m.rms));
  s.add("peak", num(m.peak));
  s.add("crest_factor", m.crest_factor ? json(num(*m.crest_factor)) : json());
  s.add("dominant_frequency_hz", num(dominant));

  std::cout << "rms " << io::format_g9(m.rms) << "  peak " << io::format_g9(m.peak);
  if (m.crest_factor) std::cout << "  crest " << io::format_g9(*m.crest_factor);
  std::cout << "\ndominant frequency " << io::format_g9(dominant) << " Hz\n";

  json inputs;
  inputs["trace"] = a.input;
  json outputs;
  outputs["spectrum"] = spectrum_path;

  if (!a.compare_with.empty()) {
    const std::vector<TraceSample> other = io::read_trace(a.compare_with);
    const Spectrum other_spec = spectrum(accel_column(other), trace_sample_rate(other));
    const bool match =
        compare_signatures(spec, other_spec, a.match_tolerance_hz, a.min_freq_hz);
    const double other_dominant = dominant_frequency(other_spec, a.min_freq_hz);
    const std::string other_path = out_path(g, "spectrum_compare.csv");
    io::write_spectrum(other_path, other_spec);
    outputs["spectrum_compare"] = other_path;
    inputs["compare_with"] = a.compare_with;
    s.add("compare_dominant_frequency_hz", num(other_dominant));
    s.add("signatures_match", match);
    std::cout << "comparison trace dominant " << io::format_g9(other_dominant) << " Hz: "
              << (match ? "same source" : "distinct sources") << "\n";
  }

  const std::string metrics_path = s.write(g, "metrics");
  outputs["metrics"] = metrics_path;

  json params;
  params["min_freq_hz"] = num(a.min_freq_hz);
  params["match_tolerance_hz"] = num(a.match_tolerance_hz);
  params["seed"] = g.seed;
  write_manifest(g, "analyze", inputs, outputs, params);
}

// ----- doe ------------------------------------------------------------------

struct DoeArgs {
  std::string input;
  int max_order = 2;
  double alpha = 0.05;
};

void run_doe(const GlobalOpts& g, const DoeArgs& a) {
  const FactorialDesign design = io::read_design(a.input);
  const EffectFit fit = fit_effects(design, a.max_order);
  const SignificanceReport report = significance_report(fit, a.alpha);
  const EffectSummary summary = effect_summary(design);

  ensure_out_dir(g);

  // plot data: per-factor level means and per-pair cell means
  std::string mains = "factor,level,mean_response\n";
  for (const auto& e : summary.main_effects) {
    mains += e.factor + ",-1," + io::format_g9(e.mean_low) + "\n";
    mains += e.factor + ",+1," + io::format_g9(e.mean_high) + "\n";
  }
  const std::string mains_path = out_path(g, "main_effects.csv");
  io::write_text_file(mains_path, mains);

  std::string inter = "factor_a,level_a,factor_b,level_b,mean_response\n";
  for (const auto& c : summary.interaction_cells)
    inter += c.factor_a + "," + (c.level_a > 0 ? "+1" : "-1") + "," + c.factor_b + "," +
             (c.level_b > 0 ? "+1" : "-1") + "," + io::format_g9(c.mean) + "\n";
  const std::string inter_path = out_path(g, "interaction_effects.csv");
  io::write_text_file(inter_path, inter);

  // effects table in the requested format
  std::string effects_path;
  if (g.format == "json") {
    json doc;
    doc["alpha"] = num(a.alpha);
    doc["estimable"] = report.estimable;
    doc["residual_df"] = fit.residual_df;
    doc["residual_stddev"] = fit.residual_df > 0 ? json(num(fit.residual_stddev)) : json();
    json terms = json::array();
    for (size_t i = 0; i < fit.terms.size(); ++i) {
      json t;
      t["term"] = fit.terms[i].name;
      t["estimate"] = num(fit.coefficients[i]);
      if (fit.standard_errors) {
        t["std_error"] = num((*fit.standard_errors)[i]);
        t["t_value"] = num((*fit.t_values)[i]);
        t["p_value"] = num((*fit.p_values)[i]);
        t["significant"] = report.entries[i].significant;
      }
      terms.push_back(std::move(t));
    }
    doc["terms"] = std::move(terms);
    effects_path = out_path(g, "effects.json");
    io::write_text_file(effects_path, doc.dump(2) + "\n");
  } else {
    std::string csv = "term,estimate,std_error,t_value,p_value,significant\n";
    for (size_t i = 0; i < fit.terms.size(); ++i) {
      csv += fit.terms[i].name + "," + io::format_g9(fit.coefficients[i]) + ",";
      if (fit.standard_errors)
        csv += io::format_g9((*fit.standard_errors)[i]) + "," +
               io::format_g9((*fit.t_values)[i]) + "," + io::format_g9((*fit.p_values)[i]) +
               "," + (report.entries[i].significant ? "true" : "false");
      else
        csv += ",,,";
      csv += "\n";
    }
    effects_path = out_path(g, "effects.csv");
    io::write_text_file(effects_path, csv);
  }

  size_t width = 4;
  for (const auto& t : fit.terms) width = std::max(width, t.name.size());
  std::cout << "fit over " << design.runs.size() << " runs, residual df " << fit.residual_df
            << "\n";
  for (size_t i = 0; i < fit.terms.size(); ++i) {
    std::cout << "  " << fit.terms[i].name
              << std::string(width - fit.terms[i].name.size() + 2, ' ') << "estimate "
              << io::format_g9(fit.coefficients[i]);
    if (fit.p_values)
      std::cout << "  p " << io::format_g9((*fit.p_values)[i])
                << (report.entries[i].significant ? "  *" : "");
    std::cout << "\n";
  }
  if (!report.estimable)
    std::cout << "saturated fit: no residual degrees of freedom, significance unavailable\n";

  json inputs;
  inputs["design"] = a.input;
  json outputs;
  outputs["effects"] = effects_path;
  outputs["main_effects"] = mains_path;
  outputs["interaction_effects"] = inter_path;
  json params;
  params["max_order"] = a.max_order;
  params["alpha"] = num(a.alpha);
  params["seed"] = g.seed;
  write_manifest(g, "doe", inputs, outputs, params);
}

// ----- monitor --------------------------------------------------------------

struct MonitorArgs {
  std::string input;
  std::string config_path;
  bool calibrate = false;
  size_t window = 0;
  double warning_sigma = 3.0;
  double alarm_sigma = 6.0;
  double rearm_fraction = 0.8;
};

void run_monitor(const GlobalOpts& g, const MonitorArgs& a) {
  const std::vector<TraceSample> trace = io::read_trace(a.input);

  if (a.calibrate) {
    if (a.window == 0)
      throw std::invalid_argument("--calibrate requires --window");
    const double rate = trace_sample_rate(trace);
    const Thresholds th =
        baseline_thresholds(accel_column(trace), a.window, a.warning_sigma, a.alarm_sigma);
    MonitorConfig config;
    config.sample_rate_hz = io::round9(rate);
    config.window = a.window;
    config.warning_threshold = th.warning;
    config.alarm_threshold = th.alarm;
    config.rearm_fraction = a.rearm_fraction;
    config.validate();

    ensure_out_dir(g);
    const std::string config_path = out_path(g, "monitor_config.json");
    io::write_monitor_config(config_path, config);
    std::cout << "calibrated thresholds: warning " << io::format_g9(th.warning)
              << ", alarm " << io::format_g9(th.alarm) << "\n";

    json inputs;
    inputs["trace"] = a.input;
    json outputs;
    outputs["config"] = config_path;
    json params;
    params["window"] = a.window;
    params["warning_sigma"] = num(a.warning_sigma);
    params["alarm_sigma"] = num(a.alarm_sigma);
    params["rearm_fraction"] = num(a.rearm_fraction);
    params["seed"] = g.seed;
    write_manifest(g, "monitor", inputs, outputs, params);
    return;
  }

  if (a.config_path.empty())
    throw std::invalid_argument("monitor needs --config (or --calibrate)");
  const MonitorConfig config = io::read_monitor_config(a.config_path);
  const ReplayResult result = replay(trace, config);

  ensure_out_dir(g);
  const std::string events_path = out_path(g, "events.jsonl");
  io::write_event_log(events_path, result.events);

  size_t transitions = 0;
  for (const auto& e : result.events)
    if (e.kind == MonitorEvent::Kind::Transition) ++transitions;

  Summary s;
  s.add("samples", json(result.summary.samples));
  s.add("transitions", json(transitions));
  s.add("data_quality_events", json(result.summary.data_quality_events));
  s.add("max_rms", num(result.summary.max_rms));
  s.add("seconds_in_ok", num(result.summary.seconds_in_ok));
  s.add("seconds_in_warning", num(result.summary.seconds_in_warning));
  s.add("seconds_in_alarm", num(result.summary.seconds_in_alarm));
  s.add("final_state", std::string(to_string(result.summary.final_state)));
  const std::string summary_path = s.write(g, "monitor_summary");

  std::cout << "replayed " << result.summary.samples << " samples: " << transitions
            << " transitions, " << result.summary.data_quality_events
            << " data-quality events\n";
  std::cout << "max rms " << io::format_g9(result.summary.max_rms) << ", final state "
            << to_string(result.summary.final_state) << "\n";

  json inputs;
  inputs["trace"] = a.input;
  inputs["config"] = a.config_path;
  json outputs;
  outputs["events"] = events_path;
  outputs["summary"] = summary_path;
  json params;
  params["window"] = config.window;
  params["warning_threshold"] = num(config.warning_threshold);
  params["alarm_threshold"] = num(config.alarm_threshold);
  params["rearm_fraction"] = num(config.rearm_fraction);
  params["sample_rate_hz"] = num(config.sample_rate_hz);
  params["seed"] = g.seed;
  write_manifest(g, "monitor", inputs, outputs, params);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vibration suppression and diagnosis toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--out-dir", g.out_dir, "directory for output artifacts")
      ->capture_default_str();
  app.add_option("--seed", g.seed, "seed recorded for stochastic generators")
      ->capture_default_str();
  app.add_option("--format", g.format, "summary format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  DesignArgs da;
  CLI::App* design = app.add_subcommand("design", "design an input shaper");
  design->fallthrough();
  design->add_option("kind", da.kind, "shaper kind: zv, zvd, zvdd, ei")->required();
  design->add_option("--freq-hz", da.freq_hz, "flexible-mode frequency in Hz")->required();
  design->add_option("--zeta", da.zeta, "damping ratio")->capture_default_str();
  CLI::Option* vtol_opt =
      design->add_option("--vtol", da.vtol, "tolerable residual at the design point")
          ->capture_default_str();
  design->add_option("--ratio-lo", da.ratio_lo, "sensitivity sweep lower frequency ratio")
      ->capture_default_str();
  design->add_option("--ratio-hi", da.ratio_hi, "sensitivity sweep upper frequency ratio")
      ->capture_default_str();
  design->add_option("--points", da.points, "sensitivity sweep point count")
      ->capture_default_str();

  SimulateArgs sa;
  CLI::App* sim = app.add_subcommand("simulate", "run a move against the flexible plant");
  sim->fallthrough();
  sim->add_option("--freq-hz", sa.freq_hz, "plant frequency in Hz")->required();
  sim->add_option("--zeta", sa.zeta, "plant damping ratio")->capture_default_str();
  sim->add_option("--distance-m", sa.distance_m, "move distance in meters")->required();
  sim->add_option("--max-velocity", sa.max_velocity, "velocity limit in m/s")->required();
  sim->add_option("--max-accel", sa.max_accel, "acceleration limit in m/s^2")->required();
  sim->add_option("--sample-rate-hz", sa.sample_rate_hz, "command sample rate")
      ->capture_default_str();
  sim->add_option("--horizon-s", sa.horizon_s, "settle horizon after the command ends")
      ->capture_default_str();
  sim->add_option("--band", sa.band_m, "settling band in meters")->capture_default_str();
  sim->add_option("--shaper", sa.shaper_path, "shaper JSON from the design subcommand");
  sim->add_flag("--compare", sa.compare, "also run unshaped and report the reduction");

  AnalyzeArgs aa;
  CLI::App* analyze = app.add_subcommand("analyze", "metrics and spectrum of a trace");
  analyze->fallthrough();
  analyze->add_option("--input", aa.input, "trace CSV (time_s,accel_mps2)")->required();
  analyze->add_option("--min-freq", aa.min_freq_hz, "ignore spectral peaks below this")
      ->capture_default_str();
  analyze->add_option("--compare-with", aa.compare_with, "second trace for signature match");
  analyze->add_option("--match-tolerance-hz", aa.match_tolerance_hz,
                      "dominant-frequency match tolerance")
      ->capture_default_str();

  DoeArgs oa;
  CLI::App* doe = app.add_subcommand("doe", "fit a two-level factorial experiment");
  doe->fallthrough();
  doe->add_option("--input", oa.input, "design CSV with a response column")->required();
  doe->add_option("--max-order", oa.max_order, "1 = main effects, 2 = + pairwise")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  doe->add_option("--alpha", oa.alpha, "significance level")->capture_default_str();

  MonitorArgs ma;
  CLI::App* monitor = app.add_subcommand("monitor", "replay a trace through the watchdog");
  monitor->fallthrough();
  monitor->add_option("--input", ma.input, "trace CSV (time_s,accel_mps2)")->required();
  monitor->add_option("--config", ma.config_path, "monitor config JSON");
  monitor->add_flag("--calibrate", ma.calibrate,
                    "derive thresholds from this trace instead of replaying");
  monitor->add_option("--window", ma.window, "rolling RMS window, samples");
  monitor->add_option("--warning-sigma", ma.warning_sigma, "warning = mean + k*sigma")
      ->capture_default_str();
  monitor->add_option("--alarm-sigma", ma.alarm_sigma, "alarm = mean + k*sigma")
      ->capture_default_str();
  monitor->add_option("--rearm-fraction", ma.rearm_fraction, "hysteresis rearm fraction")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
    da.vtol_given = vtol_opt->count() > 0;
    if (design->parsed()) run_design(g, da);
    if (sim->parsed()) run_simulate(g, sa);
    if (analyze->parsed()) run_analyze(g, aa);
    if (doe->parsed()) run_doe(g, oa);
    if (monitor->parsed()) run_monitor(g, ma);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
