#include "vibelab/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace vibelab::io {

using nlohmann::json;

std::string format_g9(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

double round9(double value) {
  if (!std::isfinite(value)) return value;
  return std::strtod(format_g9(value).c_str(), nullptr);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_double(const std::string& cell, size_t row, const std::string& path) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw std::invalid_argument(path + ": cannot parse '" + cell + "' as a number at row " +
                                std::to_string(row));
  return v;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // raw cells
};

CsvTable read_csv(const std::string& path) {
  const std::string text = read_text_file(path);
  CsvTable table;
  std::istringstream ss(text);
  std::string line;
  bool first = true;
  while (std::getline(ss, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv_line(line);
    if (first) {
      table.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != table.header.size())
        throw std::invalid_argument(path + ": row " +
                                    std::to_string(table.rows.size() + 1) + " has " +
                                    std::to_string(cells.size()) + " cells, expected " +
                                    std::to_string(table.header.size()));
      table.rows.push_back(std::move(cells));
    }
  }
  if (first) throw std::invalid_argument(path + ": missing header row");
  return table;
}

void require_header(const CsvTable& table, const std::vector<std::string>& expected,
                    const std::string& path) {
  if (table.header != expected) {
    std::string want;
    for (const auto& h : expected) want += (want.empty() ? "" : ",") + h;
    std::string got;
    for (const auto& h : table.header) got += (got.empty() ? "" : ",") + h;
    throw std::invalid_argument(path + ": expected header '" + want + "', found '" + got +
                                "'");
  }
}

json impulses_to_json(const ImpulseSequence& seq) {
  json arr = json::array();
  for (const Impulse& imp : seq.impulses)
    arr.push_back({{"amplitude", round9(imp.amplitude)}, {"time_s", round9(imp.time_s)}});
  return arr;
}

}  // namespace

std::string shaper_to_json(const ShaperDocument& doc) {
  json j;
  j["kind"] = to_string(doc.kind);
  j["natural_frequency_rad_s"] = round9(doc.plant.natural_frequency_rad_s);
  j["damping_ratio"] = round9(doc.plant.damping_ratio);
  if (doc.tolerable_vibration) j["tolerable_vibration"] = round9(*doc.tolerable_vibration);
  j["impulses"] = impulses_to_json(doc.impulses);
  return j.dump(2) + "\n";
}

ShaperDocument shaper_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed shaper JSON: ") + e.what());
  }
  try {
    ShaperDocument doc;
    doc.kind = parse_shaper_kind(j.at("kind").get<std::string>());
    doc.plant.natural_frequency_rad_s = j.at("natural_frequency_rad_s").get<double>();
    doc.plant.damping_ratio = j.at("damping_ratio").get<double>();
    if (j.contains("tolerable_vibration"))
      doc.tolerable_vibration = j["tolerable_vibration"].get<double>();
    for (const auto& imp : j.at("impulses"))
      doc.impulses.impulses.push_back(
          {imp.at("amplitude").get<double>(), imp.at("time_s").get<double>()});
    doc.plant.validate();
    doc.impulses.validate();
    return doc;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed shaper JSON: ") + e.what());
  }
}

void write_shaper(const std::string& path, const ShaperDocument& doc) {
  write_text_file(path, shaper_to_json(doc));
}

ShaperDocument read_shaper(const std::string& path) {
  return shaper_from_json(read_text_file(path));
}

void write_profile(const std::string& path, const MotionProfile& profile) {
  std::ostringstream out;
  out << "time_s,position_m,velocity_mps,acceleration_mps2\n";
  for (size_t i = 0; i < profile.samples.size(); ++i) {
    const MotionSample& s = profile.samples[i];
    out << format_g9(profile.sample_period_s * static_cast<double>(i)) << ','
        << format_g9(s.position_m) << ',' << format_g9(s.velocity_mps) << ','
        << format_g9(s.acceleration_mps2) << '\n';
  }
  write_text_file(path, out.str());
}

MotionProfile read_profile(const std::string& path) {
  const CsvTable table = read_csv(path);
  require_header(table, {"time_s", "position_m", "velocity_mps", "acceleration_mps2"},
                 path);
  if (table.rows.size() < 2)
    throw std::invalid_argument(path + ": profile needs at least 2 samples");
  MotionProfile profile;
  const double t0 = parse_double(table.rows[0][0], 1, path);
  const double t1 = parse_double(table.rows[1][0], 2, path);
  profile.sample_period_s = t1 - t0;
  for (size_t r = 0; r < table.rows.size(); ++r) {
    MotionSample s;
    s.position_m = parse_double(table.rows[r][1], r + 1, path);
    s.velocity_mps = parse_double(table.rows[r][2], r + 1, path);
    s.acceleration_mps2 = parse_double(table.rows[r][3], r + 1, path);
    profile.samples.push_back(s);
  }
  profile.validate();
  return profile;
}

void write_simulation(const std::string& path, const SimulationResult& result) {
  std::ostringstream out;
  out << "time_s,displacement_m,acceleration_mps2\n";
  for (size_t i = 0; i < result.displacement_m.size(); ++i) {
    out << format_g9(result.sample_period_s * static_cast<double>(i)) << ','
        << format_g9(result.displacement_m[i]) << ','
        << format_g9(result.acceleration_mps2[i]) << '\n';
  }
  write_text_file(path, out.str());
}

void write_trace(const std::string& path, const std::vector<TraceSample>& trace) {
  std::ostringstream out;
  out << "time_s,accel_mps2\n";
  for (const TraceSample& s : trace)
    out << format_g9(s.time_s) << ',' << format_g9(s.accel_mps2) << '\n';
  write_text_file(path, out.str());
}

std::vector<TraceSample> read_trace(const std::string& path) {
  const CsvTable table = read_csv(path);
  size_t time_col = 0, accel_col = 1;
  if (table.header == std::vector<std::string>{"time_s", "accel_mps2"}) {
    accel_col = 1;
  } else if (table.header ==
             std::vector<std::string>{"time_s", "displacement_m", "acceleration_mps2"}) {
    accel_col = 2;
  } else {
    throw std::invalid_argument(path +
                                ": expected header 'time_s,accel_mps2' or "
                                "'time_s,displacement_m,acceleration_mps2'");
  }
  std::vector<TraceSample> trace;
  trace.reserve(table.rows.size());
  for (size_t r = 0; r < table.rows.size(); ++r) {
    // nan/inf cells are legal here; the monitor turns them into
    // data-quality events
    trace.push_back({parse_double(table.rows[r][time_col], r + 1, path),
                     parse_double(table.rows[r][accel_col], r + 1, path)});
  }
  return trace;
}

void write_spectrum(const std::string& path, const Spectrum& spec) {
  std::ostringstream out;
  out << "frequency_hz,magnitude\n";
  for (size_t k = 0; k < spec.magnitudes.size(); ++k)
    out << format_g9(spec.frequency_at(k)) << ',' << format_g9(spec.magnitudes[k]) << '\n';
  write_text_file(path, out.str());
}

FactorialDesign read_design(const std::string& path) {
  const CsvTable table = read_csv(path);
  long response_col = -1;
  for (size_t c = 0; c < table.header.size(); ++c)
    if (table.header[c] == "response") response_col = static_cast<long>(c);
  if (response_col < 0)
    throw std::invalid_argument(path + ": missing required column 'response'");
  if (table.header.size() < 2)
    throw std::invalid_argument(path + ": design needs at least one factor column");
  if (table.rows.empty()) throw std::invalid_argument(path + ": design has no runs");

  FactorialDesign design;
  for (size_t c = 0; c < table.header.size(); ++c)
    if (static_cast<long>(c) != response_col) design.factor_labels.push_back(table.header[c]);

  std::map<std::vector<int>, size_t> seen;
  for (size_t r = 0; r < table.rows.size(); ++r) {
    std::vector<int> levels;
    for (size_t c = 0; c < table.header.size(); ++c) {
      if (static_cast<long>(c) == response_col) continue;
      const double v = parse_double(table.rows[r][c], r + 1, path);
      if (v != -1.0 && v != 1.0)
        throw std::invalid_argument(path + ": factor level must be coded -1 or +1 at row " +
                                    std::to_string(r + 1));
      levels.push_back(static_cast<int>(v));
    }
    const double y =
        parse_double(table.rows[r][static_cast<size_t>(response_col)], r + 1, path);
    auto [it, inserted] = seen.try_emplace(levels, design.runs.size());
    if (inserted) {
      design.runs.push_back(levels);
      design.responses.emplace_back();
    }
    design.responses[it->second].push_back(y);
  }
  design.validate();
  return design;
}

void write_design(const std::string& path, const FactorialDesign& design) {
  design.validate();
  std::ostringstream out;
  for (const auto& label : design.factor_labels) out << label << ',';
  out << "response\n";
  for (size_t r = 0; r < design.runs.size(); ++r) {
    const auto& reps =
        design.responses.empty() ? std::vector<double>{} : design.responses[r];
    const size_t lines = reps.empty() ? 1 : reps.size();
    for (size_t rep = 0; rep < lines; ++rep) {
      for (int level : design.runs[r]) out << (level > 0 ? "1" : "-1") << ',';
      out << (reps.empty() ? "" : format_g9(reps[rep])) << '\n';
    }
  }
  write_text_file(path, out.str());
}

MonitorConfig read_monitor_config(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed monitor config: ") + e.what());
  }
  try {
    MonitorConfig config;
    config.sample_rate_hz = j.at("sample_rate_hz").get<double>();
    config.window = j.at("window").get<std::size_t>();
    config.warning_threshold = j.at("warning_threshold").get<double>();
    config.alarm_threshold = j.at("alarm_threshold").get<double>();
    if (j.contains("rearm_fraction")) config.rearm_fraction = j["rearm_fraction"].get<double>();
    config.validate();
    return config;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed monitor config: ") + e.what());
  }
}

void write_monitor_config(const std::string& path, const MonitorConfig& config) {
  json j;
  j["sample_rate_hz"] = round9(config.sample_rate_hz);
  j["window"] = config.window;
  j["warning_threshold"] = round9(config.warning_threshold);
  j["alarm_threshold"] = round9(config.alarm_threshold);
  j["rearm_fraction"] = round9(config.rearm_fraction);
  write_text_file(path, j.dump(2) + "\n");
}

void write_event_log(const std::string& path, const std::vector<MonitorEvent>& events) {
  std::ostringstream out;
  for (const MonitorEvent& e : events) {
    json j;
    j["sample_index"] = e.sample_index;
    j["time_s"] = round9(e.time_s);
    j["from"] = to_string(e.from);
    j["to"] = to_string(e.to);
    j["rms"] = round9(e.rms);
    j["kind"] = e.kind == MonitorEvent::Kind::Transition ? "transition" : "data_quality";
    out << j.dump() << '\n';
  }
  write_text_file(path, out.str());
}

}  // namespace vibelab::io
