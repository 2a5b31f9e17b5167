#include "ffsim/reporting.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ffsim {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<std::string> timeseries_columns() {
  return {"t",       "r_e_x",    "r_e_y",     "r_e_z",  "r_e_norm", "s_orb_x",  "s_orb_y",
          "s_orb_z", "s_orb_norm", "q_e_1",   "q_e_2",  "q_e_3",    "q_e_4",    "s_att_norm",
          "K_orb",   "Kdot_orb", "K_att",     "Kdot_att", "u_fired_x", "u_fired_y", "u_fired_z",
          "tau_1",   "tau_2",    "tau_3"};
}

std::vector<double> timeseries_row(const LogRecord& r) {
  return {r.t,
          r.r_error.x(),
          r.r_error.y(),
          r.r_error.z(),
          r.r_error.norm(),
          r.s_orb.x(),
          r.s_orb.y(),
          r.s_orb.z(),
          r.s_orb.norm(),
          r.q_error.qv.x(),
          r.q_error.qv.y(),
          r.q_error.qv.z(),
          r.q_error.q4,
          r.s_att.norm(),
          r.k_orb,
          r.k_orb_dot,
          r.k_att,
          r.k_att_dot,
          r.u_fired_lvlh.x(),
          r.u_fired_lvlh.y(),
          r.u_fired_lvlh.z(),
          r.tau.x(),
          r.tau.y(),
          r.tau.z()};
}

void write_text(const std::string& path, const std::string& content) {
  const fs::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("write failed for '" + path + "'");
}

void emit_timeseries(const SimulationLog& log, const std::string& path, double decimation) {
  if (!(decimation > 0.0)) throw std::invalid_argument("decimation must be positive");
  const long stride = std::max(1L, std::lround(decimation / log.dt));
  const fs::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  const auto cols = timeseries_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    std::fputs(cols[i].c_str(), f);
    std::fputc(i + 1 < cols.size() ? ',' : '\n', f);
  }
  for (std::size_t i = 0; i < log.records.size(); i += static_cast<std::size_t>(stride)) {
    const auto row = timeseries_row(log.records[i]);
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::fprintf(f, "%.17g%c", row[c], c + 1 < row.size() ? ',' : '\n');
    }
  }
  const bool failed = std::ferror(f) != 0;
  if (std::fclose(f) != 0 || failed) throw IoError("write failed for '" + path + "'");
}

Timeseries read_timeseries(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  Timeseries ts;
  std::string line;
  if (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) ts.header.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    ts.rows.push_back(std::move(row));
  }
  return ts;
}

std::string pair_label(const ControllerPair& pair) {
  if (pair.orbit == pair.attitude) return to_string(pair.orbit);
  return to_string(pair.orbit) + "-" + to_string(pair.attitude);
}

namespace {

ControllerPair parse_pair(const json& v, const std::string& where) {
  if (v.is_string()) {
    const auto k = parse_controller_kind(v.get<std::string>());
    return {k, k};
  }
  if (v.is_array() && v.size() == 2 && v[0].is_string() && v[1].is_string()) {
    return {parse_controller_kind(v[0].get<std::string>()),
            parse_controller_kind(v[1].get<std::string>())};
  }
  throw ConfigError(where + ": controller entries are a name or an [orbit, attitude] pair");
}

RunManifest parse_scenario(const json& s, const fs::path& base_dir, const std::string& output_root,
                           const std::string& where) {
  static const std::set<std::string> known = {"name", "config", "output_dir", "controllers",
                                               "seeds"};
  if (!s.is_object()) throw ConfigError(where + ": scenario must be an object");
  for (const auto& item : s.items()) {
    if (!known.count(item.key())) throw ConfigError(where + ": unknown key '" + item.key() + "'");
  }
  RunManifest m;
  m.name = s.value("name", std::string("scenario"));
  if (!s.contains("config") || !s["config"].is_string()) {
    throw ConfigError(where + ": 'config' path is required");
  }
  fs::path cfg = s["config"].get<std::string>();
  if (cfg.is_relative()) cfg = base_dir / cfg;
  m.config_path = cfg.lexically_normal().string();
  if (!fs::exists(cfg)) throw ConfigError(where + ": config file '" + m.config_path + "' not found");

  fs::path out = s.value("output_dir", m.name);
  if (out.is_relative()) out = output_root.empty() ? base_dir / out : fs::path(output_root) / out;
  m.output_dir = out.lexically_normal().string();

  if (s.contains("controllers")) {
    if (!s["controllers"].is_array() || s["controllers"].empty()) {
      throw ConfigError(where + ": 'controllers' must be a non-empty array");
    }
    for (const auto& c : s["controllers"]) m.controllers.push_back(parse_pair(c, where));
  } else {
    m.controllers = {{ControllerKind::kPd, ControllerKind::kPd},
                     {ControllerKind::kLqr, ControllerKind::kLqr},
                     {ControllerKind::kNftsm, ControllerKind::kNftsm}};
  }
  if (s.contains("seeds")) {
    if (!s["seeds"].is_array() || s["seeds"].empty()) {
      throw ConfigError(where + ": 'seeds' must be a non-empty array");
    }
    for (const auto& v : s["seeds"]) {
      if (!v.is_number_unsigned()) throw ConfigError(where + ": seeds must be nonnegative integers");
      m.seeds.push_back(v.get<std::uint64_t>());
    }
  }
  return m;
}

}  // namespace

std::vector<RunManifest> load_manifest(const std::string& path, const std::string& output_root) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read manifest '" + path + "'");
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": parse error: " + e.what());
  }
  const fs::path base_dir = fs::path(path).parent_path();
  std::vector<RunManifest> out;
  if (root.is_object() && root.contains("scenarios")) {
    if (root.size() != 1) throw ConfigError(path + ": only 'scenarios' is allowed at top level");
    if (!root["scenarios"].is_array() || root["scenarios"].empty()) {
      throw ConfigError(path + ": 'scenarios' must be a non-empty array");
    }
    int i = 0;
    for (const auto& s : root["scenarios"]) {
      out.push_back(parse_scenario(s, base_dir, output_root,
                                   path + ": scenarios[" + std::to_string(i++) + "]"));
    }
  } else {
    out.push_back(parse_scenario(root, base_dir, output_root, path));
  }
  std::set<std::string> names;
  for (const auto& m : out) {
    if (!names.insert(m.name).second) {
      throw ConfigError(path + ": duplicate scenario name '" + m.name + "'");
    }
  }
  return out;
}

ComparisonReport run_comparison(const RunManifest& manifest, const SimulationConfig& base,
                                bool write_timeseries) {
  ComparisonReport report;
  report.scenario = manifest.name;
  const std::uint64_t seed = manifest.seeds.empty() ? base.seed : manifest.seeds.front();
  for (const auto& pair : manifest.controllers) {
    SimulationConfig cfg = base;
    cfg.seed = seed;
    cfg.control.orbit = pair.orbit;
    cfg.control.attitude = pair.attitude;
    cfg.record_log = write_timeseries;
    SimulationResult res;
    try {
      res = run_closed_loop(cfg);
    } catch (const std::exception& e) {
      throw std::runtime_error("scenario '" + manifest.name + "', controllers " + pair_label(pair) +
                               ": " + e.what());
    }
    if (write_timeseries) {
      emit_timeseries(res.log, (fs::path(manifest.output_dir) / (pair_label(pair) + ".csv")).string());
    }
    ComparisonRow row;
    row.pair = pair;
    row.seed = seed;
    row.draw = res.log.draw;
    row.metrics = res.metrics;
    report.rows.push_back(row);
  }
  for (const auto& row : report.rows) {
    const auto& d0 = report.rows.front().draw;
    const auto& d = row.draw;
    if (row.seed != report.rows.front().seed || d.draw_count != d0.draw_count ||
        d.mass_delta != d0.mass_delta || d.inertia_delta != d0.inertia_delta ||
        d.dipole_direction != d0.dipole_direction) {
      report.streams_identical = false;
    }
  }
  return report;
}

std::string format_comparison(const ComparisonReport& report) {
  std::ostringstream os;
  char buf[256];
  os << "scenario: " << report.scenario << "\n";
  if (!report.rows.empty()) {
    const auto& d = report.rows.front().draw;
    std::snprintf(buf, sizeof(buf), "seed: %llu  draws: %d  mass offset: %.6g kg  streams identical: %s\n",
                  static_cast<unsigned long long>(report.rows.front().seed), d.draw_count,
                  d.mass_delta, report.streams_identical ? "yes" : "no");
    os << buf;
  }
  std::snprintf(buf, sizeof(buf), "%-14s %18s %14s %12s %10s\n", "controller", "aligned time (min)",
                "fuel (N s)", "first <=3 m", "switches");
  os << buf;
  for (const auto& row : report.rows) {
    const auto& m = row.metrics;
    std::snprintf(buf, sizeof(buf), "%-14s %18.2f %14.3e %12.2f %10d\n", pair_label(row.pair).c_str(),
                  m.aligned_time / 60.0, m.fuel, m.first_position_convergence, m.switch_count);
    os << buf;
  }
  return os.str();
}

std::string format_metrics(const Metrics& m) {
  char buf[1024];
  std::snprintf(buf, sizeof(buf),
                "duration                 : %.2f s\n"
                "aligned time             : %.2f s (%.2f min)\n"
                "fuel                     : %.6e N s\n"
                "first |r_e| <= 3 m       : %.2f s\n"
                "first |s_orb| <= eps     : %.2f s\n"
                "hold after convergence   : position %.1f %%, sliding %.1f %%\n"
                "pointing within 3 deg    : %.2f s\n"
                "tilt branch switches     : %d\n"
                "max K_orb / K_att        : %.4e / %.4e\n"
                "gain floor violations    : %ld\n"
                "disturbance clamps       : force %ld, torque %ld\n",
                m.duration, m.aligned_time, m.aligned_time / 60.0, m.fuel,
                m.first_position_convergence, m.first_s_orb_convergence,
                100.0 * m.position_hold_fraction, 100.0 * m.s_orb_hold_fraction, m.pointing_time,
                m.switch_count, m.k_orb_max, m.k_att_max, m.gain_floor_violations, m.force_clamps,
                m.torque_clamps);
  return buf;
}

}  // namespace ffsim
