#include "ffsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ffsim {

using nlohmann::json;

namespace {

/// Walks one JSON object, filling fields and recording problems by path.
class Reader {
 public:
  Reader(const json* obj, std::string path, std::vector<std::string>& errors)
      : obj_(obj), path_(std::move(path)), errors_(errors) {}

  ~Reader() {
    if (!obj_) return;
    for (const auto& item : obj_->items()) {
      if (!seen_.count(item.key())) errors_.push_back("unknown key '" + where(item.key()) + "'");
    }
  }

  Reader(const Reader&) = delete;
  Reader& operator=(const Reader&) = delete;

  Reader object(const std::string& key) {
    const json* v = find(key);
    if (v && !v->is_object()) {
      errors_.push_back(where(key) + ": expected an object");
      v = nullptr;
    }
    return Reader(v, where(key), errors_);
  }

  void number(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      if (v->is_number()) out = v->get<double>();
      else type_error(key, "a number");
    }
  }

  void integer(const std::string& key, std::uint64_t& out) {
    if (const json* v = find(key)) {
      if (v->is_number_unsigned()) out = v->get<std::uint64_t>();
      else type_error(key, "a nonnegative integer");
    }
  }

  void boolean(const std::string& key, bool& out) {
    if (const json* v = find(key)) {
      if (v->is_boolean()) out = v->get<bool>();
      else type_error(key, "true or false");
    }
  }

  void controller(const std::string& key, ControllerKind& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) {
        type_error(key, "a string");
        return;
      }
      try {
        out = parse_controller_kind(v->get<std::string>());
      } catch (const ConfigError& e) {
        errors_.push_back(where(key) + ": " + e.what());
      }
    }
  }

  template <int N>
  void vector(const std::string& key, Eigen::Matrix<double, N, 1>& out) {
    if (const json* v = find(key)) {
      if (!v->is_array() || v->size() != static_cast<std::size_t>(N) ||
          !std::all_of(v->begin(), v->end(), [](const json& e) { return e.is_number(); })) {
        type_error(key, "an array of " + std::to_string(N) + " numbers");
        return;
      }
      for (int i = 0; i < N; ++i) out[i] = (*v)[static_cast<std::size_t>(i)].get<double>();
    }
  }

  void matrix3(const std::string& key, Matrix3& out) {
    if (const json* v = find(key)) {
      const auto row_ok = [](const json& r) {
        return r.is_array() && r.size() == 3 &&
               std::all_of(r.begin(), r.end(), [](const json& e) { return e.is_number(); });
      };
      if (!v->is_array() || v->size() != 3 || !std::all_of(v->begin(), v->end(), row_ok)) {
        type_error(key, "a 3x3 array of numbers");
        return;
      }
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          out(i, j) = (*v)[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].get<double>();
        }
      }
    }
  }

 private:
  const json* find(const std::string& key) {
    seen_.insert(key);
    if (!obj_) return nullptr;
    const auto it = obj_->find(key);
    return it == obj_->end() ? nullptr : &*it;
  }

  std::string where(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void type_error(const std::string& key, const std::string& expected) {
    errors_.push_back(where(key) + ": expected " + expected);
  }

  const json* obj_;
  std::string path_;
  std::vector<std::string>& errors_;
  std::set<std::string> seen_;
};

void read_tuning(Reader r, AdaptiveTuning& t) {
  r.number("rho", t.sliding.rho);
  r.vector<3>("alpha", t.sliding.alpha);
  r.vector<3>("beta", t.sliding.beta);
  r.number("epsilon", t.sliding.epsilon);
  r.number("k_initial", t.gain.k);
  r.number("k0", t.gain.k0);
  r.number("eta", t.gain.eta);
}

void read_pd(Reader r, PdGains& g) {
  r.number("kp", g.kp);
  r.number("kd", g.kd);
}

void read_lqr(Reader r, LqrWeights& w) {
  r.vector<6>("q_diag", w.q_diag);
  r.vector<3>("r_diag", w.r_diag);
}

void read_ballistic(Reader r, BallisticProperties& b) {
  r.number("mass", b.mass);
  r.number("drag_area", b.drag_area);
  r.number("drag_coefficient", b.drag_coefficient);
  r.number("srp_area", b.srp_area);
  r.number("reflectivity", b.reflectivity);
}

void read_config(const json& root, SimulationConfig& c, std::vector<std::string>& errors) {
  Reader r(&root, "", errors);
  r.number("duration", c.duration);
  r.number("dt", c.dt);
  r.number("ts_orb", c.ts_orb);
  r.integer("seed", c.seed);
  r.boolean("record_log", c.record_log);
  {
    Reader s = r.object("chief");
    s.number("altitude", c.chief.altitude);
    s.number("inclination_deg", c.chief.inclination_deg);
    s.number("raan_deg", c.chief.raan_deg);
    s.number("arg_latitude_deg", c.chief.arg_latitude_deg);
  }
  {
    Reader s = r.object("initial");
    s.vector<3>("position_error", c.initial.position_error);
    s.vector<3>("velocity_error", c.initial.velocity_error);
    s.vector<3>("attitude_axis", c.initial.attitude_axis);
    s.number("attitude_angle_deg", c.initial.attitude_angle_deg);
    s.vector<3>("omega", c.initial.omega);
    s.vector<3>("h_wheel", c.initial.h_wheel);
  }
  {
    Reader s = r.object("controller");
    s.controller("orbit", c.control.orbit);
    s.controller("attitude", c.control.attitude);
    read_tuning(s.object("orbit_nftsm"), c.control.orbit_nftsm);
    read_tuning(s.object("attitude_nftsm"), c.control.attitude_nftsm);
    read_pd(s.object("orbit_pd"), c.control.orbit_pd);
    read_pd(s.object("attitude_pd"), c.control.attitude_pd);
    read_lqr(s.object("orbit_lqr"), c.control.orbit_lqr);
    read_lqr(s.object("attitude_lqr"), c.control.attitude_lqr);
    s.number("branch_deadband", c.control.branch_deadband);
    s.number("gain_ceiling_orbit", c.control.gain_ceiling_orbit);
    s.number("gain_ceiling_attitude", c.control.gain_ceiling_attitude);
  }
  {
    Reader s = r.object("actuator");
    s.number("u_max", c.actuator.u_max);
    s.number("u_resolution", c.actuator.u_resolution);
    s.boolean("z_masked", c.actuator.z_masked);
    s.number("tau_max", c.actuator.tau_max);
  }
  {
    Reader s = r.object("mass");
    s.number("nominal", c.mass.nominal);
    s.number("delta_bound", c.mass.delta_bound);
  }
  {
    Reader s = r.object("inertia");
    s.matrix3("nominal", c.inertia.nominal);
    s.number("delta_bound", c.inertia.delta_bound);
  }
  {
    Reader s = r.object("wheel");
    s.matrix3("inertia", c.wheel.inertia);
    s.number("max_torque", c.wheel.max_torque);
  }
  {
    EnvironmentConfig& e = c.environment;
    Reader s = r.object("environment");
    s.boolean("j2", e.j2);
    s.boolean("third_body", e.third_body);
    s.boolean("drag", e.drag);
    s.boolean("srp", e.srp);
    s.boolean("gravity_gradient", e.gravity_gradient);
    s.boolean("magnetic", e.magnetic);
    s.number("density_ref", e.density_ref);
    s.number("altitude_ref", e.altitude_ref);
    s.number("scale_height", e.scale_height);
    s.number("deputy_drag_area", e.deputy_drag_area);
    s.number("deputy_drag_coefficient", e.deputy_drag_coefficient);
    s.number("deputy_srp_area", e.deputy_srp_area);
    s.number("deputy_reflectivity", e.deputy_reflectivity);
    s.vector<3>("cp_offset", e.cp_offset);
    read_ballistic(s.object("chief"), e.chief);
    s.number("dipole_magnitude", e.dipole_magnitude);
    s.vector<3>("dipole_direction", e.dipole_direction);
    s.number("epoch_offset", e.epoch_offset);
    s.number("greenwich_angle_at_epoch", e.greenwich_angle_at_epoch);
    s.number("force_cap", e.force_cap);
    s.number("torque_cap", e.torque_cap);
  }
  {
    Reader s = r.object("uncertainty");
    s.boolean("sample_mass", c.uncertainty.sample_mass);
    s.boolean("sample_inertia", c.uncertainty.sample_inertia);
    s.boolean("random_dipole", c.uncertainty.random_dipole);
  }
}

void line_column(const std::string& text, std::size_t byte, int& line, int& column) {
  line = 1;
  column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
}

json vec(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json mat(const Matrix3& m) {
  json a = json::array();
  for (int i = 0; i < 3; ++i) a.push_back(vec(m.row(i).transpose()));
  return a;
}

json tuning_json(const AdaptiveTuning& t) {
  return {{"rho", t.sliding.rho},         {"alpha", vec(t.sliding.alpha)},
          {"beta", vec(t.sliding.beta)},  {"epsilon", t.sliding.epsilon},
          {"k_initial", t.gain.k},        {"k0", t.gain.k0},
          {"eta", t.gain.eta}};
}

}  // namespace

SimulationConfig parse_config(const std::string& text, const std::string& source) {
  SimulationConfig config;
  const bool blank = std::all_of(text.begin(), text.end(),
                                 [](unsigned char ch) { return std::isspace(ch) != 0; });
  if (!blank) {
    json root;
    try {
      root = json::parse(text);
    } catch (const json::parse_error& e) {
      int line = 0;
      int column = 0;
      line_column(text, e.byte > 0 ? e.byte - 1 : 0, line, column);
      throw ConfigParseError(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                                 ": parse error: " + e.what(),
                             line, column);
    }
    if (!root.is_object()) throw ConfigError(source + ": top level must be a JSON object");
    std::vector<std::string> errors;
    read_config(root, config, errors);
    if (!errors.empty()) {
      std::ostringstream os;
      os << source << ": " << errors.size() << " configuration error"
         << (errors.size() > 1 ? "s" : "") << ":";
      for (const auto& e : errors) os << "\n  - " << e;
      throw ConfigError(os.str());
    }
  }
  const auto problems = config.validation_errors();
  if (!problems.empty()) {
    std::ostringstream os;
    os << source << ": invalid configuration:";
    for (const auto& p : problems) os << "\n  - " << p;
    throw ConfigError(os.str());
  }
  return config;
}

SimulationConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

std::string config_to_json(const SimulationConfig& c) {
  const EnvironmentConfig& e = c.environment;
  json j;
  j["duration"] = c.duration;
  j["dt"] = c.dt;
  j["ts_orb"] = c.ts_orb;
  j["seed"] = c.seed;
  j["record_log"] = c.record_log;
  j["chief"] = {{"altitude", c.chief.altitude},
                {"inclination_deg", c.chief.inclination_deg},
                {"raan_deg", c.chief.raan_deg},
                {"arg_latitude_deg", c.chief.arg_latitude_deg}};
  j["initial"] = {{"position_error", vec(c.initial.position_error)},
                  {"velocity_error", vec(c.initial.velocity_error)},
                  {"attitude_axis", vec(c.initial.attitude_axis)},
                  {"attitude_angle_deg", c.initial.attitude_angle_deg},
                  {"omega", vec(c.initial.omega)},
                  {"h_wheel", vec(c.initial.h_wheel)}};
  j["controller"] = {
      {"orbit", to_string(c.control.orbit)},
      {"attitude", to_string(c.control.attitude)},
      {"orbit_nftsm", tuning_json(c.control.orbit_nftsm)},
      {"attitude_nftsm", tuning_json(c.control.attitude_nftsm)},
      {"orbit_pd", {{"kp", c.control.orbit_pd.kp}, {"kd", c.control.orbit_pd.kd}}},
      {"attitude_pd", {{"kp", c.control.attitude_pd.kp}, {"kd", c.control.attitude_pd.kd}}},
      {"orbit_lqr",
       {{"q_diag", vec(c.control.orbit_lqr.q_diag)}, {"r_diag", vec(c.control.orbit_lqr.r_diag)}}},
      {"attitude_lqr",
       {{"q_diag", vec(c.control.attitude_lqr.q_diag)},
        {"r_diag", vec(c.control.attitude_lqr.r_diag)}}},
      {"branch_deadband", c.control.branch_deadband},
      {"gain_ceiling_orbit", c.control.gain_ceiling_orbit},
      {"gain_ceiling_attitude", c.control.gain_ceiling_attitude}};
  j["actuator"] = {{"u_max", c.actuator.u_max},
                   {"u_resolution", c.actuator.u_resolution},
                   {"z_masked", c.actuator.z_masked},
                   {"tau_max", c.actuator.tau_max}};
  j["mass"] = {{"nominal", c.mass.nominal}, {"delta_bound", c.mass.delta_bound}};
  j["inertia"] = {{"nominal", mat(c.inertia.nominal)}, {"delta_bound", c.inertia.delta_bound}};
  j["wheel"] = {{"inertia", mat(c.wheel.inertia)}, {"max_torque", c.wheel.max_torque}};
  j["environment"] = {{"j2", e.j2},
                      {"third_body", e.third_body},
                      {"drag", e.drag},
                      {"srp", e.srp},
                      {"gravity_gradient", e.gravity_gradient},
                      {"magnetic", e.magnetic},
                      {"density_ref", e.density_ref},
                      {"altitude_ref", e.altitude_ref},
                      {"scale_height", e.scale_height},
                      {"deputy_drag_area", e.deputy_drag_area},
                      {"deputy_drag_coefficient", e.deputy_drag_coefficient},
                      {"deputy_srp_area", e.deputy_srp_area},
                      {"deputy_reflectivity", e.deputy_reflectivity},
                      {"cp_offset", vec(e.cp_offset)},
                      {"chief",
                       {{"mass", e.chief.mass},
                        {"drag_area", e.chief.drag_area},
                        {"drag_coefficient", e.chief.drag_coefficient},
                        {"srp_area", e.chief.srp_area},
                        {"reflectivity", e.chief.reflectivity}}},
                      {"dipole_magnitude", e.dipole_magnitude},
                      {"dipole_direction", vec(e.dipole_direction)},
                      {"epoch_offset", e.epoch_offset},
                      {"greenwich_angle_at_epoch", e.greenwich_angle_at_epoch},
                      {"force_cap", e.force_cap},
                      {"torque_cap", e.torque_cap}};
  j["uncertainty"] = {{"sample_mass", c.uncertainty.sample_mass},
                      {"sample_inertia", c.uncertainty.sample_inertia},
                      {"random_dipole", c.uncertainty.random_dipole}};
  return j.dump(2) + "\n";
}

void save_config(const SimulationConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config file '" + path + "'");
  out << config_to_json(config);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace ffsim
