#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "chiralpump/dynamics.hpp"
#include "chiralpump/sweep.hpp"

namespace chiralpump {

/// A fully specified simulation scenario. Defaults reproduce the reference
/// optical-pumping run (fig3): paper-typical couplings with
/// gamma31 = gamma32 = 2pi x 0.1 and gamma21 = gamma~ = 2pi x 1 rad/us.
struct Scenario {
  std::string name = "custom";
  ModelParams model;
  DecoherenceParams dec;
  TimeGrid grid;
};

/// Sweep description as read from a config file; resolved into a SweepSpec
/// against the scenario's model/decoherence base.
struct SweepSection {
  SweepParam axis = SweepParam::GammaUniform;
  double grid_min_mhz = 1e-3;
  double grid_max_mhz = 1e2;
  int points = 25;
  bool log_scale = true;
  SweepParam family_param = SweepParam::GammaDephase;
  std::vector<double> family_values_mhz = {0.01, 0.1, 1.0};
  bool bind_omega31 = false;
};

namespace detail {

inline ModelParams paper_model(bool extended = false) {
  ModelParams m = ModelParams::from_mhz(20.0, 1.0, 1.0, 0.0, 0.0, extended);
  // Selective-condition value; computed (not quoted) so the residual is an
  // exact zero.
  m.omega31 = m.omega32 * m.omega21 / m.delta;
  return m;
}

}  // namespace detail

/// Named scenarios behind `evolve`/`steady` presets. fig2 is the unitary
/// chiral-state-selective excitation window; fig3 the optical-pumping run
/// (extended to 260 us, by which the excess has converged); fig6a the
/// 7-level leakage configuration at gamma34 = gamma0.
inline Scenario scenario_preset(const std::string& name) {
  Scenario s;
  s.name = name;
  if (name == "fig2") {
    s.model = detail::paper_model();
    s.dec = DecoherenceParams{};
    s.grid = make_grid(50.0);
    return s;
  }
  if (name == "fig3") {
    s.model = detail::paper_model();
    s.dec = DecoherenceParams::from_mhz(0.1, 0.1, 1.0, 1.0);
    // 520 records: samples land exactly on the 0.5 us grid, including t = 140.
    s.grid = make_grid(260.0, default_dt_us, 520);
    return s;
  }
  if (name == "fig6a") {
    s.model = detail::paper_model(true);
    s.dec = DecoherenceParams::from_mhz(0.1, 0.1, 1.0, 1.0, 1.0, 1e-5);
    s.grid = make_grid(260.0, default_dt_us, 520);
    return s;
  }
  throw ConfigError("unknown scenario preset '" + name +
                    "' (expected fig2, fig3, or fig6a; fig4a/fig4b/fig5/fig6a/fig6b "
                    "are sweep presets)");
}

inline Scenario default_scenario() {
  Scenario s = scenario_preset("fig3");
  s.name = "custom";
  return s;
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline double parse_double(const std::string& key, const std::string& raw) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(raw, &pos);
    if (pos != raw.size()) throw ConfigError("");
    return v;
  } catch (...) {
    throw ConfigError("cannot parse value '" + raw + "' for key '" + key + "'");
  }
}

/// Frequencies accept the symbolic constant gamma0 = 1 MHz:
/// "0.05", "gamma0", "100*gamma0", "gamma0*0.01".
inline double parse_frequency_mhz(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (v == "gamma0") return 1.0;
  const auto star = v.find('*');
  if (star != std::string::npos) {
    const std::string a = trim(v.substr(0, star));
    const std::string b = trim(v.substr(star + 1));
    if (a == "gamma0") return parse_double(key, b);
    if (b == "gamma0") return parse_double(key, a);
    throw ConfigError("cannot parse frequency '" + raw + "' for key '" + key +
                      "' (use <number>, gamma0, or <number>*gamma0)");
  }
  return parse_double(key, v);
}

inline bool parse_bool(const std::string& key, const std::string& raw) {
  const std::string v = lower(trim(raw));
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("cannot parse boolean '" + raw + "' for key '" + key + "'");
}

inline int parse_int(const std::string& key, const std::string& raw) {
  const double v = parse_double(key, raw);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw ConfigError("key '" + key + "' expects an integer, got '" + raw + "'");
  return i;
}

inline std::vector<double> parse_frequency_list(const std::string& key,
                                                const std::string& raw) {
  std::vector<double> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_frequency_mhz(key, item));
  }
  if (out.empty()) throw ConfigError("empty list for key '" + key + "'");
  return out;
}

}  // namespace detail

/// Scenario plus, when a [sweep] section or sweep keys are present, the sweep
/// description.
struct ConfigState {
  Scenario scenario;
  SweepSection sweep;
  bool has_sweep = false;
};

/// Applies one key=value pair. Keys are unique across sections, so both the
/// section-scoped config entries and the bare `--set key=value` overrides
/// funnel through here.
inline void apply_key(ConfigState& st, const std::string& key, const std::string& value) {
  using detail::parse_bool;
  using detail::parse_double;
  using detail::parse_frequency_list;
  using detail::parse_frequency_mhz;
  using detail::parse_int;

  ModelParams& m = st.scenario.model;
  DecoherenceParams& d = st.scenario.dec;
  TimeGrid& g = st.scenario.grid;

  // [model] (frequencies in linear MHz, phases in rad)
  if (key == "delta") { m.delta = mhz(parse_frequency_mhz(key, value)); return; }
  if (key == "omega21") { m.omega21 = mhz(parse_frequency_mhz(key, value)); return; }
  if (key == "omega32") { m.omega32 = mhz(parse_frequency_mhz(key, value)); return; }
  if (key == "omega31") { m.omega31 = mhz(parse_frequency_mhz(key, value)); return; }
  if (key == "phi") { m.phi = parse_double(key, value); return; }
  if (key == "extended") { m.extended = parse_bool(key, value); return; }

  // [decoherence] (MHz)
  if (key == "gamma31") { d.gamma31 = mhz(parse_frequency_mhz(key, value)); return; }
  if (key == "gamma32") { d.gamma32 = mhz(parse_frequency_mhz(key, value)); return; }
  if (key == "gamma21") { d.gamma21 = mhz(parse_frequency_mhz(key, value)); return; }
  if (key == "gamma_dephase") { d.gamma_dephase = mhz(parse_frequency_mhz(key, value)); return; }
  if (key == "gamma34") { d.gamma34 = mhz(parse_frequency_mhz(key, value)); return; }
  if (key == "gamma41") { d.gamma41 = mhz(parse_frequency_mhz(key, value)); return; }

  // [grid] (us)
  if (key == "t_start") { g.t_start = parse_double(key, value); return; }
  if (key == "t_end") { g.t_end = parse_double(key, value); return; }
  if (key == "dt") { g.dt = parse_double(key, value); return; }
  if (key == "sample_every") { g.sample_every = parse_int(key, value); return; }
  if (key == "samples") {
    const int n = parse_int(key, value);
    TimeGrid fresh = make_grid(g.t_end - g.t_start, g.dt, n);
    g.sample_every = fresh.sample_every;
    return;
  }

  // [sweep]
  if (key == "axis") { st.sweep.axis = sweep_param_from_name(detail::trim(value)); st.has_sweep = true; return; }
  if (key == "grid_min") { st.sweep.grid_min_mhz = parse_frequency_mhz(key, value); st.has_sweep = true; return; }
  if (key == "grid_max") { st.sweep.grid_max_mhz = parse_frequency_mhz(key, value); st.has_sweep = true; return; }
  if (key == "points") { st.sweep.points = parse_int(key, value); st.has_sweep = true; return; }
  if (key == "scale") {
    const std::string v = detail::lower(detail::trim(value));
    if (v == "log") st.sweep.log_scale = true;
    else if (v == "linear") st.sweep.log_scale = false;
    else throw ConfigError("key 'scale' expects log or linear, got '" + value + "'");
    st.has_sweep = true;
    return;
  }
  if (key == "family") { st.sweep.family_param = sweep_param_from_name(detail::trim(value)); st.has_sweep = true; return; }
  if (key == "family_values") { st.sweep.family_values_mhz = parse_frequency_list(key, value); st.has_sweep = true; return; }
  if (key == "bind_omega31") { st.sweep.bind_omega31 = parse_bool(key, value); st.has_sweep = true; return; }

  throw ConfigError("unknown config key '" + key + "'");
}

/// Flat key-value text with [model], [decoherence], [grid], [sweep] sections.
/// '#' and ';' start comments. Section headers only gate which keys are
/// expected; keys themselves are globally unique.
inline void apply_config_text(ConfigState& st, std::istream& in,
                              const std::string& origin) {
  static const std::map<std::string, std::vector<std::string>> section_keys = {
      {"model", {"delta", "omega21", "omega32", "omega31", "phi", "extended"}},
      {"decoherence",
       {"gamma31", "gamma32", "gamma21", "gamma_dephase", "gamma34", "gamma41"}},
      {"grid", {"t_start", "t_end", "dt", "sample_every", "samples"}},
      {"sweep",
       {"axis", "grid_min", "grid_max", "points", "scale", "family", "family_values",
        "bind_omega31"}},
  };
  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section header");
      section = detail::lower(detail::trim(line.substr(1, line.size() - 2)));
      if (section_keys.find(section) == section_keys.end())
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": unknown section [" +
                          section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = detail::lower(detail::trim(line.substr(0, eq)));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (!section.empty()) {
      const auto& allowed = section_keys.at(section);
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": key '" + key +
                          "' does not belong to section [" + section + "]");
    }
    try {
      apply_key(st, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

inline void apply_config_file(ConfigState& st, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  apply_config_text(st, in, path);
  st.scenario.name = "custom";
}

/// `--set key=value` override.
inline void apply_override(ConfigState& st, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override '" + assignment + "' is not of the form key=value");
  const std::string key = detail::lower(detail::trim(assignment.substr(0, eq)));
  const std::string value = detail::trim(assignment.substr(eq + 1));
  apply_key(st, key, value);
}

/// Resolves the sweep description against the scenario base parameters.
inline SweepSpec make_sweep_spec(const ConfigState& st) {
  SweepSpec spec;
  spec.name = st.scenario.name;
  spec.axis = st.sweep.axis;
  spec.grid_mhz = st.sweep.log_scale
                      ? log_grid(st.sweep.grid_min_mhz, st.sweep.grid_max_mhz, st.sweep.points)
                      : linear_grid(st.sweep.grid_min_mhz, st.sweep.grid_max_mhz,
                                    st.sweep.points);
  spec.family_param = st.sweep.family_param;
  spec.family_values_mhz = st.sweep.family_values_mhz;
  spec.bind_omega31 = st.sweep.bind_omega31;
  spec.base_model = st.scenario.model;
  spec.base_dec = st.scenario.dec;
  return spec;
}

}  // namespace chiralpump
