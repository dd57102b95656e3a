#pragma once

#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "chiralpump/format.hpp"
#include "chiralpump/steadystate.hpp"

namespace chiralpump {

/// Parameters a sweep can move. GammaUniform sets gamma31 = gamma32 =
/// gamma21 = gamma.
enum class SweepParam { GammaUniform, GammaDephase, Delta, Gamma34 };

inline const char* sweep_param_name(SweepParam p) {
  switch (p) {
    case SweepParam::GammaUniform: return "gamma";
    case SweepParam::GammaDephase: return "gamma_dephase";
    case SweepParam::Delta: return "delta";
    case SweepParam::Gamma34: return "gamma34";
  }
  throw ConfigError("invalid sweep parameter");
}

inline SweepParam sweep_param_from_name(const std::string& name) {
  if (name == "gamma" || name == "gamma_uniform") return SweepParam::GammaUniform;
  if (name == "gamma_dephase") return SweepParam::GammaDephase;
  if (name == "delta") return SweepParam::Delta;
  if (name == "gamma34") return SweepParam::Gamma34;
  throw ConfigError("unknown sweep parameter '" + name +
                    "' (expected gamma, gamma_dephase, delta, or gamma34)");
}

/// Grid values and family values are linear MHz, like the configs.
struct SweepSpec {
  std::string name = "custom";
  SweepParam axis = SweepParam::GammaUniform;
  std::vector<double> grid_mhz;
  SweepParam family_param = SweepParam::GammaDephase;
  std::vector<double> family_values_mhz;
  bool bind_omega31 = false;
  ModelParams base_model;
  DecoherenceParams base_dec;
};

struct SweepCell {
  double eps = std::numeric_limits<double>::quiet_NaN();
  double null_residual = std::numeric_limits<double>::quiet_NaN();
  double selective_residual = std::numeric_limits<double>::quiet_NaN();
  bool degenerate = false;
  bool error = false;
  std::string status = "ok";
};

struct SweepTable {
  std::string axis_name;                     // e.g. "delta_mhz"
  std::vector<double> axis_mhz;
  std::vector<std::string> family_labels;    // e.g. "gamma_dephase=0.01"
  std::vector<std::vector<SweepCell>> cells;  // [family][point]

  const SweepCell& cell(std::size_t family, std::size_t point) const {
    return cells[family][point];
  }

  /// One row per grid point; per-family epsilon first, then diagnostics.
  /// Errors appear as nan plus a non-"ok" status, never as missing rows.
  void write_csv(std::ostream& os) const {
    os << axis_name;
    for (const auto& f : family_labels) os << ",eps[" << f << "]";
    for (const auto& f : family_labels) os << ",null_residual[" << f << "]";
    for (const auto& f : family_labels) os << ",selective_residual[" << f << "]";
    for (const auto& f : family_labels) os << ",status[" << f << "]";
    os << "\n";
    for (std::size_t i = 0; i < axis_mhz.size(); ++i) {
      os << fmt_g12(axis_mhz[i]);
      for (const auto& fam : cells) os << "," << fmt_g12(fam[i].eps);
      for (const auto& fam : cells) os << "," << fmt_g12(fam[i].null_residual);
      for (const auto& fam : cells) os << "," << fmt_g12(fam[i].selective_residual);
      for (const auto& fam : cells) os << "," << fam[i].status;
      os << "\n";
    }
  }
};

/// n log-spaced points with exact endpoints.
inline std::vector<double> log_grid(double lo_mhz, double hi_mhz, int n) {
  if (!(lo_mhz > 0.0) || !(hi_mhz > lo_mhz) || n < 2)
    throw ConfigError("log grid needs 0 < lo < hi and n >= 2");
  std::vector<double> g(static_cast<std::size_t>(n));
  const double ratio = hi_mhz / lo_mhz;
  for (int i = 0; i < n; ++i)
    g[static_cast<std::size_t>(i)] =
        lo_mhz * std::pow(ratio, static_cast<double>(i) / static_cast<double>(n - 1));
  g.front() = lo_mhz;
  g.back() = hi_mhz;
  return g;
}

inline std::vector<double> linear_grid(double lo_mhz, double hi_mhz, int n) {
  if (!(hi_mhz > lo_mhz) || n < 2) throw ConfigError("linear grid needs lo < hi and n >= 2");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    g[static_cast<std::size_t>(i)] =
        lo_mhz + (hi_mhz - lo_mhz) * static_cast<double>(i) / static_cast<double>(n - 1);
  g.front() = lo_mhz;
  g.back() = hi_mhz;
  return g;
}

namespace detail {

inline void apply_sweep_value(SweepParam param, double value_mhz, ModelParams& m,
                              DecoherenceParams& d) {
  const double w = mhz(value_mhz);
  switch (param) {
    case SweepParam::GammaUniform:
      d.gamma31 = d.gamma32 = d.gamma21 = w;
      return;
    case SweepParam::GammaDephase:
      d.gamma_dephase = w;
      return;
    case SweepParam::Delta:
      m.delta = w;
      return;
    case SweepParam::Gamma34:
      d.gamma34 = w;
      return;
  }
}

inline void validate_spec(const SweepSpec& spec) {
  if (spec.grid_mhz.size() < 1) throw ConfigError("sweep grid is empty");
  for (std::size_t i = 1; i < spec.grid_mhz.size(); ++i)
    if (!(spec.grid_mhz[i] > spec.grid_mhz[i - 1]))
      throw ConfigError("sweep grid must be strictly increasing");
  if (spec.axis != SweepParam::Delta)
    for (double v : spec.grid_mhz)
      if (!(v > 0.0)) throw ConfigError("rate-axis grid values must be positive");
  if (spec.family_values_mhz.empty()) throw ConfigError("sweep needs at least one family");
}

}  // namespace detail

/// Runs the steady-state solver over grid x families. Per-point failures are
/// recorded in the table and never abort the sweep. Row order is fixed by the
/// spec, independent of execution order.
inline SweepTable run_sweep(const SweepSpec& spec) {
  detail::validate_spec(spec);
  SweepTable table;
  table.axis_name = std::string(sweep_param_name(spec.axis)) + "_mhz";
  table.axis_mhz = spec.grid_mhz;
  for (double fv : spec.family_values_mhz)
    table.family_labels.push_back(std::string(sweep_param_name(spec.family_param)) + "=" +
                                  fmt_g(fv));

  table.cells.assign(spec.family_values_mhz.size(),
                     std::vector<SweepCell>(spec.grid_mhz.size()));
  for (std::size_t fi = 0; fi < spec.family_values_mhz.size(); ++fi) {
    for (std::size_t gi = 0; gi < spec.grid_mhz.size(); ++gi) {
      ModelParams m = spec.base_model;
      DecoherenceParams d = spec.base_dec;
      detail::apply_sweep_value(spec.family_param, spec.family_values_mhz[fi], m, d);
      detail::apply_sweep_value(spec.axis, spec.grid_mhz[gi], m, d);
      SweepCell& cell = table.cells[fi][gi];
      try {
        if (spec.bind_omega31) {
          if (m.delta == 0.0) throw PhysicsError("cannot bind omega31 at Delta = 0");
          m.omega31 = m.omega32 * m.omega21 / m.delta;
        }
        const RegimeReport rr = check_selective_condition(m);
        cell.selective_residual = std::max(rr.phi_residual, rr.omega31_residual);
        const SteadySolution sol = steady_state(build_hamiltonian(m), d);
        cell.eps = enantiomeric_excess(sol.rho);
        cell.null_residual = sol.residual;
      } catch (const DegenerateSteadyStateError& e) {
        cell.degenerate = true;
        cell.error = true;
        cell.status = "degenerate:" + std::to_string(e.null_dimension());
      } catch (const PhysicsError&) {
        cell.error = true;
        cell.status = "error";
      }
    }
  }
  return table;
}

/// Figure presets. gamma0 = 2pi x 1 MHz throughout; grids default to 25
/// log-spaced points, [1e-3, 1e2] MHz for rate axes and [10, 200] MHz for
/// detuning axes.
inline SweepSpec sweep_preset(const std::string& name) {
  SweepSpec s;
  s.name = name;
  // Common base: Delta = 2pi x 20, Omega21 = Omega32 = 2pi x 1 rad/us, phi = 0,
  // Omega31 at the selective-condition value Omega32*Omega21/Delta.
  s.base_model = ModelParams::from_mhz(20.0, 1.0, 1.0, 0.0, 0.0, false);
  s.base_model.omega31 = s.base_model.omega32 * s.base_model.omega21 / s.base_model.delta;
  s.base_dec = DecoherenceParams{};

  if (name == "fig4a") {
    s.axis = SweepParam::GammaUniform;
    s.grid_mhz = log_grid(1e-3, 1e2, 25);
    s.family_param = SweepParam::GammaDephase;
    s.family_values_mhz = {0.01, 0.1, 1.0};
    return s;
  }
  if (name == "fig4b") {
    s.axis = SweepParam::GammaDephase;
    s.grid_mhz = log_grid(1e-3, 1e2, 25);
    s.family_param = SweepParam::GammaUniform;
    s.family_values_mhz = {0.1, 1.0, 10.0};
    return s;
  }
  if (name == "fig5") {
    s.axis = SweepParam::Delta;
    s.grid_mhz = log_grid(10.0, 200.0, 25);
    s.family_param = SweepParam::GammaUniform;
    s.family_values_mhz = {1.0, 10.0, 100.0};
    s.base_dec.gamma_dephase = mhz(1.0);
    s.bind_omega31 = true;
    return s;
  }
  if (name == "fig6a" || name == "fig6b") {
    s.base_model.extended = true;
    s.base_dec = DecoherenceParams::from_mhz(0.1, 0.1, 1.0, 1.0, 1.0, 1e-5);
    s.bind_omega31 = true;
    if (name == "fig6a") {
      s.axis = SweepParam::Gamma34;
      s.grid_mhz = log_grid(1e-3, 1e2, 25);
      s.family_param = SweepParam::Delta;
      s.family_values_mhz = {20.0, 40.0, 80.0};
    } else {
      s.axis = SweepParam::Delta;
      s.grid_mhz = log_grid(10.0, 200.0, 25);
      s.family_param = SweepParam::Gamma34;
      s.family_values_mhz = {0.1, 1.0, 10.0};
    }
    return s;
  }
  throw ConfigError("unknown sweep preset '" + name +
                    "' (expected fig4a, fig4b, fig5, fig6a, or fig6b)");
}

}  // namespace chiralpump
