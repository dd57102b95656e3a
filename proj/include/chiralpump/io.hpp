#pragma once

#include <cmath>
#include <ostream>
#include <string>

#include <json.hpp>

#include "chiralpump/config.hpp"
#include "chiralpump/dynamics.hpp"
#include "chiralpump/format.hpp"
#include "chiralpump/steadystate.hpp"

namespace chiralpump {

using Json = nlohmann::ordered_json;

/// t_us, per-state populations, epsilon, trace drift, min eigenvalue.
inline void write_timeseries_csv(const TimeSeries& ts, std::ostream& os) {
  os << "t_us";
  for (int s = 0; s < ts.dim; ++s) os << ",P_" << label_name(label_at(s));
  os << ",epsilon,trace_drift,min_eig\n";
  for (std::size_t k = 0; k < ts.size(); ++k) {
    os << fmt_g12(ts.times[k]);
    for (int s = 0; s < ts.dim; ++s)
      os << "," << fmt_g12(ts.populations[static_cast<std::size_t>(s)][k]);
    os << "," << fmt_g12(ts.epsilon[k]) << "," << fmt_g12(ts.trace_drift[k]) << ","
       << fmt_g12(ts.min_eigenvalue[k]) << "\n";
  }
}

namespace detail {

inline Json scenario_meta(const Scenario& sc, const std::string& command) {
  Json meta;
  meta["tool"] = "chiralpump";
  meta["command"] = command;
  meta["preset"] = sc.name;
  meta["dim"] = sc.model.dim();
  Json model;
  model["delta"] = sc.model.delta / two_pi;
  model["omega21"] = sc.model.omega21 / two_pi;
  model["omega32"] = sc.model.omega32 / two_pi;
  model["omega31"] = sc.model.omega31 / two_pi;
  model["phi_rad"] = sc.model.phi;
  model["extended"] = sc.model.extended;
  meta["model_mhz"] = model;
  Json dec;
  dec["gamma31"] = sc.dec.gamma31 / two_pi;
  dec["gamma32"] = sc.dec.gamma32 / two_pi;
  dec["gamma21"] = sc.dec.gamma21 / two_pi;
  dec["gamma_dephase"] = sc.dec.gamma_dephase / two_pi;
  dec["gamma34"] = sc.dec.gamma34 / two_pi;
  dec["gamma41"] = sc.dec.gamma41 / two_pi;
  meta["decoherence_mhz"] = dec;
  Json grid;
  grid["t_start_us"] = sc.grid.t_start;
  grid["t_end_us"] = sc.grid.t_end;
  grid["dt_us"] = sc.grid.dt;
  grid["sample_every"] = sc.grid.sample_every;
  meta["grid"] = grid;
  return meta;
}

inline Json nan_safe(double x) {
  if (std::isnan(x)) return nullptr;
  return x;
}

}  // namespace detail

/// Final excess, time-to-threshold, and diagnostics extrema. Run metadata is
/// confined to the "meta" object and contains no timestamps.
inline Json timeseries_summary(const TimeSeries& ts, const Scenario& sc) {
  Json j;
  j["final_time_us"] = ts.times.back();
  j["final_epsilon"] = detail::nan_safe(ts.epsilon.back());

  double t99 = std::nan("");
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (!std::isnan(ts.epsilon[k]) && ts.epsilon[k] >= 0.99) {
      t99 = ts.times[k];
      break;
    }
  }
  j["time_to_epsilon_0.99_us"] = detail::nan_safe(t99);

  Json pops;
  for (int s = 0; s < ts.dim; ++s)
    pops[label_name(label_at(s))] = ts.populations[static_cast<std::size_t>(s)].back();
  j["final_populations"] = pops;

  double max_trace = 0.0, max_herm = 0.0;
  double min_eig = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    max_trace = std::max(max_trace, ts.trace_drift[k]);
    max_herm = std::max(max_herm, ts.hermiticity_drift[k]);
    min_eig = std::min(min_eig, ts.min_eigenvalue[k]);
  }
  Json diag;
  diag["max_trace_drift"] = max_trace;
  diag["max_hermiticity_drift"] = max_herm;
  diag["min_eigenvalue"] = min_eig;
  j["diagnostics"] = diag;

  j["meta"] = detail::scenario_meta(sc, "evolve");
  return j;
}

/// Stationary state, excess, and solver diagnostics.
inline Json steady_summary(const SteadySolution& sol, const Scenario& sc) {
  Json j;
  j["epsilon"] = enantiomeric_excess(sol.rho);
  j["residual"] = sol.residual;
  j["degenerate"] = false;
  Json labels = Json::array();
  for (int s = 0; s < sol.rho.dim(); ++s) labels.push_back(label_name(label_at(s)));
  j["labels"] = labels;
  Json re = Json::array(), im = Json::array();
  for (int r = 0; r < sol.rho.dim(); ++r) {
    Json rrow = Json::array(), irow = Json::array();
    for (int c = 0; c < sol.rho.dim(); ++c) {
      rrow.push_back(sol.rho.op.m(r, c).real());
      irow.push_back(sol.rho.op.m(r, c).imag());
    }
    re.push_back(rrow);
    im.push_back(irow);
  }
  j["rho_real"] = re;
  j["rho_imag"] = im;
  Json pops;
  for (int s = 0; s < sol.rho.dim(); ++s)
    pops[label_name(label_at(s))] = sol.rho.op.m(s, s).real();
  j["populations"] = pops;
  j["meta"] = detail::scenario_meta(sc, "steady");
  return j;
}

/// Human-readable regime report and effective parameters, frequencies in MHz.
inline void write_report(const ModelParams& m, std::ostream& os) {
  const RegimeReport r = check_selective_condition(m);
  os << "regime report\n";
  os << "  |Delta|/Omega32        = " << fmt_g12(r.ratio_delta_omega32) << "\n";
  os << "  |Delta|/Omega21        = " << fmt_g12(r.ratio_delta_omega21) << "\n";
  os << "  Omega21/Omega31        = " << fmt_g12(r.ratio_omega21_omega31) << "\n";
  os << "  large-detuning ok      = " << (r.large_detuning_ok ? "yes" : "no") << "\n";
  os << "  |phi mod 2pi|          = " << fmt_g12(r.phi_residual) << " rad\n";
  os << "  |Omega31 - Omega32*Omega21/Delta| = " << fmt_g12(r.omega31_residual / two_pi)
     << " MHz\n";
  if (r.rwa_warnings.empty()) {
    os << "  warnings               = none\n";
  } else {
    for (const auto& w : r.rwa_warnings) os << "  warning: " << w << "\n";
  }

  const EffectiveParams e = frohlich_nakajima_transform(m);
  os << "effective parameters (MHz)\n";
  os << "  Lambda        = " << fmt_g12(e.lambda / two_pi) << "\n";
  os << "  Lambda_tilde  = " << fmt_g12(e.lambda_tilde / two_pi) << "\n";
  os << "  Delta_tilde   = " << fmt_g12(e.delta_tilde / two_pi) << "\n";
  os << "  Omega_tilde_L = " << fmt_g12(e.omega_tilde_L.real() / two_pi) << " + "
     << fmt_g12(e.omega_tilde_L.imag() / two_pi) << "i\n";
  os << "  Omega_tilde_R = " << fmt_g12(e.omega_tilde_R.real() / two_pi) << " + "
     << fmt_g12(e.omega_tilde_R.imag() / two_pi) << "i\n";
}

}  // namespace chiralpump
