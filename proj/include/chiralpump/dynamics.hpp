#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "chiralpump/lindblad.hpp"
#include "chiralpump/model.hpp"
#include "chiralpump/observables.hpp"

namespace chiralpump {

/// Fixed-step integration window. Times in us. Every sample_every-th step is
/// recorded (plus the final step). Default dt gives ~500 integration steps per
/// period of the fastest scale in the reference scenarios (Delta = 2pi x 20
/// rad/us), which holds the purity and dt-halving drifts of the classic RK4
/// scheme below 1e-8 over runs of a few hundred us.
struct TimeGrid {
  double t_start = 0.0;
  double t_end = 0.0;
  double dt = 1e-4;
  int sample_every = 1;
};

inline constexpr double default_dt_us = 1e-4;
inline constexpr int default_sample_count = 500;

/// Grid over [0, t_end] with ~target_samples evenly spaced records.
inline TimeGrid make_grid(double t_end, double dt = default_dt_us,
                          int target_samples = default_sample_count) {
  TimeGrid g;
  g.t_end = t_end;
  g.dt = dt;
  const auto steps = static_cast<std::int64_t>(std::llround(t_end / dt));
  g.sample_every = std::max<std::int64_t>(1, steps / std::max(1, target_samples));
  return g;
}

/// Recorded trajectory: per-state populations, enantiomeric excess, and
/// integration diagnostics at each sampled time.
struct TimeSeries {
  int dim = 0;
  std::vector<double> times;
  std::vector<std::vector<double>> populations;  // [state][sample]
  std::vector<double> epsilon;
  std::vector<double> trace_drift;         // |Tr rho - 1|
  std::vector<double> hermiticity_drift;   // max |rho - rho^+|
  std::vector<double> min_eigenvalue;      // of the hermitized state
  DensityMatrix final_state;

  std::size_t size() const { return times.size(); }
};

/// Populations at three read-out states of the reduced model, compared
/// between the full five-level and the reduced effective evolution.
struct DeviationReport {
  double dev_p1L = 0.0;
  double dev_p1R = 0.0;
  double dev_p3 = 0.0;
  double max_deviation = 0.0;
};

namespace detail {

inline double spectral_norm_hermitian(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

inline std::int64_t checked_step_count(const TimeGrid& g) {
  if (g.dt <= 0.0) throw PhysicsError("time step must be positive");
  if (g.t_end <= g.t_start) throw PhysicsError("t_end must exceed t_start");
  if (g.sample_every < 1) throw PhysicsError("sample_every must be >= 1");
  return static_cast<std::int64_t>(std::llround((g.t_end - g.t_start) / g.dt));
}

/// dt * (|H|_2 + sum gamma + gamma~) < 0.1, a deliberately conservative guard
/// for the fixed-step scheme. Violation is an error, not a warning.
inline void check_stability(const TimeGrid& g, double hnorm, double rate_sum) {
  const double product = g.dt * (hnorm + rate_sum);
  if (product >= 0.1)
    throw PhysicsError("time step violates the stability bound: dt*(|H|+rates) = " +
                       std::to_string(product) + " >= 0.1; reduce dt");
}

class SeriesRecorder {
 public:
  SeriesRecorder(TimeSeries& out, int dim) : out_(out) {
    out_.dim = dim;
    out_.populations.assign(static_cast<std::size_t>(dim), {});
  }

  void record(double t, const Matrix& rho) {
    out_.times.push_back(t);
    for (int s = 0; s < out_.dim; ++s)
      out_.populations[static_cast<std::size_t>(s)].push_back(rho(s, s).real());
    out_.epsilon.push_back(enantiomeric_excess_or_nan(rho));
    const double trace_drift = std::abs(rho.trace() - Complex(1.0, 0.0));
    const double herm_drift = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()),
                                             Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    out_.trace_drift.push_back(trace_drift);
    out_.hermiticity_drift.push_back(herm_drift);
    out_.min_eigenvalue.push_back(min_eig);
  }

  /// Abort thresholds are looser than the reporting tolerances so roundoff in
  /// healthy runs never trips them.
  void require_valid(double t) const {
    if (out_.trace_drift.back() > 1e-6 || out_.hermiticity_drift.back() > 1e-6 ||
        out_.min_eigenvalue.back() < -1e-6)
      throw PhysicsError("state validity lost at t = " + std::to_string(t) +
                         " us: trace drift " + std::to_string(out_.trace_drift.back()) +
                         ", hermiticity drift " +
                         std::to_string(out_.hermiticity_drift.back()) +
                         ", min eigenvalue " + std::to_string(out_.min_eigenvalue.back()));
  }

 private:
  TimeSeries& out_;
};

}  // namespace detail

/// Integrates rho' = -i[H, rho] with the classic 4th-order fixed-step scheme.
inline TimeSeries evolve_unitary(const DensityMatrix& rho0, const Operator& h,
                                 const TimeGrid& g) {
  if (rho0.dim() != h.dim()) throw PhysicsError("Hamiltonian/state dimension mismatch");
  const std::int64_t steps = detail::checked_step_count(g);
  detail::check_stability(g, detail::spectral_norm_hermitian(h.m), 0.0);

  TimeSeries out;
  detail::SeriesRecorder rec(out, rho0.dim());

  const Matrix& hm = h.m;
  auto rhs = [&hm](const Matrix& r) -> Matrix {
    return Complex(0.0, -1.0) * (hm * r - r * hm);
  };

  Matrix rho = rho0.op.m;
  rec.record(g.t_start, rho);
  const double dt = g.dt;
  for (std::int64_t k = 0; k < steps; ++k) {
    const Matrix k1 = rhs(rho);
    const Matrix k2 = rhs(rho + (0.5 * dt) * k1);
    const Matrix k3 = rhs(rho + (0.5 * dt) * k2);
    const Matrix k4 = rhs(rho + dt * k3);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if ((k + 1) % g.sample_every == 0 || k + 1 == steps)
      rec.record(g.t_start + static_cast<double>(k + 1) * dt, rho);
  }
  out.final_state = DensityMatrix{Operator(rho)};
  return out;
}

/// Integrates the full master equation rho' = -i[H, rho] + L rho through the
/// vectorized Liouvillian. Aborts with a diagnostic if the sampled state loses
/// validity beyond tolerance.
inline TimeSeries evolve_master(const DensityMatrix& rho0, const Operator& h,
                                const DecoherenceParams& d, const TimeGrid& g) {
  if (rho0.dim() != h.dim()) throw PhysicsError("Hamiltonian/state dimension mismatch");
  const std::int64_t steps = detail::checked_step_count(g);
  detail::check_stability(g, detail::spectral_norm_hermitian(h.m),
                          d.relaxation_sum(h.dim()) + d.gamma_dephase);

  const Liouvillian L = build_liouvillian(h, d);
  const int dim = h.dim();

  TimeSeries out;
  detail::SeriesRecorder rec(out, dim);

  Vector v = vectorize(rho0.op.m);
  rec.record(g.t_start, rho0.op.m);
  rec.require_valid(g.t_start);
  const double dt = g.dt;
  Vector k1(v.size()), k2(v.size()), k3(v.size()), k4(v.size());
  for (std::int64_t k = 0; k < steps; ++k) {
    k1.noalias() = L.m * v;
    k2.noalias() = L.m * (v + (0.5 * dt) * k1);
    k3.noalias() = L.m * (v + (0.5 * dt) * k2);
    k4.noalias() = L.m * (v + dt * k3);
    v += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if ((k + 1) % g.sample_every == 0 || k + 1 == steps) {
      const double t = g.t_start + static_cast<double>(k + 1) * dt;
      rec.record(t, unvectorize(v, dim));
      rec.require_valid(t);
    }
  }
  out.final_state = DensityMatrix{Operator(unvectorize(v, dim))};
  return out;
}

/// Evolves the racemic initial state under the full Hamiltonian and under the
/// reduced effective one (no decoherence in either), and reports the largest
/// population difference seen at any sample for |1_L>, |1_R>, |3>.
inline DeviationReport compare_full_vs_effective(const ModelParams& p, const TimeGrid& g) {
  detail::require_nonzero_delta(p, "the full-vs-effective comparison");
  const DensityMatrix rho0 = DensityMatrix::racemic(p.dim());
  const TimeSeries full = evolve_unitary(rho0, build_hamiltonian(p), g);
  const TimeSeries reduced = evolve_unitary(rho0, build_reduced_hamiltonian(p), g);

  DeviationReport rep;
  const auto max_abs_diff = [&](StateLabel s) {
    const auto& a = full.populations[static_cast<std::size_t>(index_of(s))];
    const auto& b = reduced.populations[static_cast<std::size_t>(index_of(s))];
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
  };
  rep.dev_p1L = max_abs_diff(StateLabel::G_L);
  rep.dev_p1R = max_abs_diff(StateLabel::G_R);
  rep.dev_p3 = max_abs_diff(StateLabel::E);
  rep.max_deviation = std::max({rep.dev_p1L, rep.dev_p1R, rep.dev_p3});
  return rep;
}

}  // namespace chiralpump
