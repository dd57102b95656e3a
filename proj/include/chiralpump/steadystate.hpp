#pragma once

#include <Eigen/SVD>
#include <string>

#include "chiralpump/lindblad.hpp"
#include "chiralpump/model.hpp"
#include "chiralpump/observables.hpp"

namespace chiralpump {

struct SteadySolution {
  DensityMatrix rho;
  double residual = 0.0;  // max |L vec(rho)| after normalization
};

namespace detail {

/// Singular values below 1e-10 x (largest) count as zero; robust rank
/// detection at these sizes (dim^2 <= 49).
inline constexpr double null_space_rtol = 1e-10;

struct NullSpace {
  Matrix basis;  // columns: right singular vectors with ~zero singular value
  int dimension = 0;
};

inline NullSpace liouvillian_null_space(const Liouvillian& L) {
  Eigen::JacobiSVD<Matrix> svd(L.m, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double threshold = null_space_rtol * sv(0);
  int count = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) < threshold) ++count;
  NullSpace ns;
  ns.dimension = count;
  ns.basis = svd.matrixV().rightCols(count);
  return ns;
}

inline SteadySolution finalize_steady_state(const Liouvillian& L, const Vector& raw) {
  Matrix rho = unvectorize(raw, L.dim);
  // The SVD fixes the null vector only up to a global complex phase; rotate it
  // so the trace is real and positive, otherwise hermitizing can cancel the
  // state instead of cleaning it.
  const Complex tr_raw = rho.trace();
  if (std::abs(tr_raw) < 1e-12)
    throw PhysicsError("stationary null vector is traceless; no density matrix "
                       "representative");
  rho *= std::conj(tr_raw) / std::abs(tr_raw);
  rho = 0.5 * (rho + rho.adjoint());
  rho /= rho.trace().real();
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-8)
    throw PhysicsError("no positive-semidefinite steady state within tolerance: "
                       "min eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
  SteadySolution sol{DensityMatrix{Operator(rho)}, 0.0};
  sol.residual = (L.m * vectorize(rho)).cwiseAbs().maxCoeff();
  return sol;
}

}  // namespace detail

/// Solves -i[H, rho] + L rho = 0 for the unique unit-trace Hermitian PSD
/// stationary state. A null space of dimension != 1 is reported as an error,
/// never silently resolved.
inline SteadySolution steady_state(const Operator& h, const DecoherenceParams& d) {
  if (!d.any_dissipation(h.dim()))
    throw PhysicsError("steady state requires at least one dissipative rate > 0");
  const Liouvillian L = build_liouvillian(h, d);
  const detail::NullSpace ns = detail::liouvillian_null_space(L);
  if (ns.dimension != 1)
    throw DegenerateSteadyStateError(
        ns.dimension, "Liouvillian null space has dimension " +
                          std::to_string(ns.dimension) + " (expected 1); the stationary "
                          "state is not unique");
  return detail::finalize_steady_state(L, ns.basis.col(0));
}

/// Degeneracy override: projects a reference state onto the stationary
/// subspace and returns the trace-normalized projection. Intended for use
/// with a long-time integrated state as the reference.
inline SteadySolution steady_state_near(const Operator& h, const DecoherenceParams& d,
                                        const DensityMatrix& reference) {
  if (h.dim() != reference.dim())
    throw PhysicsError("Hamiltonian/reference dimension mismatch");
  const Liouvillian L = build_liouvillian(h, d);
  const detail::NullSpace ns = detail::liouvillian_null_space(L);
  if (ns.dimension == 0)
    throw PhysicsError("no stationary subspace found within tolerance");
  const Vector proj = ns.basis * (ns.basis.adjoint() * vectorize(reference.op.m));
  if (proj.norm() < 1e-12)
    throw PhysicsError("reference state has no component in the stationary subspace");
  return detail::finalize_steady_state(L, proj);
}

/// Enantiomeric excess of the stationary state for the given model.
inline double steady_epsilon(const ModelParams& p, const DecoherenceParams& d) {
  const SteadySolution sol = steady_state(build_hamiltonian(p), d);
  return enantiomeric_excess(sol.rho);
}

}  // namespace chiralpump
