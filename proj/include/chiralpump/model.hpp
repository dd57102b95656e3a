#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "chiralpump/hilbert.hpp"

namespace chiralpump {

/// Physical knobs of the double-Delta scheme. All frequency-like fields are
/// angular (rad/us); configs and presets quote linear MHz and convert with
/// from_mhz. phi is the overall loop phase of the left-handed sub-structure;
/// the right-handed one carries phi + pi.
struct ModelParams {
  double delta = 0.0;                       // mediate-state detuning
  double omega21 = 0.0;                     // |1_Q> <-> |2_Q| coupling
  double omega32 = 0.0;                     // |2_Q> <-> |3>  coupling
  double omega31 = 0.0;                     // |1_Q> <-> |3>  coupling magnitude
  double phi = 0.0;                         // rad
  bool extended = false;                    // include |4_L>, |4_R>

  int dim() const { return extended ? 7 : 5; }

  static ModelParams from_mhz(double delta_mhz, double omega21_mhz, double omega32_mhz,
                              double omega31_mhz, double phi_rad, bool extended = false) {
    return ModelParams{mhz(delta_mhz), mhz(omega21_mhz), mhz(omega32_mhz),
                       mhz(omega31_mhz), phi_rad, extended};
  }
};

/// Second-order effective parameters: Lambda = -Omega32^2/Delta,
/// Lambda~ = -Omega21^2/Delta, Delta~ = Delta - Lambda - Lambda~, and the
/// chirality-dependent effective couplings
/// Omega~_Q = Omega31 e^{i phi_Q} - Omega32 Omega21 / Delta.
struct EffectiveParams {
  double lambda = 0.0;
  double lambda_tilde = 0.0;
  double delta_tilde = 0.0;
  Complex omega_tilde_L{0.0, 0.0};
  Complex omega_tilde_R{0.0, 0.0};
};

/// Parameter-regime diagnostics: large-detuning margins, residuals of the
/// chiral-state-selective condition (phi = 0, Omega31 = Omega32 Omega21 / Delta),
/// and warnings for couplings beyond the experimentally available range.
struct RegimeReport {
  double ratio_delta_omega32 = 0.0;
  double ratio_delta_omega21 = 0.0;
  double ratio_omega21_omega31 = 0.0;
  bool large_detuning_ok = false;
  double phi_residual = 0.0;      // distance of phi from 0 mod 2pi, in [0, pi]
  double omega31_residual = 0.0;  // |Omega31 - Omega32 Omega21 / Delta|, rad/us
  std::vector<std::string> rwa_warnings;
};

namespace detail {

inline void require_nonnegative_couplings(const ModelParams& p) {
  if (p.omega21 < 0.0 || p.omega32 < 0.0 || p.omega31 < 0.0)
    throw PhysicsError("coupling strengths Omega_ij must be non-negative");
}

inline void require_nonzero_delta(const ModelParams& p, const char* what) {
  if (p.delta == 0.0)
    throw PhysicsError(std::string(what) + " is singular at Delta = 0");
}

/// e^{i phi_Q} with phi_L = phi and phi_R = phi + pi, the latter evaluated as
/// -e^{i phi} so the pi offset is exact.
inline Complex chirality_phase_factor(const ModelParams& p, Chirality q) {
  const Complex f = std::exp(Complex(0.0, p.phi));
  return q == Chirality::Left ? f : -f;
}

}  // namespace detail

/// Interaction-picture Hamiltonian of the five-level double-Delta scheme.
/// Per chirality Q: Delta on |2_Q>, couplings Omega21 (1-2), Omega32 (2-3)
/// and Omega31 e^{i phi_Q} (1-3), with phi_L = phi, phi_R = phi + pi.
/// With extended = true, the same block embeds in dim 7; the leakage states
/// carry no drive.
inline Operator build_hamiltonian(const ModelParams& p) {
  detail::require_nonnegative_couplings(p);
  Operator h(p.dim());
  const StateLabel grounds[2] = {StateLabel::G_L, StateLabel::G_R};
  const StateLabel mediates[2] = {StateLabel::M_L, StateLabel::M_R};
  const Chirality sides[2] = {Chirality::Left, Chirality::Right};
  for (int k = 0; k < 2; ++k) {
    const StateLabel g = grounds[k];
    const StateLabel m2 = mediates[k];
    h.at(m2, m2) += p.delta;
    const Complex c21(p.omega21, 0.0);
    const Complex c32(p.omega32, 0.0);
    const Complex c31 = p.omega31 * detail::chirality_phase_factor(p, sides[k]);
    h.at(g, m2) += c21;
    h.at(m2, g) += std::conj(c21);
    h.at(m2, StateLabel::E) += c32;
    h.at(StateLabel::E, m2) += std::conj(c32);
    h.at(g, StateLabel::E) += c31;
    h.at(StateLabel::E, g) += std::conj(c31);
  }
  return h;
}

/// Anti-Hermitian generator S = (1/Delta) sum_Q (Omega21 |1_Q><2_Q| +
/// Omega32 |3><2_Q| - H.c.) of the Froehlich-Nakajima transformation.
/// Satisfies [H0, S] + H1 = 0 with H0 the detuning term and H1 the
/// mediate-state couplings.
inline Operator build_s_operator(const ModelParams& p) {
  detail::require_nonnegative_couplings(p);
  detail::require_nonzero_delta(p, "the Froehlich-Nakajima generator");
  Operator s(p.dim());
  const StateLabel grounds[2] = {StateLabel::G_L, StateLabel::G_R};
  const StateLabel mediates[2] = {StateLabel::M_L, StateLabel::M_R};
  for (int k = 0; k < 2; ++k) {
    s.at(grounds[k], mediates[k]) += p.omega21 / p.delta;
    s.at(StateLabel::E, mediates[k]) += p.omega32 / p.delta;
  }
  Operator out(p.dim());
  out.m = s.m - s.m.adjoint();
  return out;
}

inline EffectiveParams frohlich_nakajima_transform(const ModelParams& p) {
  detail::require_nonnegative_couplings(p);
  detail::require_nonzero_delta(p, "the effective-parameter transform");
  EffectiveParams e;
  e.lambda = -p.omega32 * p.omega32 / p.delta;
  e.lambda_tilde = -p.omega21 * p.omega21 / p.delta;
  e.delta_tilde = p.delta - e.lambda - e.lambda_tilde;
  const double raman = p.omega32 * p.omega21 / p.delta;
  e.omega_tilde_L = p.omega31 * detail::chirality_phase_factor(p, Chirality::Left) - raman;
  e.omega_tilde_R = p.omega31 * detail::chirality_phase_factor(p, Chirality::Right) - raman;
  return e;
}

/// Second-order transformed Hamiltonian H' = H0 + [H1, S]/2 + H2 in closed
/// form: Delta~ on the mediate states, a -Lambda |2_L><2_R| + H.c. cross
/// coupling, 2 Lambda on |3>, and Lambda~ / Omega~_Q on the ground sector.
/// (Expanding the commutator gives the cross term with -Lambda; the exact
/// e^{-S} H e^{S} conjugation confirms that sign.)
inline Operator build_transformed_hamiltonian(const ModelParams& p) {
  const EffectiveParams e = frohlich_nakajima_transform(p);
  Operator h(p.dim());
  h.at(StateLabel::M_L, StateLabel::M_L) = e.delta_tilde;
  h.at(StateLabel::M_R, StateLabel::M_R) = e.delta_tilde;
  h.at(StateLabel::M_L, StateLabel::M_R) = -e.lambda;
  h.at(StateLabel::M_R, StateLabel::M_L) = -e.lambda;
  h.at(StateLabel::E, StateLabel::E) = 2.0 * e.lambda;
  h.at(StateLabel::G_L, StateLabel::G_L) = e.lambda_tilde;
  h.at(StateLabel::G_R, StateLabel::G_R) = e.lambda_tilde;
  h.at(StateLabel::G_L, StateLabel::E) = e.omega_tilde_L;
  h.at(StateLabel::E, StateLabel::G_L) = std::conj(e.omega_tilde_L);
  h.at(StateLabel::G_R, StateLabel::E) = e.omega_tilde_R;
  h.at(StateLabel::E, StateLabel::G_R) = std::conj(e.omega_tilde_R);
  return h;
}

/// Reduced Hamiltonian after adiabatic elimination of the mediate states:
/// 2 Lambda |3><3| + sum_Q [Lambda~ |1_Q><1_Q| + (Omega~_Q |1_Q><3| + H.c.)].
/// Lives on the {|1_L>, |1_R>, |3>} block, embedded at full dimension with
/// zero rows/columns elsewhere so the evolution machinery applies unchanged.
inline Operator build_reduced_hamiltonian(const ModelParams& p) {
  const EffectiveParams e = frohlich_nakajima_transform(p);
  Operator h(p.dim());
  h.at(StateLabel::E, StateLabel::E) = 2.0 * e.lambda;
  h.at(StateLabel::G_L, StateLabel::G_L) = e.lambda_tilde;
  h.at(StateLabel::G_R, StateLabel::G_R) = e.lambda_tilde;
  h.at(StateLabel::G_L, StateLabel::E) = e.omega_tilde_L;
  h.at(StateLabel::E, StateLabel::G_L) = std::conj(e.omega_tilde_L);
  h.at(StateLabel::G_R, StateLabel::E) = e.omega_tilde_R;
  h.at(StateLabel::E, StateLabel::G_R) = std::conj(e.omega_tilde_R);
  return h;
}

/// Couplings above ~2pi x 10 MHz exceed what rotational-transition experiments
/// typically reach; flag them.
inline constexpr double coupling_warning_threshold = two_pi * 10.0;

inline RegimeReport check_selective_condition(const ModelParams& p) {
  RegimeReport r;
  const double ad = std::abs(p.delta);
  const double inf = std::numeric_limits<double>::infinity();
  r.ratio_delta_omega32 = p.omega32 > 0.0 ? ad / p.omega32 : inf;
  r.ratio_delta_omega21 = p.omega21 > 0.0 ? ad / p.omega21 : inf;
  r.ratio_omega21_omega31 = p.omega31 > 0.0 ? p.omega21 / p.omega31 : inf;
  r.large_detuning_ok = r.ratio_delta_omega32 >= 10.0 && r.ratio_delta_omega21 >= 10.0 &&
                        r.ratio_omega21_omega31 >= 10.0;

  double w = std::fmod(p.phi, two_pi);
  if (w < 0.0) w += two_pi;
  r.phi_residual = std::min(w, two_pi - w);
  r.omega31_residual = p.delta != 0.0
                           ? std::abs(p.omega31 - p.omega32 * p.omega21 / p.delta)
                           : inf;

  struct NamedCoupling {
    const char* name;
    double value;
  };
  const NamedCoupling couplings[] = {
      {"omega21", p.omega21}, {"omega32", p.omega32}, {"omega31", p.omega31}};
  for (const auto& c : couplings) {
    if (c.value > coupling_warning_threshold) {
      r.rwa_warnings.push_back(std::string(c.name) + " = " +
                               std::to_string(c.value / two_pi) +
                               " MHz exceeds the ~10 MHz coupling range typically "
                               "available for rotational transitions");
    }
  }
  return r;
}

}  // namespace chiralpump
