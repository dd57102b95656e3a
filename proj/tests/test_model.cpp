#include <catch2/catch_amalgamated.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "chiralpump/model.hpp"

using namespace chiralpump;

namespace {

ModelParams paper_params(double phi = 0.0) {
  return ModelParams::from_mhz(20.0, 1.0, 1.0, 0.05, phi);
}

/// The selective-condition value of omega31 computed, not quoted, so the
/// residual is an exact zero.
ModelParams bound_params(double phi = 0.0) {
  ModelParams p = ModelParams::from_mhz(20.0, 1.0, 1.0, 0.0, phi);
  p.omega31 = p.omega32 * p.omega21 / p.delta;
  return p;
}

/// Detuning and coupling pieces assembled independently from projectors.
Matrix order_zero(const ModelParams& p) {
  Matrix h0 = Matrix::Zero(5, 5);
  h0(2, 2) = p.delta;
  h0(3, 3) = p.delta;
  return h0;
}

Matrix order_one(const ModelParams& p) {
  Matrix h1 = Matrix::Zero(5, 5);
  h1(0, 2) = p.omega21;
  h1(1, 3) = p.omega21;
  h1(2, 4) = p.omega32;
  h1(3, 4) = p.omega32;
  return h1 + h1.adjoint().eval();
}

Matrix order_two(const ModelParams& p) {
  Matrix h2 = Matrix::Zero(5, 5);
  h2(0, 4) = p.omega31 * std::exp(Complex(0.0, p.phi));
  h2(1, 4) = p.omega31 * std::exp(Complex(0.0, p.phi + two_pi / 2.0));
  return h2 + h2.adjoint().eval();
}

}  // namespace

TEST_CASE("full Hamiltonian entries at the reference parameters") {
  const Operator h = build_hamiltonian(paper_params());
  REQUIRE(h.dim() == 5);
  REQUIRE((h.m - h.m.adjoint()).cwiseAbs().maxCoeff() == 0.0);

  REQUIRE(std::abs(h.at(StateLabel::M_L, StateLabel::M_L) - Complex(two_pi * 20.0, 0)) <= 1e-12);
  REQUIRE(std::abs(h.at(StateLabel::M_R, StateLabel::M_R) - Complex(two_pi * 20.0, 0)) <= 1e-12);
  REQUIRE(std::abs(h.at(StateLabel::G_L, StateLabel::M_L) - Complex(two_pi, 0)) <= 1e-12);
  REQUIRE(std::abs(h.at(StateLabel::M_L, StateLabel::E) - Complex(two_pi, 0)) <= 1e-12);
  // opposite one-photon coupling signs for opposite chiralities
  REQUIRE(std::abs(h.at(StateLabel::G_L, StateLabel::E) - Complex(two_pi * 0.05, 0)) <= 1e-12);
  REQUIRE(std::abs(h.at(StateLabel::G_R, StateLabel::E) - Complex(-two_pi * 0.05, 0)) <= 1e-12);
  // no direct ground-ground or mediate-mediate couplings
  REQUIRE(std::abs(h.at(StateLabel::G_L, StateLabel::G_R)) == 0.0);
  REQUIRE(std::abs(h.at(StateLabel::M_L, StateLabel::M_R)) == 0.0);
}

TEST_CASE("Hamiltonian edge cases") {
  ModelParams zero;
  REQUIRE(build_hamiltonian(zero).m.cwiseAbs().maxCoeff() == 0.0);

  ModelParams bad = paper_params();
  bad.omega32 = -1.0;
  REQUIRE_THROWS_AS(build_hamiltonian(bad), PhysicsError);

  ModelParams ext = paper_params();
  ext.extended = true;
  const Operator h7 = build_hamiltonian(ext);
  REQUIRE(h7.dim() == 7);
  REQUIRE(h7.m.row(5).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(h7.m.col(6).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("phase shift by pi mirrors the chiralities") {
  const Operator h0 = build_hamiltonian(paper_params(0.0));
  const Operator hpi = build_hamiltonian(paper_params(two_pi / 2.0));
  REQUIRE((swap_chirality(h0).m - hpi.m).cwiseAbs().maxCoeff() <= 1e-12);

  const Operator g03 = build_hamiltonian(paper_params(0.3));
  const Operator g03pi = build_hamiltonian(paper_params(0.3 + two_pi / 2.0));
  REQUIRE((swap_chirality(g03).m - g03pi.m).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("generator of the decoupling transformation") {
  const ModelParams p = paper_params();
  const Operator s = build_s_operator(p);
  REQUIRE((s.m + s.m.adjoint()).cwiseAbs().maxCoeff() == 0.0);

  const Matrix comm = order_zero(p) * s.m - s.m * order_zero(p);
  REQUIRE((comm + order_one(p)).cwiseAbs().maxCoeff() <= 1e-12);

  ModelParams nodrive = p;
  nodrive.omega21 = nodrive.omega32 = 0.0;
  REQUIRE(build_s_operator(nodrive).m.cwiseAbs().maxCoeff() == 0.0);

  ModelParams singular = p;
  singular.delta = 0.0;
  REQUIRE_THROWS_AS(build_s_operator(singular), PhysicsError);
}

TEST_CASE("effective parameters at the reference point") {
  const EffectiveParams e = frohlich_nakajima_transform(paper_params());
  REQUIRE(std::abs(e.lambda - (-two_pi * 0.05)) <= 1e-12);
  REQUIRE(std::abs(e.lambda_tilde - (-two_pi * 0.05)) <= 1e-12);
  REQUIRE(std::abs(e.delta_tilde - two_pi * 20.1) <= 1e-12);
  // e^{i phi_L} = 1 and Omega31 = Omega32*Omega21/Delta: left coupling cancels
  REQUIRE(std::abs(e.omega_tilde_L) <= 1e-12);
  REQUIRE(std::abs(e.omega_tilde_R - Complex(-2.0 * two_pi * 0.05, 0)) <= 1e-12);

  const EffectiveParams epi = frohlich_nakajima_transform(paper_params(two_pi / 2.0));
  REQUIRE(std::abs(epi.omega_tilde_R) <= 1e-12);
  REQUIRE(std::abs(epi.omega_tilde_L - Complex(-2.0 * two_pi * 0.05, 0)) <= 1e-12);

  ModelParams singular = paper_params();
  singular.delta = 0.0;
  REQUIRE_THROWS_AS(frohlich_nakajima_transform(singular), PhysicsError);

  // exact zero when omega31 carries the computed binding value
  const EffectiveParams eb = frohlich_nakajima_transform(bound_params());
  REQUIRE(std::abs(eb.omega_tilde_L) == 0.0);
}

TEST_CASE("transformed Hamiltonian equals H0 + [H1,S]/2 + H2") {
  for (double phi : {0.0, 0.3, two_pi / 2.0}) {
    const ModelParams p = paper_params(phi);
    const Operator hp = build_transformed_hamiltonian(p);
    REQUIRE((hp.m - hp.m.adjoint()).cwiseAbs().maxCoeff() <= 1e-15);

    const Matrix s = build_s_operator(p).m;
    const Matrix h1 = order_one(p);
    const Matrix direct = order_zero(p) + 0.5 * (h1 * s - s * h1) + order_two(p);
    REQUIRE((hp.m - direct).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("transformed Hamiltonian matches the exact conjugation") {
  const ModelParams p = paper_params();
  const Operator hp = build_transformed_hamiltonian(p);

  // mediate-state cross coupling: -Lambda (the exact e^{-S} H e^{S}
  // conjugation fixes this sign; +Lambda misses it at first order in 1/Delta)
  REQUIRE(std::abs(hp.at(StateLabel::M_L, StateLabel::M_R) - Complex(two_pi * 0.05, 0)) <=
          1e-12);

  const Matrix s = build_s_operator(p).m;
  const Matrix conjugated = (-s).exp() * build_hamiltonian(p).m * s.exp();
  const Matrix diff = hp.m - conjugated;

  // residual on the block surviving adiabatic elimination
  const int keep[3] = {0, 1, 4};
  double reduced_resid = 0.0;
  for (int a : keep)
    for (int b : keep) reduced_resid = std::max(reduced_resid, std::abs(diff(a, b)));
  REQUIRE(reduced_resid <= two_pi * 0.01);

  // whole-matrix residual is O(Omega^3/Delta^2)
  REQUIRE(diff.cwiseAbs().maxCoeff() <= two_pi * 0.02);
}

TEST_CASE("reduced Hamiltonian") {
  const ModelParams p = bound_params();
  const Operator hr = build_reduced_hamiltonian(p);
  const EffectiveParams e = frohlich_nakajima_transform(p);

  // selective point: left ground state is an exact eigenstate, the right one
  // couples to |3> at -2 Omega31
  REQUIRE(std::abs(hr.at(StateLabel::G_R, StateLabel::E) - Complex(-2.0 * p.omega31, 0)) <=
          1e-12);
  REQUIRE(std::abs(hr.at(StateLabel::G_L, StateLabel::E)) == 0.0);
  Vector e1 = Vector::Zero(5);
  e1(0) = 1.0;
  REQUIRE((hr.m * e1 - e.lambda_tilde * e1).cwiseAbs().maxCoeff() == 0.0);

  // mediate block dropped entirely
  REQUIRE(hr.m.row(2).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(hr.m.col(3).cwiseAbs().maxCoeff() == 0.0);

  const Operator generic = build_reduced_hamiltonian(paper_params(0.3));
  REQUIRE(std::abs(generic.at(StateLabel::G_L, StateLabel::E)) > 0.0);
  REQUIRE(std::abs(generic.at(StateLabel::G_R, StateLabel::E)) > 0.0);
}

TEST_CASE("regime report") {
  const RegimeReport r = check_selective_condition(bound_params());
  REQUIRE(std::abs(r.ratio_delta_omega32 - 20.0) <= 1e-12);
  REQUIRE(std::abs(r.ratio_delta_omega21 - 20.0) <= 1e-12);
  REQUIRE(std::abs(r.ratio_omega21_omega31 - 20.0) <= 1e-12);
  REQUIRE(r.large_detuning_ok);
  REQUIRE(r.phi_residual == 0.0);
  REQUIRE(r.omega31_residual == 0.0);
  REQUIRE(r.rwa_warnings.empty());

  ModelParams off = ModelParams::from_mhz(20.0, 1.0, 1.0, 0.06, 0.0);
  const RegimeReport r2 = check_selective_condition(off);
  REQUIRE(std::abs(r2.omega31_residual - two_pi * 0.01) <= 1e-12);

  ModelParams hot = bound_params();
  hot.omega21 = two_pi * 50.0;
  REQUIRE_FALSE(check_selective_condition(hot).rwa_warnings.empty());

  // phi residual is a wrapped distance from zero
  ModelParams wrapped = bound_params(2.0 * two_pi + 0.1);
  REQUIRE(std::abs(check_selective_condition(wrapped).phi_residual - 0.1) <= 1e-12);
}
