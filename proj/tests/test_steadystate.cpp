#include <catch2/catch_amalgamated.hpp>

#include "chiralpump/dynamics.hpp"
#include "chiralpump/steadystate.hpp"

using namespace chiralpump;

namespace {

ModelParams bound_model(double phi = 0.0, bool extended = false) {
  ModelParams p = ModelParams::from_mhz(20.0, 1.0, 1.0, 0.0, phi, extended);
  p.omega31 = p.omega32 * p.omega21 / p.delta;
  return p;
}

DecoherenceParams fig3_rates() { return DecoherenceParams::from_mhz(0.1, 0.1, 1.0, 1.0); }

}  // namespace

TEST_CASE("optical-pumping steady state") {
  const SteadySolution sol = steady_state(build_hamiltonian(bound_model()), fig3_rates());
  REQUIRE(sol.residual <= 1e-9);
  REQUIRE(validate_density(sol.rho, 1e-8).pass);
  // frozen from the vectorized-null-space oracle
  REQUIRE(std::abs(enantiomeric_excess(sol.rho) - 0.992097) <= 1e-5);
  // pumping collects the population in |1_L> at phi = 0
  REQUIRE(population(sol.rho, StateLabel::G_L) > 0.98);
}

TEST_CASE("steady state agrees with long-time integration") {
  const Operator h = build_hamiltonian(bound_model());
  const DecoherenceParams d = fig3_rates();
  const SteadySolution sol = steady_state(h, d);
  const TimeSeries ts = evolve_master(DensityMatrix::racemic(5), h, d, make_grid(260.0));

  // converged: excess moves by < 1e-6 per us across the last samples
  const std::size_t n = ts.size();
  const double rate = std::abs(ts.epsilon[n - 1] - ts.epsilon[n - 2]) /
                      (ts.times[n - 1] - ts.times[n - 2]);
  REQUIRE(rate < 1e-6);
  REQUIRE((sol.rho.op.m - ts.final_state.op.m).cwiseAbs().maxCoeff() <= 1e-4);
  REQUIRE(std::abs(enantiomeric_excess(sol.rho) - ts.epsilon.back()) <= 2e-4);
}

TEST_CASE("steady state mirrors under the phase flip") {
  const SteadySolution left = steady_state(build_hamiltonian(bound_model(0.0)), fig3_rates());
  const SteadySolution right =
      steady_state(build_hamiltonian(bound_model(two_pi / 2.0)), fig3_rates());
  REQUIRE((swap_chirality(left.rho.op).m - right.rho.op.m).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("degenerate generator is reported, not resolved") {
  // no drives: decoupled blocks leave a multi-dimensional stationary space
  ModelParams p;
  DecoherenceParams d;
  d.gamma31 = mhz(1.0);
  const Operator h = build_hamiltonian(p);
  try {
    steady_state(h, d);
    FAIL("expected DegenerateSteadyStateError");
  } catch (const DegenerateSteadyStateError& e) {
    REQUIRE(e.null_dimension() == 16);
  }

  // the override projects a reference onto the stationary subspace
  const DensityMatrix ref = DensityMatrix::pure(StateLabel::G_L, 5);
  const SteadySolution near = steady_state_near(h, d, ref);
  REQUIRE((near.rho.op.m - ref.op.m).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("dissipation is required") {
  REQUIRE_THROWS_AS(steady_state(build_hamiltonian(bound_model()), DecoherenceParams{}),
                    PhysicsError);
}

TEST_CASE("steady excess anchors") {
  const ModelParams p = bound_model();
  // wide-plateau anchor: gamma = gamma0, gamma~ = 0.01 gamma0
  DecoherenceParams d = DecoherenceParams::from_mhz(1.0, 1.0, 1.0, 0.01);
  REQUIRE(std::abs(steady_epsilon(p, d) - 0.998339) <= 1e-5);
  REQUIRE(steady_epsilon(p, d) >= 0.99);

  // rising branch in the weak-relaxation region
  DecoherenceParams weak = DecoherenceParams::from_mhz(1e-4, 1e-4, 1e-4, 0.01);
  DecoherenceParams mid = DecoherenceParams::from_mhz(1e-2, 1e-2, 1e-2, 0.01);
  REQUIRE(steady_epsilon(p, weak) < steady_epsilon(p, mid));

  // strong dephasing spoils the conversion
  DecoherenceParams noisy = DecoherenceParams::from_mhz(1.0, 1.0, 1.0, 1.0);
  const double eps_noisy = steady_epsilon(p, noisy);
  REQUIRE(std::abs(eps_noisy - 0.961859) <= 1e-5);
  REQUIRE(eps_noisy < 0.99);
}

TEST_CASE("seven-level leakage steady state") {
  const ModelParams p = bound_model(0.0, true);
  DecoherenceParams d = DecoherenceParams::from_mhz(0.1, 0.1, 1.0, 1.0, 100.0, 1e-5);
  // strong leakage floor, frozen from the oracle run
  REQUIRE(std::abs(steady_epsilon(p, d) - 0.668232) <= 1e-5);
}
