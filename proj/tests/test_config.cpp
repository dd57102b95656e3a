#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "chiralpump/config.hpp"

using namespace chiralpump;

TEST_CASE("scenario presets") {
  const Scenario fig3 = scenario_preset("fig3");
  REQUIRE(fig3.model.delta == mhz(20.0));
  REQUIRE(fig3.model.omega21 == mhz(1.0));
  REQUIRE(std::abs(fig3.model.omega31 - mhz(0.05)) <= 1e-12);
  REQUIRE(fig3.dec.gamma21 == mhz(1.0));
  REQUIRE(fig3.dec.gamma_dephase == mhz(1.0));
  REQUIRE(std::abs(fig3.dec.gamma31 - mhz(0.1)) <= 1e-15);
  REQUIRE(fig3.grid.t_end == 260.0);

  const Scenario fig2 = scenario_preset("fig2");
  REQUIRE_FALSE(fig2.dec.any_dissipation(5));
  REQUIRE(fig2.grid.t_end == 50.0);

  const Scenario fig6a = scenario_preset("fig6a");
  REQUIRE(fig6a.model.extended);
  REQUIRE(fig6a.model.dim() == 7);

  REQUIRE_THROWS_AS(scenario_preset("fig9"), ConfigError);
}

TEST_CASE("config text parsing") {
  ConfigState st;
  st.scenario = default_scenario();
  std::istringstream in(
      "# reference run, tweaked\n"
      "[model]\n"
      "delta = 40\n"
      "phi = 0.3\n"
      "extended = true\n"
      "[decoherence]\n"
      "gamma34 = 2*gamma0   ; leakage\n"
      "[grid]\n"
      "t_end = 80\n"
      "dt = 2e-4\n"
      "[sweep]\n"
      "axis = delta\n"
      "grid_min = 10\n"
      "grid_max = 200\n"
      "points = 7\n"
      "family = gamma34\n"
      "family_values = 0.1, gamma0, 10*gamma0\n"
      "bind_omega31 = yes\n");
  apply_config_text(st, in, "test");
  REQUIRE(st.scenario.model.delta == mhz(40.0));
  REQUIRE(st.scenario.model.phi == 0.3);
  REQUIRE(st.scenario.model.extended);
  REQUIRE(st.scenario.dec.gamma34 == mhz(2.0));
  REQUIRE(st.scenario.grid.t_end == 80.0);
  REQUIRE(st.scenario.grid.dt == 2e-4);
  REQUIRE(st.has_sweep);
  REQUIRE(st.sweep.axis == SweepParam::Delta);
  REQUIRE(st.sweep.family_values_mhz == std::vector<double>{0.1, 1.0, 10.0});
  REQUIRE(st.sweep.bind_omega31);

  const SweepSpec spec = make_sweep_spec(st);
  REQUIRE(spec.grid_mhz.size() == 7);
  REQUIRE(spec.base_model.delta == mhz(40.0));
}

TEST_CASE("config rejects malformed input") {
  ConfigState st;
  st.scenario = default_scenario();

  std::istringstream bad_key("[model]\nfrequency = 1\n");
  REQUIRE_THROWS_AS(apply_config_text(st, bad_key, "test"), ConfigError);

  std::istringstream wrong_section("[model]\ngamma31 = 1\n");
  REQUIRE_THROWS_AS(apply_config_text(st, wrong_section, "test"), ConfigError);

  std::istringstream no_equals("[model]\ndelta 40\n");
  REQUIRE_THROWS_AS(apply_config_text(st, no_equals, "test"), ConfigError);

  std::istringstream bad_section("[engine]\nx = 1\n");
  REQUIRE_THROWS_AS(apply_config_text(st, bad_section, "test"), ConfigError);

  std::istringstream bad_value("[model]\ndelta = fast\n");
  REQUIRE_THROWS_AS(apply_config_text(st, bad_value, "test"), ConfigError);
}

TEST_CASE("overrides and the gamma0 constant") {
  ConfigState st;
  st.scenario = default_scenario();
  apply_override(st, "gamma34=100*gamma0");
  REQUIRE(st.scenario.dec.gamma34 == mhz(100.0));
  apply_override(st, "gamma41=gamma0*0.5");
  REQUIRE(st.scenario.dec.gamma41 == mhz(0.5));
  apply_override(st, "gamma_dephase=gamma0");
  REQUIRE(st.scenario.dec.gamma_dephase == mhz(1.0));
  apply_override(st, "phi=3.14159265358979");
  REQUIRE(st.scenario.model.phi == 3.14159265358979);

  REQUIRE_THROWS_AS(apply_override(st, "bogus=1"), ConfigError);
  REQUIRE_THROWS_AS(apply_override(st, "no_equals"), ConfigError);
  REQUIRE_THROWS_AS(apply_override(st, "delta=2*3"), ConfigError);
}

TEST_CASE("samples key recomputes the sampling stride") {
  ConfigState st;
  st.scenario = default_scenario();
  std::istringstream in("[grid]\nt_start = 0\nt_end = 50\ndt = 1e-4\nsamples = 500\n");
  apply_config_text(st, in, "test");
  REQUIRE(st.scenario.grid.sample_every == 1000);
}
