// Command-line front end: scenario presets, config ingestion, CSV/JSON
// emission, and regime reporting for the double-Delta optical-pumping
// simulator.
//
// Exit codes: 0 success, 2 config/preset error, 3 physics or validation
// error, 4 degenerate steady state.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chiralpump/chiralpump.hpp"

namespace {

using namespace chiralpump;

struct CommonArgs {
  std::string preset;
  std::string config_path;
  std::vector<std::string> sets;
  std::string out_dir = ".";
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_out = true) {
  cmd->add_option("--preset", args.preset, "named scenario (see README)");
  cmd->add_option("--config", args.config_path, "config file ([model]/[decoherence]/[grid]/[sweep])");
  cmd->add_option("--set", args.sets, "override, key=value (repeatable; gamma0 = 1 MHz)")
      ->take_all();
  if (with_out) cmd->add_option("--out", args.out_dir, "output directory (default .)");
}

ConfigState load_scenario_state(const CommonArgs& args) {
  ConfigState st;
  st.scenario = args.preset.empty() ? default_scenario() : scenario_preset(args.preset);
  if (!args.config_path.empty()) apply_config_file(st, args.config_path);
  for (const auto& s : args.sets) apply_override(st, s);
  if (!args.preset.empty() && args.config_path.empty()) st.scenario.name = args.preset;
  return st;
}

ConfigState load_sweep_state(const CommonArgs& args) {
  ConfigState st;
  st.scenario = default_scenario();
  if (!args.preset.empty()) {
    const SweepSpec spec = sweep_preset(args.preset);
    st.scenario.name = args.preset;
    st.scenario.model = spec.base_model;
    st.scenario.dec = spec.base_dec;
    st.sweep.axis = spec.axis;
    st.sweep.grid_min_mhz = spec.grid_mhz.front();
    st.sweep.grid_max_mhz = spec.grid_mhz.back();
    st.sweep.points = static_cast<int>(spec.grid_mhz.size());
    st.sweep.log_scale = true;
    st.sweep.family_param = spec.family_param;
    st.sweep.family_values_mhz = spec.family_values_mhz;
    st.sweep.bind_omega31 = spec.bind_omega31;
    st.has_sweep = true;
  }
  if (!args.config_path.empty()) apply_config_file(st, args.config_path);
  for (const auto& s : args.sets) apply_override(st, s);
  if (!st.has_sweep)
    throw ConfigError("sweep needs --preset or a config with a [sweep] section");
  if (!args.preset.empty() && args.config_path.empty()) st.scenario.name = args.preset;
  return st;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PhysicsError("cannot open output file " + path.string());
  out << content;
}

int run_evolve(const CommonArgs& args, bool no_decoherence) {
  const ConfigState st = load_scenario_state(args);
  const Scenario& sc = st.scenario;
  const Operator h = build_hamiltonian(sc.model);
  const DensityMatrix rho0 = DensityMatrix::racemic(sc.model.dim());
  const TimeSeries ts = no_decoherence ? evolve_unitary(rho0, h, sc.grid)
                                       : evolve_master(rho0, h, sc.dec, sc.grid);

  std::filesystem::create_directories(args.out_dir);
  {
    std::ostringstream csv;
    write_timeseries_csv(ts, csv);
    write_file(std::filesystem::path(args.out_dir) / "timeseries.csv", csv.str());
  }
  Json summary = timeseries_summary(ts, sc);
  summary["meta"]["unitary"] = no_decoherence;
  write_file(std::filesystem::path(args.out_dir) / "summary.json", summary.dump(2) + "\n");
  std::cout << "evolve: final epsilon = " << fmt_g12(ts.epsilon.back()) << " at t = "
            << fmt_g12(ts.times.back()) << " us\n";
  return 0;
}

int run_steady(const CommonArgs& args) {
  const ConfigState st = load_scenario_state(args);
  const Scenario& sc = st.scenario;
  const SteadySolution sol = steady_state(build_hamiltonian(sc.model), sc.dec);
  std::filesystem::create_directories(args.out_dir);
  write_file(std::filesystem::path(args.out_dir) / "steady.json",
             steady_summary(sol, sc).dump(2) + "\n");
  std::cout << "steady: epsilon = " << fmt_g12(enantiomeric_excess(sol.rho))
            << ", residual = " << fmt_g12(sol.residual) << "\n";
  return 0;
}

int run_sweep_cmd(const CommonArgs& args) {
  const ConfigState st = load_sweep_state(args);
  const SweepTable table = run_sweep(make_sweep_spec(st));
  std::filesystem::create_directories(args.out_dir);
  std::ostringstream csv;
  table.write_csv(csv);
  write_file(std::filesystem::path(args.out_dir) / "sweep.csv", csv.str());
  std::cout << "sweep: " << table.axis_mhz.size() << " points x "
            << table.family_labels.size() << " families -> "
            << (std::filesystem::path(args.out_dir) / "sweep.csv").string() << "\n";
  return 0;
}

int run_report(const CommonArgs& args) {
  const ConfigState st = load_scenario_state(args);
  write_report(st.scenario.model, std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chiralpump: enantio-conversion of chiral mixtures via optical pumping "
               "in the five-level double-Delta scheme"};
  app.require_subcommand(1);

  CommonArgs evolve_args, steady_args, sweep_args, report_args;
  bool no_decoherence = false;

  CLI::App* evolve = app.add_subcommand("evolve", "integrate the master equation and "
                                                  "write timeseries.csv + summary.json");
  add_common(evolve, evolve_args);
  evolve->add_flag("--no-decoherence", no_decoherence,
                   "pure Hamiltonian evolution (ignore decoherence rates)");

  CLI::App* steady = app.add_subcommand("steady", "solve for the stationary state and "
                                                  "write steady.json");
  add_common(steady, steady_args);

  CLI::App* sweep = app.add_subcommand("sweep", "steady-state parameter sweep, write sweep.csv");
  add_common(sweep, sweep_args);

  CLI::App* report = app.add_subcommand("report", "print regime report and effective parameters");
  add_common(report, report_args, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (evolve->parsed()) return run_evolve(evolve_args, no_decoherence);
    if (steady->parsed()) return run_steady(steady_args);
    if (sweep->parsed()) return run_sweep_cmd(sweep_args);
    if (report->parsed()) return run_report(report_args);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DegenerateSteadyStateError& e) {
    std::cerr << "degenerate steady state: " << e.what() << "\n";
    return 4;
  } catch (const PhysicsError& e) {
    std::cerr << "physics error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
