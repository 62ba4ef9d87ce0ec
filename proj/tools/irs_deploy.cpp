// Command-line front end: every subcommand is a thin composition over the
// library row builders; all numeric logic lives in the headers.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "irsdeploy/experiments.hpp"

namespace {

irsdeploy::ScenarioConfig load_scenario(const std::string& path) {
  if (path.empty()) return irsdeploy::parse_scenario("");
  std::ifstream in(path);
  if (!in) throw irsdeploy::ScenarioError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return irsdeploy::parse_scenario(ss.str());
}

void emit(const std::vector<irsdeploy::CsvRow>& rows, const std::string& out_path) {
  const std::string text = irsdeploy::format_csv(rows);
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw irsdeploy::ScenarioError("cannot open output file: " + out_path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Achievable-rate analysis of hybrid and distributed reflecting-surface links"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  app.add_option("--config", config_path, "scenario file (key = value lines)");
  app.add_option("--out", out_path, "write CSV here instead of stdout");

  auto* cmd_evaluate = app.add_subcommand("evaluate", "closed-form SNR/rate per scheme");
  std::uint64_t seed = 1;
  cmd_evaluate->add_option("--seed", seed, "angle seed for the vector-channel oracle column");

  auto* cmd_allocate = app.add_subcommand("allocate", "element split vs exhaustive search");
  auto* cmd_place = app.add_subcommand("place", "surface placement vs grid search");
  auto* cmd_joint = app.add_subcommand("joint", "joint allocation+placement vs brute force");
  auto* cmd_compare = app.add_subcommand("compare", "all schemes plus passive benchmarks");
  double grid_res = 0.05;
  cmd_place->add_option("--grid", grid_res, "grid resolution in meters");
  double joint_grid = 0.1;
  cmd_joint->add_option("--grid", joint_grid, "brute-force grid resolution in meters");
  double compare_grid = 0.1;
  cmd_compare->add_option("--grid", compare_grid, "brute-force grid resolution in meters");

  auto* cmd_sweep = app.add_subcommand("sweep", "evaluate across a variable range");
  std::string sweep_var;
  double sweep_from = 0.0, sweep_to = 0.0;
  int sweep_steps = 0;
  cmd_sweep->add_option("--var", sweep_var, "n | p_b_dbm | p_i_dbm")->required();
  cmd_sweep->add_option("--from", sweep_from)->required();
  cmd_sweep->add_option("--to", sweep_to)->required();
  cmd_sweep->add_option("--steps", sweep_steps)->required();

  auto* cmd_asym = app.add_subcommand("asymptotic", "scaling sweep with fitted slopes");
  std::string asym_var;
  double asym_factor = 1e6;
  double asym_eps = 0.5;
  cmd_asym->add_option("--var", asym_var, "n | p_b_dbm | p_i_dbm")->required();
  cmd_asym->add_option("--factor", asym_factor, "sweep up to factor x the configured value");
  cmd_asym->add_option("--eps", asym_eps, "passive fraction for element sweeps");

  auto* cmd_repro = app.add_subcommand("reproduce", "emit a figure's data series");
  std::string figure;
  double repro_grid = 0.5;
  cmd_repro->add_option("figure", figure, "fig3 | fig4 | fig5 | fig6 | fig7 | fig8")->required();
  cmd_repro->add_option("--grid", repro_grid, "oracle grid resolution in meters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    const irsdeploy::ScenarioConfig sc = load_scenario(config_path);
    if (*cmd_evaluate) {
      emit(irsdeploy::rows_evaluate(sc, 0.0, seed), out_path);
    } else if (*cmd_allocate) {
      emit(irsdeploy::rows_allocate(sc), out_path);
    } else if (*cmd_place) {
      emit(irsdeploy::rows_place(sc, grid_res), out_path);
    } else if (*cmd_joint) {
      emit(irsdeploy::rows_joint(sc, joint_grid), out_path);
    } else if (*cmd_compare) {
      emit(irsdeploy::rows_compare(sc, compare_grid), out_path);
    } else if (*cmd_sweep) {
      emit(irsdeploy::rows_sweep(sc, irsdeploy::sweep_key_from_name(sweep_var), sweep_from,
                                 sweep_to, sweep_steps),
           out_path);
    } else if (*cmd_asym) {
      const auto res = irsdeploy::rows_asymptotic(
          sc, irsdeploy::sweep_key_from_name(asym_var), asym_factor, asym_eps);
      emit(res.rows, out_path);
      for (const auto& [name, fit] : res.fits)
        std::cerr << name << ": slope " << fit.slope << " (rms residual " << fit.residual << ")\n";
    } else if (*cmd_repro) {
      emit(irsdeploy::rows_reproduce(sc, figure, repro_grid), out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
