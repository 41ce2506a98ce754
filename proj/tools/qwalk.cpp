// qwalk: discrete-time quantum walks on d-dimensional integer lattices.
//
// Subcommands
//   run           evolve once, write distribution.csv + summary.json
//   sweep         sigma(t) after every step, write sigma_series.csv + regression.json
//   ensemble      average dressed trials, write avg_distribution.csv + convergence.json
//   oracle-check  compare the engine against the brute-force path sum
//
// Exit status: 0 success, 1 failed check or internal error, 2 bad
// configuration, 3 resource-bound refusal.

#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qwalk.hpp"

int main(int argc, char** argv) {
  CLI::App app{"discrete-time quantum walks on d-dimensional integer lattices"};
  app.set_config("--config", "", "flat key=value configuration file (flags override)");
  app.fallthrough();  // options may follow the subcommand
  app.require_subcommand(1);

  qwalk::WalkConfig config;
  std::string out_dir = ".";

  app.add_option("--dim", config.dim, "walk dimension (1..4)")->capture_default_str();
  app.add_option("--coin", config.coin, "hadamard | dft | grover | custom:<path>")
      ->capture_default_str();
  app.add_flag("--dressed", config.dressed, "draw fresh random per-axis phases at every step");
  app.add_option("--initial", config.initial,
                 "all_minus | all_plus | symmetric_product | singlet | comma-separated amplitudes")
      ->capture_default_str();
  app.add_option("--steps", config.steps, "number of coin+shift steps")->capture_default_str();
  app.add_option("--seed", config.seed, "rng seed (dressed/ensemble modes)")
      ->capture_default_str();
  app.add_option("--trials", config.trials, "ensemble trial count")->capture_default_str();
  app.add_option("--tmin", config.t_min, "first step included in the sigma regression")
      ->capture_default_str();
  app.add_option("--out-dir", out_dir, "directory for emitted files")->capture_default_str();

  auto* cmd_run = app.add_subcommand("run", "evolve once and write the position distribution");
  auto* cmd_sweep = app.add_subcommand("sweep", "record sigma(t) and fit its slope");
  auto* cmd_ensemble = app.add_subcommand("ensemble", "average dressed walks over many trials");
  auto* cmd_oracle = app.add_subcommand("oracle-check", "verify the engine against the path sum");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const std::filesystem::path out(out_dir);
    if (!out_dir.empty()) std::filesystem::create_directories(out);
    qwalk::prepare_config(config);

    if (cmd_run->parsed()) {
      qwalk::cmd_run(config, out);
      std::cout << "wrote " << (out / "distribution.csv").string() << " and "
                << (out / "summary.json").string() << '\n';
    } else if (cmd_sweep->parsed()) {
      qwalk::cmd_sweep(config, out);
      std::cout << "wrote " << (out / "sigma_series.csv").string() << " and "
                << (out / "regression.json").string() << '\n';
    } else if (cmd_ensemble->parsed()) {
      qwalk::cmd_ensemble(config, out);
      std::cout << "wrote " << (out / "avg_distribution.csv").string() << " and "
                << (out / "convergence.json").string() << '\n';
    } else if (cmd_oracle->parsed()) {
      return qwalk::cmd_oracle_check(config, std::cout);
    }
    return 0;
  } catch (const qwalk::resource_error& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
