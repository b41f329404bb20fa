// Command-line driver for the space-time multigrid experiment suite.
//
// Usage:
//   stmg run <experiment> [--problem N]... [--methods LIST] [--levels A..B]
//            [--restart MODE]... [--nel N] [--nt N] [--n-levels N]
//            [--max-iterations N] [--diagnostics] [--out DIR] [--config FILE]
//
// A config file (key=value lines) is applied first; command-line flags
// override it. On success the paths of all written CSV files are printed,
// one per line, and the exit status is 0. Configuration errors print a
// message to stderr and exit nonzero.

#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stmg/experiments.hpp"

namespace {

std::string experiment_list() {
  std::string out;
  for (const std::string& name : stmg::experiment_names()) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Space-time multigrid studies for 1D transient heat conduction"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "Run one experiment");

  std::string experiment;
  std::string config_path;
  std::vector<int> problems;
  std::string methods;
  std::string levels;
  std::vector<std::string> restarts;
  bool diagnostics = false;
  int n_el = 0;
  int n_t = 0;
  int n_levels = 0;
  int max_iterations = 0;
  std::string out_dir;

  run->add_option("experiment", experiment,
                  "Experiment name: " + experiment_list())
      ->required();
  run->add_option("--config", config_path,
                  "key=value config file, applied before the flags below");
  run->add_option("--problem,--problems", problems,
                  "Problem id(s) 0..9 (repeatable)");
  run->add_option("--methods", methods,
                  "Comma-separated rediscretisation methods, e.g. CK,CR");
  run->add_option("--levels", levels, "Level-count range A..B (or a single N)");
  run->add_option("--restart", restarts,
                  "Optimisation restart mode: warm and/or cold (repeatable)");
  run->add_flag("--diagnostics", diagnostics,
                "Emit extra diagnostic columns where supported");
  run->add_option("--nel", n_el, "Spatial elements on the finest grid");
  run->add_option("--nt", n_t, "Time steps on the finest grid");
  run->add_option("--n-levels", n_levels,
                  "Hierarchy depth for experiments with a fixed depth");
  run->add_option("--max-iterations", max_iterations,
                  "Optimisation cycle limit");
  run->add_option("--out", out_dir, "Output directory (default: .)");

  CLI11_PARSE(app, argc, argv);

  try {
    stmg::ExperimentConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw std::invalid_argument("cannot open config file: " + config_path);
      cfg = stmg::parse_config_text(in);
    }
    cfg.experiment = experiment;
    if (!problems.empty()) cfg.problems = problems;
    if (run->count("--methods") > 0) cfg.methods = stmg::parse_method_list(methods);
    if (run->count("--levels") > 0) {
      const std::pair<int, int> range = stmg::parse_level_range(levels);
      cfg.levels_min = range.first;
      cfg.levels_max = range.second;
    }
    if (!restarts.empty()) cfg.restarts = restarts;
    if (diagnostics) cfg.diagnostics = true;
    if (run->count("--nel") > 0) cfg.n_el = n_el;
    if (run->count("--nt") > 0) cfg.n_t = n_t;
    if (run->count("--n-levels") > 0) cfg.n_levels = n_levels;
    if (run->count("--max-iterations") > 0) cfg.max_iterations = max_iterations;
    if (run->count("--out") > 0) cfg.out_dir = out_dir;

    for (const std::string& path : stmg::run_experiment(cfg))
      std::cout << path << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
