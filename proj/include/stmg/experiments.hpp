#pragma once

// Reproduction studies emitted as CSV artefacts.
//
// Five experiments are available:
//   anisotropy-sweep  two-grid convergence factors of the three coarsening
//                     types on the uniform preset, swept over the anisotropy
//   contrast-sweep    two-grid x/t factors on the ramp presets, swept over
//                     the terminal time (effective anisotropy)
//   levels-sweep      factor vs level count for every rediscretisation
//                     method on the small-feature presets
//   feature-sweep     the resolution-guard strategy on the thin-gap family,
//                     swept over the gap fraction and the element floor
//   optimise          full design-optimisation runs: history plus
//                     design-field snapshots for each method and restart mode
//
// Every experiment is deterministic: re-running a configuration yields
// byte-identical CSV files.  Each file starts with one '#' comment line
// carrying the fully resolved configuration, then a header row naming the
// columns, then data rows.  A diverging solve within a sweep is reported as
// a normal row with its cause column set; it does not abort the run.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace stmg {

struct ExperimentConfig {
  std::string experiment;            // one of experiment_names()
  std::vector<int> problems;         // empty = experiment default
  std::vector<std::string> methods;  // empty = experiment default
  int levels_min = 2;                // levels-sweep range
  int levels_max = 10;
  int n_levels = -1;                 // feature-sweep/optimise; -1 = default
  std::vector<std::string> restarts; // optimise; empty = warm and cold
  bool diagnostics = false;          // contrast-sweep indicator columns
  int n_el = 256;
  int n_t = 256;
  int max_iterations = 500;          // optimise cap
  std::string out_dir = ".";
};

const std::vector<std::string>& experiment_names();

// "1,2,3" -> {1,2,3}; throws on malformed input.
std::vector<int> parse_int_list(const std::string& s);

// Parse a comma-separated list of rediscretisation method names ("CK,CR").
// Whitespace around items is ignored; an empty list is rejected. Whether a
// name is a valid method is checked later, when the experiment runs.
std::vector<std::string> parse_method_list(const std::string& s);

// "2..10" -> {2,10}; a bare "7" means {7,7}; throws on malformed input.
std::pair<int, int> parse_level_range(const std::string& s);

// Parse a key=value configuration body on top of `base`.  '#' comments and
// blank lines are ignored; later keys override earlier ones; unknown keys or
// malformed values throw.  Keys: experiment, problem/problems, methods,
// levels, n_levels, restart/restarts, diagnostics, n_el, n_t,
// max_iterations, out.
ExperimentConfig parse_config_text(std::istream& in,
                                   ExperimentConfig base = {});

struct CsvFile {
  std::string name;  // file name relative to the output directory
  std::string body;  // complete file contents
};

// Produce every CSV artefact for the configuration, in memory and in
// deterministic order.  Throws std::invalid_argument on configuration
// errors.
std::vector<CsvFile> build_experiment(const ExperimentConfig& cfg);

// build_experiment + write into cfg.out_dir (created if missing); returns
// the written paths in order.
std::vector<std::string> run_experiment(const ExperimentConfig& cfg);

}  // namespace stmg
