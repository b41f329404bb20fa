#include "stmg/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "stmg/assembly.hpp"
#include "stmg/multigrid.hpp"
#include "stmg/optimisation.hpp"
#include "stmg/problems.hpp"
#include "stmg/strategy.hpp"

namespace stmg {
namespace {

// ---------------------------------------------------------------------------
// Formatting helpers
// ---------------------------------------------------------------------------

// Round-trip-exact double for data rows.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Compact double for the config comment line.
std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// RFC-4180 quoting: wrap fields containing separators or quotes.
std::string csv(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += items[i];
  }
  return out;
}

std::string join_ints(const std::vector<int>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(items[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Config parsing helpers
// ---------------------------------------------------------------------------

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

int parse_int(const std::string& s) {
  const std::string t = trim(s);
  int v = 0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || p != t.data() + t.size())
    throw std::invalid_argument("expected an integer, got '" + s + "'");
  return v;
}

bool parse_bool(const std::string& s) {
  const std::string t = trim(s);
  if (t == "1" || t == "true" || t == "on" || t == "yes") return true;
  if (t == "0" || t == "false" || t == "off" || t == "no") return false;
  throw std::invalid_argument("expected a boolean, got '" + s + "'");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shared study plumbing
// ---------------------------------------------------------------------------

// One multigrid solve from a zero start; the report carries the estimated
// convergence factor, the cycle count, and the termination cause.
SolveReport run_study_solve(const ProblemInstance& inst,
                            const RediscretisationMethod& method,
                            const CoarseningPath& path, int nu) {
  const LevelHierarchy h =
      build_hierarchy(inst.grid, method, path, &inst.design, &inst.preset.mat);
  const AssembledSystem sys = assemble_system(inst.grid);
  std::vector<double> u(inst.grid.n_dofs(), 0.0);
  SolveOptions so;
  so.nu = nu;
  return mg_solve(h, sys.b, u, so);
}

CoarseningPath one_step_path(const SpaceTimeGrid& g, CoarseningDirection d) {
  CoarseningPath p;
  p.dirs = {d};
  p.indicator_at_decision = {effective_lambda(g)};
  return p;
}

void require_fixed_methods(const ExperimentConfig& cfg) {
  if (!cfg.methods.empty())
    throw std::invalid_argument(cfg.experiment +
                                ": the coarsening variants of this study are "
                                "fixed; --methods is not accepted");
}

std::vector<int> resolve_problems(const ExperimentConfig& cfg,
                                  std::vector<int> defaults) {
  std::vector<int> ids = cfg.problems.empty() ? std::move(defaults)
                                              : cfg.problems;
  for (int id : ids) problem_preset(id);  // validates the range
  return ids;
}

const char* solve_defaults_comment() {
  return " omega=0.5 tol=1e-09 div_tol=1e+09 max_cycles=100";
}

// ---------------------------------------------------------------------------
// anisotropy-sweep
// ---------------------------------------------------------------------------

CsvFile build_anisotropy(const ExperimentConfig& cfg) {
  require_fixed_methods(cfg);
  const std::vector<int> ids = resolve_problems(cfg, {0});
  if (ids.size() != 1 || ids[0] != 0)
    throw std::invalid_argument(
        "anisotropy-sweep: only the uniform preset (problem 0) is "
        "meaningful for this study");
  const RediscretisationMethod method = parse_method("CK");
  const ProblemPreset& pre = problem_preset(0);
  const double dx = pre.length / cfg.n_el;

  std::ostringstream os;
  os << "# experiment=anisotropy-sweep problems=0 rediscretisation=CK"
     << " directions=x,t,xt lambda=2^-10..2^10 step=2x n_el=" << cfg.n_el
     << " n_t=" << cfg.n_t << " nu=5" << solve_defaults_comment() << '\n';
  os << "experiment,problem,method,lambda,t_terminal,factor,cycles,cause\n";
  for (CoarseningDirection dir : {CoarseningDirection::SpaceX,
                                  CoarseningDirection::TimeT,
                                  CoarseningDirection::FullST}) {
    for (int e = -10; e <= 10; ++e) {
      const double lambda = std::ldexp(1.0, e);
      const double t = lambda * cfg.n_t * dx * dx;
      const ProblemInstance inst = make_problem(0, cfg.n_el, cfg.n_t, t);
      const SolveReport rep =
          run_study_solve(inst, method, one_step_path(inst.grid, dir), 5);
      os << "anisotropy-sweep,0," << direction_name(dir) << ','
         << fmt(lambda) << ',' << fmt(t) << ',' << fmt(rep.factor) << ','
         << rep.cycles << ',' << status_name(rep.status) << '\n';
    }
  }
  return {"anisotropy-sweep.csv", os.str()};
}

// ---------------------------------------------------------------------------
// contrast-sweep
// ---------------------------------------------------------------------------

CsvFile build_contrast(const ExperimentConfig& cfg) {
  require_fixed_methods(cfg);
  const std::vector<int> ids = resolve_problems(cfg, {1, 2, 3, 4, 5, 6});
  for (int id : ids) {
    const ProblemPreset& p = problem_preset(id);
    if (!(p.t_low < p.t_high))
      throw std::invalid_argument(
          "contrast-sweep: preset " + std::to_string(id) +
          " has no terminal-time sweep range");
  }

  std::ostringstream os;
  os << "# experiment=contrast-sweep problems=" << join_ints(ids)
     << " rediscretisation=CK directions=x,t t_steps=2^(1/4)"
     << " endpoints=inclusive n_el=" << cfg.n_el << " n_t=" << cfg.n_t
     << " nu=5" << solve_defaults_comment()
     << " diagnostics=" << (cfg.diagnostics ? "on" : "off") << '\n';
  os << "experiment,problem,method,t_terminal,lambda_eff,factor,cycles,cause";
  if (cfg.diagnostics)
    for (AnisotropyIndicator ind : all_indicators())
      os << ',' << indicator_name(ind);
  os << '\n';

  const RediscretisationMethod method = parse_method("CK");
  for (int id : ids) {
    const ProblemPreset& p = problem_preset(id);
    const int quarter_steps = static_cast<int>(
        std::lround(4.0 * std::log2(p.t_high / p.t_low)));
    for (CoarseningDirection dir : {CoarseningDirection::SpaceX,
                                    CoarseningDirection::TimeT}) {
      for (int j = 0; j <= quarter_steps; ++j) {
        const double t = p.t_low * std::pow(2.0, 0.25 * j);
        const ProblemInstance inst = make_problem(id, cfg.n_el, cfg.n_t, t);
        const AnisotropyReport rep = anisotropy(inst.grid);
        const SolveReport sol =
            run_study_solve(inst, method, one_step_path(inst.grid, dir), 5);
        os << "contrast-sweep," << id << ',' << direction_name(dir) << ','
           << fmt(t) << ',' << fmt(rep.lambda_eff) << ',' << fmt(sol.factor)
           << ',' << sol.cycles << ',' << status_name(sol.status);
        if (cfg.diagnostics)
          for (AnisotropyIndicator ind : all_indicators())
            os << ',' << fmt(indicator_value(rep, ind));
        os << '\n';
      }
    }
  }
  return {"contrast-sweep.csv", os.str()};
}

// ---------------------------------------------------------------------------
// levels-sweep
// ---------------------------------------------------------------------------

CsvFile build_levels(const ExperimentConfig& cfg) {
  const std::vector<int> ids = resolve_problems(cfg, {7, 8, 9});
  std::vector<std::string> methods = cfg.methods;
  if (methods.empty())
    for (const RediscretisationMethod& m : all_methods())
      methods.push_back(method_name(m));
  if (cfg.levels_min < 1 || cfg.levels_min > cfg.levels_max)
    throw std::invalid_argument("levels-sweep: invalid level range");

  std::ostringstream os;
  os << "# experiment=levels-sweep problems=" << join_ints(ids)
     << " methods=" << join(methods) << " levels=" << cfg.levels_min << ".."
     << cfg.levels_max << " strategy=contrast lambda_crit=0.25 n_el="
     << cfg.n_el << " n_t=" << cfg.n_t << " nu=5"
     << solve_defaults_comment() << '\n';
  os << "experiment,problem,method,n_levels,lambda_eff,path,factor,cycles,"
        "cause\n";

  for (int id : ids) {
    const ProblemInstance inst = make_problem(id, cfg.n_el, cfg.n_t);
    const double lambda_eff = effective_lambda(inst.grid);
    for (const std::string& name : methods) {
      const RediscretisationMethod method = parse_method(name);
      for (int nl = cfg.levels_min; nl <= cfg.levels_max; ++nl) {
        PlanRequest req;
        req.n_levels = nl;
        req.lambda_crit = 0.25;
        req.strategy = PlanStrategy::Contrast;
        req.reassembly = method.reassembly;
        req.chi = &inst.design;
        req.mat = &inst.preset.mat;
        const CoarseningPath path = plan_coarsening(inst.grid, req);
        const SolveReport rep = run_study_solve(inst, method, path, 5);
        os << "levels-sweep," << id << ',' << name << ',' << nl << ','
           << fmt(lambda_eff) << ',' << csv(path_to_string(path)) << ','
           << fmt(rep.factor) << ',' << rep.cycles << ','
           << status_name(rep.status) << '\n';
      }
    }
  }
  return {"levels-sweep.csv", os.str()};
}

// ---------------------------------------------------------------------------
// feature-sweep
// ---------------------------------------------------------------------------

CsvFile build_feature(const ExperimentConfig& cfg) {
  const std::vector<int> ids = resolve_problems(cfg, {8});
  if (ids.size() != 1 || ids[0] != 8)
    throw std::invalid_argument(
        "feature-sweep: the study is defined on the thin-gap family "
        "(problem 8)");
  std::vector<std::string> methods =
      cfg.methods.empty() ? std::vector<std::string>{"CK", "CR"}
                          : cfg.methods;
  const int n_levels = cfg.n_levels > 0 ? cfg.n_levels : 6;
  const std::vector<int> floors = {8, 16, 32, 64, 128};

  std::ostringstream os;
  os << "# experiment=feature-sweep problems=8 methods=" << join(methods)
     << " min_elements=" << join_ints(floors)
     << " gap_fraction=2^(-n/3) n=6..24 n_levels=" << n_levels
     << " strategy=resolution lambda_crit=0.25 n_el=" << cfg.n_el
     << " n_t=" << cfg.n_t << " nu=20" << solve_defaults_comment() << '\n';
  os << "experiment,problem,method,min_elements,gap_fraction,lambda_eff,"
        "path,factor,cycles,cause\n";

  for (const std::string& name : methods) {
    const RediscretisationMethod method = parse_method(name);
    for (int floor : floors) {
      for (int n = 6; n <= 24; ++n) {
        const double fraction = std::pow(2.0, -n / 3.0);
        const ProblemInstance inst =
            make_gap_problem(fraction, false, cfg.n_el, cfg.n_t);
        PlanRequest req;
        req.n_levels = n_levels;
        req.lambda_crit = 0.25;
        req.strategy = PlanStrategy::Resolution;
        req.reassembly = method.reassembly;
        req.min_elements = floor;
        req.chi = &inst.design;
        req.mat = &inst.preset.mat;
        const CoarseningPath path = plan_coarsening(inst.grid, req);
        const SolveReport rep = run_study_solve(inst, method, path, 20);
        os << "feature-sweep,8," << name << ',' << floor << ','
           << fmt(fraction) << ',' << fmt(effective_lambda(inst.grid)) << ','
           << csv(path_to_string(path)) << ',' << fmt(rep.factor) << ','
           << rep.cycles << ',' << status_name(rep.status) << '\n';
      }
    }
  }
  return {"feature-sweep.csv", os.str()};
}

// ---------------------------------------------------------------------------
// optimise
// ---------------------------------------------------------------------------

std::vector<CsvFile> build_optimise(const ExperimentConfig& cfg) {
  const std::vector<int> ids = resolve_problems(cfg, {7});
  if (ids.size() != 1 || ids[0] != 7)
    throw std::invalid_argument(
        "optimise: the optimisation geometry is the metal-ramp domain "
        "(problem 7)");
  const std::vector<std::string> methods =
      cfg.methods.empty() ? std::vector<std::string>{"BR", "CR", "CP"}
                          : cfg.methods;
  std::vector<std::string> restarts =
      cfg.restarts.empty() ? std::vector<std::string>{"warm", "cold"}
                           : cfg.restarts;
  for (const std::string& r : restarts)
    if (r != "warm" && r != "cold")
      throw std::invalid_argument("optimise: unknown restart mode '" + r +
                                  "'");
  if (cfg.max_iterations < 1)
    throw std::invalid_argument("optimise: max_iterations must be positive");
  const int n_levels = cfg.n_levels > 0 ? cfg.n_levels : 6;

  const ProblemPreset& pre = problem_preset(7);
  std::vector<CsvFile> files;

  for (const std::string& name : methods) {
    const RediscretisationMethod method = parse_method(name);
    for (const std::string& restart : restarts) {
      OptimisationOptions opts;
      opts.method = method;
      opts.strategy = PlanStrategy::DesignIndependent;
      opts.n_levels = n_levels;
      opts.lambda_crit = 0.25;
      opts.warm_start = restart == "warm";
      opts.max_iterations = cfg.max_iterations;
      opts.solve.nu = 20;

      const SpaceTimeGrid geom =
          build_fine_grid(pre.length, pre.t_default, cfg.n_el, cfg.n_t);
      const OptimisationResult res = optimise(geom, pre.mat, opts);

      const std::string tag = name + "-" + restart;
      const std::string config_line =
          "# experiment=optimise problem=7 method=" + name + " restart=" +
          restart + " strategy=design-independent n_levels=" +
          std::to_string(n_levels) + " lambda_crit=0.25 nu=20" +
          solve_defaults_comment() + " volume_limit=" +
          fmt_short(opts.volume_limit) + " theta_ref=" +
          fmt_short(opts.theta_ref) + " chi_init=" +
          fmt_short(opts.chi_init) + " max_iterations=" +
          std::to_string(opts.max_iterations) + " rel_change_tol=" +
          fmt_short(opts.rel_change_tol) + " stable_iterations=" +
          std::to_string(opts.stable_iterations) + " n_el=" +
          std::to_string(cfg.n_el) + " n_t=" + std::to_string(cfg.n_t);

      std::ostringstream hist;
      hist << config_line << " converged="
           << (res.converged ? "true" : "false") << '\n';
      hist << "cycle,theta,volume,primal_cycles,adjoint_cycles,restart_mode,"
              "method\n";
      for (const IterationRecord& rec : res.history)
        hist << rec.iteration << ',' << fmt(rec.theta) << ','
             << fmt(rec.volume) << ',' << rec.primal_cycles << ','
             << rec.adjoint_cycles << ',' << restart << ',' << name << '\n';
      files.push_back({"optimise-history-" + tag + ".csv", hist.str()});

      // Design snapshots at power-of-two cycles plus the final evaluated
      // design.
      auto snapshot = [&](int cycle, const std::string& suffix) {
        std::ostringstream snap;
        snap << config_line << " cycle=" << cycle << '\n';
        write_design_csv(snap, res.design_history[cycle - 1]);
        files.push_back(
            {"optimise-design-" + tag + "-" + suffix + ".csv", snap.str()});
      };
      for (int k = 1; k < res.iterations; k *= 2) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "cycle%04d", k);
        snapshot(k, buf);
      }
      snapshot(res.iterations, "final");
    }
  }
  return files;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public interface
// ---------------------------------------------------------------------------

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{
      "anisotropy-sweep", "contrast-sweep", "levels-sweep", "feature-sweep",
      "optimise"};
  return names;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const std::string& item : split_list(s)) out.push_back(parse_int(item));
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

std::vector<std::string> parse_method_list(const std::string& s) {
  std::vector<std::string> out = split_list(s);
  if (out.empty()) throw std::invalid_argument("empty method list");
  return out;
}

std::pair<int, int> parse_level_range(const std::string& s) {
  const std::string t = trim(s);
  const auto dots = t.find("..");
  if (dots == std::string::npos) {
    const int v = parse_int(t);
    return {v, v};
  }
  return {parse_int(t.substr(0, dots)), parse_int(t.substr(dots + 2))};
}

ExperimentConfig parse_config_text(std::istream& in, ExperimentConfig base) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key=value, got '" + stripped +
                                  "'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key == "experiment") {
      base.experiment = value;
    } else if (key == "problem" || key == "problems") {
      base.problems = parse_int_list(value);
    } else if (key == "methods") {
      base.methods = split_list(value);
    } else if (key == "levels") {
      const auto [lo, hi] = parse_level_range(value);
      base.levels_min = lo;
      base.levels_max = hi;
    } else if (key == "n_levels") {
      base.n_levels = parse_int(value);
    } else if (key == "restart" || key == "restarts") {
      base.restarts = split_list(value);
    } else if (key == "diagnostics") {
      base.diagnostics = parse_bool(value);
    } else if (key == "n_el") {
      base.n_el = parse_int(value);
    } else if (key == "n_t") {
      base.n_t = parse_int(value);
    } else if (key == "max_iterations") {
      base.max_iterations = parse_int(value);
    } else if (key == "out") {
      base.out_dir = value;
    } else {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": unknown key '" + key + "'");
    }
  }
  return base;
}

std::vector<CsvFile> build_experiment(const ExperimentConfig& cfg) {
  if (cfg.n_el <= 0 || cfg.n_t <= 0)
    throw std::invalid_argument("experiment: resolution must be positive");
  if (cfg.experiment == "anisotropy-sweep") return {build_anisotropy(cfg)};
  if (cfg.experiment == "contrast-sweep") return {build_contrast(cfg)};
  if (cfg.experiment == "levels-sweep") return {build_levels(cfg)};
  if (cfg.experiment == "feature-sweep") return {build_feature(cfg)};
  if (cfg.experiment == "optimise") return build_optimise(cfg);
  throw std::invalid_argument("unknown experiment '" + cfg.experiment +
                              "'; expected one of: " +
                              join(experiment_names()));
}

std::vector<std::string> run_experiment(const ExperimentConfig& cfg) {
  const std::vector<CsvFile> files = build_experiment(cfg);
  namespace fs = std::filesystem;
  const fs::path dir = cfg.out_dir.empty() ? fs::path(".")
                                           : fs::path(cfg.out_dir);
  fs::create_directories(dir);
  std::vector<std::string> paths;
  for (const CsvFile& f : files) {
    const fs::path p = dir / f.name;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + p.string());
    out << f.body;
    if (!out) throw std::runtime_error("write failed for " + p.string());
    paths.push_back(p.string());
  }
  return paths;
}

}  // namespace stmg
