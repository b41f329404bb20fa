#include "stmg/problems.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stmg {
namespace {

// Measured properties of aluminium and an epoxy resin polymer, rounded to
// three significant digits.
constexpr double kAluminiumK = 2.14e2;   // W/(m K)
constexpr double kAluminiumC = 2.41e6;   // J/(m^3 K)
constexpr double kEpoxyK = 1.97e-1;
constexpr double kEpoxyC = 1.67e6;

MaterialPair uniform_pair() {
  MaterialPair m;
  m.k_ins = m.k_con = 1.0;
  m.c_ins = m.c_con = 1.0;
  return m;
}

// Non-dimensional pair: the conductor is the unit material and the insulator
// carries the requested contrasts.
MaterialPair contrast_pair(double k_ins, double c_ins) {
  MaterialPair m;
  m.k_con = 1.0;
  m.c_con = 1.0;
  m.k_ins = k_ins;
  m.c_ins = c_ins;
  return m;
}

MaterialPair metal_pair() {
  MaterialPair m;
  m.k_con = kAluminiumK;
  m.c_con = kAluminiumC;
  m.k_ins = kEpoxyK;
  m.c_ins = kEpoxyC;
  return m;
}

ProblemPreset sweep_ramp(int id, std::string name, double k_ins, double c_ins,
                         int exp_low, int exp_high) {
  ProblemPreset p;
  p.id = id;
  p.name = std::move(name);
  p.length = 1.0;
  p.mat = contrast_pair(k_ins, c_ins);
  p.t_low = std::ldexp(1.0, exp_low);
  p.t_high = std::ldexp(1.0, exp_high);
  p.t_default = std::ldexp(1.0, (exp_low + exp_high) / 2);
  return p;
}

std::array<ProblemPreset, kNumProblems> build_catalogue() {
  std::array<ProblemPreset, kNumProblems> cat;

  // 0: homogeneous unit materials; terminal time swept over 2^-18..2^2 so
  // the anisotropy covers 2^-10..2^10 at the default 256x256 resolution.
  cat[0].id = 0;
  cat[0].name = "uniform";
  cat[0].length = 1.0;
  cat[0].mat = uniform_pair();
  cat[0].t_low = std::ldexp(1.0, -18);
  cat[0].t_high = std::ldexp(1.0, 2);
  cat[0].t_default = std::ldexp(1.0, -8);  // unit anisotropy at 256x256

  // 1-6: design ramps (transition width 1/alpha = 0.1) with contrast in the
  // insulating phase; terminal-time ranges keep the effective anisotropy
  // between roughly 2^-6 and 2^3 at 256x256.
  cat[1] = sweep_ramp(1, "ramp-k100", 1e-2, 1.0, -10, -2);
  cat[2] = sweep_ramp(2, "ramp-k10000", 1e-4, 1.0, -7, 1);
  cat[3] = sweep_ramp(3, "ramp-k10000-left", 1e-4, 1.0, -7, 1);
  cat[4] = sweep_ramp(4, "ramp-k10000-right", 1e-4, 1.0, -7, 1);
  cat[5] = sweep_ramp(5, "ramp-c10000", 1.0, 1e-4, -20, -12);
  cat[6] = sweep_ramp(6, "ramp-kc10000", 1e-4, 1e-4, -12, -4);

  // 7: aluminium/epoxy ramp on a 0.1 m domain; every spatial feature is
  // wide enough to survive aggressive spatial coarsening.
  cat[7].id = 7;
  cat[7].name = "metal-ramp";
  cat[7].length = 0.1;
  cat[7].mat = metal_pair();
  cat[7].t_low = cat[7].t_high = cat[7].t_default = 10.0;

  // 8/9: thin insulating gap in a conducting domain and its phase-flipped
  // counterpart (a thin conducting strip in an insulating domain).
  cat[8].id = 8;
  cat[8].name = "metal-gap";
  cat[8].length = 0.1;
  cat[8].mat = metal_pair();
  cat[8].t_low = cat[8].t_high = cat[8].t_default = 100.0;

  cat[9] = cat[8];
  cat[9].id = 9;
  cat[9].name = "metal-strip";

  return cat;
}

const std::array<ProblemPreset, kNumProblems>& catalogue() {
  static const std::array<ProblemPreset, kNumProblems> cat = build_catalogue();
  return cat;
}

constexpr double kGapFraction = 0.03;

}  // namespace

const ProblemPreset& problem_preset(int id) {
  if (id < 0 || id >= kNumProblems)
    throw std::out_of_range("problem_preset: id " + std::to_string(id) +
                            " outside [0, " + std::to_string(kNumProblems) +
                            ")");
  return catalogue()[static_cast<std::size_t>(id)];
}

DesignField problem_design(int id, int n_el) {
  const ProblemPreset& p = problem_preset(id);
  if (n_el <= 0)
    throw std::invalid_argument("problem_design: non-positive element count");
  switch (id) {
    case 0:
      // Pure conductor everywhere; with zero contrast any design gives the
      // same unit materials.
      return DesignField{std::vector<double>(static_cast<std::size_t>(n_el),
                                             1.0)};
    case 1:
    case 2:
    case 5:
    case 6:
      return design_ramp(n_el, p.length, 10.0, 0.5);
    case 3:
      return design_ramp(n_el, p.length, 10.0, 0.15);
    case 4:
      return design_ramp(n_el, p.length, 10.0, 0.85);
    case 7:
      // Transition width 1/alpha spans a fifth of the domain.
      return design_ramp(n_el, p.length, 5.0 / p.length, p.length / 2.0);
    case 8:
      return design_gap(n_el, p.length, kGapFraction, /*inverted=*/false);
    case 9:
      return design_gap(n_el, p.length, kGapFraction, /*inverted=*/true);
    default:
      throw std::out_of_range("problem_design: unhandled id");
  }
}

ProblemInstance make_problem(int id, int n_el, int n_t, double t_terminal) {
  ProblemInstance inst;
  inst.preset = problem_preset(id);
  const double t = t_terminal > 0.0 ? t_terminal : inst.preset.t_default;
  inst.grid = build_fine_grid(inst.preset.length, t, n_el, n_t);
  inst.design = problem_design(id, n_el);
  apply_design(inst.grid.k, inst.grid.c, inst.design, inst.preset.mat);
  return inst;
}

ProblemInstance make_gap_problem(double gap_fraction, bool inverted, int n_el,
                                 int n_t, double t_terminal) {
  if (!(gap_fraction > 0.0) || !(gap_fraction < 1.0))
    throw std::invalid_argument(
        "make_gap_problem: gap fraction must lie in (0, 1)");
  ProblemInstance inst;
  inst.preset = problem_preset(inverted ? 9 : 8);
  const double t = t_terminal > 0.0 ? t_terminal : inst.preset.t_default;
  inst.grid = build_fine_grid(inst.preset.length, t, n_el, n_t);
  inst.design = design_gap(n_el, inst.preset.length, gap_fraction, inverted);
  apply_design(inst.grid.k, inst.grid.c, inst.design, inst.preset.mat);
  return inst;
}

}  // namespace stmg
