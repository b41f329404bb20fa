#pragma once

// Catalogue of benchmark conduction problems.
//
// Ten presets cover the studies this library reproduces:
//   0    uniform unit materials; the terminal time is swept to vary the
//        anisotropy of the discretisation
//   1-6  linear design ramps with moderate-to-high contrast in conductivity
//        and/or capacity; the terminal time is swept to vary the effective
//        anisotropy
//   7    aluminium/epoxy ramp whose spatial features stay resolved even on
//        very coarse grids
//   8    aluminium domain split by a thin epoxy gap (small spatial feature)
//   9    epoxy domain bridged by a thin aluminium strip (reverse of 8)
//
// A preset fixes the domain length, the material pair, the design-field
// shape, and a terminal-time range; the resolution and the terminal time
// stay free so studies can sweep them.

#include <string>

#include "stmg/materials.hpp"
#include "stmg/mesh.hpp"

namespace stmg {

inline constexpr int kNumProblems = 10;

struct ProblemPreset {
  int id = 0;
  std::string name;     // short label used in CSV output
  double length = 1.0;  // domain length
  MaterialPair mat;
  // Terminal-time sweep bounds (equal when the preset has a single terminal
  // time) and the default used when a caller does not choose one.
  double t_low = 1.0;
  double t_high = 1.0;
  double t_default = 1.0;
  int n_default = 256;  // default n_el = n_t
};

// Catalogue entry; throws std::out_of_range outside [0, kNumProblems).
const ProblemPreset& problem_preset(int id);

// Design field of preset `id` at resolution n_el.
DesignField problem_design(int id, int n_el);

// A fully specified instance: grid with interpolated materials applied.
struct ProblemInstance {
  ProblemPreset preset;
  SpaceTimeGrid grid;
  DesignField design;
};

// Build preset `id` at the given resolution; t_terminal <= 0 selects the
// preset default.
ProblemInstance make_problem(int id, int n_el, int n_t,
                             double t_terminal = 0.0);

// The thin-gap family underlying presets 8 and 9 with the gap fraction as a
// free parameter (used by the resolution-guard study).  gap_fraction must be
// in (0, 1).
ProblemInstance make_gap_problem(double gap_fraction, bool inverted, int n_el,
                                 int n_t, double t_terminal = 0.0);

}  // namespace stmg
