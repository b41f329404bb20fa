#pragma once

// Independent reference implementations used only by the test suite.
//
// The sequential solver marches the backward-Euler recurrence one step at a
// time with its own tridiagonal assembly and a Thomas solve — it shares
// nothing with the all-at-once solver beyond the per-element matrices and
// the pointwise load formula, so agreement between the two is meaningful
// evidence.  The gradient reference differentiates the objective by finite
// differences with a full re-solve per perturbed design variable.

#include <cstddef>
#include <functional>
#include <vector>

#include "stmg/materials.hpp"
#include "stmg/mesh.hpp"

namespace stmg::oracle {

template <class T>
struct OracleResult {
  T value{};
  std::size_t n_dofs = 0;
  double seconds = 0.0;
};

// Temperature history in the all-at-once layout (time-major), computed by
// sequential time stepping.  Requires grid materials.  The load defaults to
// the standard heat source; tests may substitute q(x, t).
OracleResult<std::vector<double>> timestep_solve(
    const SpaceTimeGrid& g, const std::function<double(double, double)>& q);
OracleResult<std::vector<double>> timestep_solve(const SpaceTimeGrid& g);

// Heat-compliance objective (load-weighted temperature integral, normalised
// by theta_ref) evaluated from a sequential solve on `geom` with materials
// interpolated from `chi`.
double objective_value(const SpaceTimeGrid& geom, const MaterialPair& mat,
                       const DesignField& chi, double theta_ref);

// d(objective)/d(chi_e) by second-order finite differences with step h;
// central where the box [0, 1] allows, one-sided three-point at the edges.
OracleResult<std::vector<double>> fd_gradient(const SpaceTimeGrid& geom,
                                              const MaterialPair& mat,
                                              const DesignField& chi,
                                              double theta_ref,
                                              double h = 1e-6);

}  // namespace stmg::oracle
