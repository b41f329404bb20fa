#pragma once

// Method of moving asymptotes for box-constrained design updates with one
// inequality constraint.
//
// Each update builds the separable convex approximation around the current
// design: positive gradient parts are expanded in 1/(U - x), negative parts
// in 1/(x - L), with per-variable asymptotes L < x < U that adapt to the
// iteration history (shrink on oscillation, expand on monotone progress).
// The subproblem is solved exactly in the dual: for a single constraint the
// dual variable is a scalar, the primal minimiser has a closed form per
// design variable, and a bisection drives the approximated constraint to its
// boundary.  The bisection always returns the dual-feasible side, and since
// the approximation majorises a linear constraint, every accepted design
// satisfies the true constraint whenever the previous one did.

#include <cstddef>
#include <span>
#include <vector>

namespace stmg {

struct MmaOptions {
  double x_min = 0.0;      // box lower bound
  double x_max = 1.0;      // box upper bound
  double move_limit = 0.2; // per-iteration change cap, fraction of the range
  double asym_init = 0.5;  // initial asymptote distance, fraction of range
  double asym_shrink = 0.7;
  double asym_grow = 1.2;
};

// Solve one MMA subproblem: minimise the approximation of the objective with
// gradient df subject to the approximation of the constraint (value g,
// gradient dg) being non-positive, with asymptotes (lower, upper) and
// variable bounds [alpha, beta].  Variables with zero gradients stay put.
std::vector<double> mma_subsolve(std::span<const double> x,
                                 std::span<const double> df,
                                 std::span<const double> dg, double g,
                                 std::span<const double> lower,
                                 std::span<const double> upper,
                                 std::span<const double> alpha,
                                 std::span<const double> beta);

class MmaUpdater {
 public:
  explicit MmaUpdater(std::size_t n, const MmaOptions& opts = {});

  // One design update.  g is the current constraint value (feasible: g <= 0).
  std::vector<double> update(std::span<const double> x,
                             std::span<const double> df,
                             std::span<const double> dg, double g);

  // Current asymptotes (after the last update) — diagnostics and tests.
  const std::vector<double>& lower() const { return low_; }
  const std::vector<double>& upper() const { return upp_; }
  int iterations() const { return iter_; }

 private:
  MmaOptions opts_;
  std::size_t n_;
  int iter_ = 0;
  std::vector<double> x_prev_, x_prev2_, low_, upp_;
};

}  // namespace stmg
