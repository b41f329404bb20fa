#pragma once

// Discrete-adjoint topology optimisation of the transient conduction design.
//
// The objective is the load-weighted temperature integral
//
//     theta = b^T u * dt / theta_ref,
//
// where u solves the all-at-once system J u = b.  One adjoint solve with the
// transposed hierarchy, J^T lambda = b * dt / theta_ref, yields the full
// design gradient
//
//     d theta / d chi_e = - sum_{n>=1} [ lambda_n^T dK_e u_n
//                                      + lambda_n^T dC_e (u_n - u_{n-1})/dt ],
//
// assembled element by element from the material-law derivatives.  Masked
// degrees of freedom carry u = lambda = 0, so the Dirichlet replacement
// terms contribute nothing and are omitted.  The volume constraint
// sum(chi_e) dx / (limit * L) - 1 <= 0 is linear; designs move by MMA
// updates, and both state solves can warm-start from the previous design's
// solutions.

#include <span>
#include <string>
#include <vector>

#include "stmg/materials.hpp"
#include "stmg/mesh.hpp"
#include "stmg/mma.hpp"
#include "stmg/multigrid.hpp"
#include "stmg/rediscretisation.hpp"
#include "stmg/strategy.hpp"

namespace stmg {

// Load vector with the Dirichlet/initial-condition pattern zeroed; this is
// the all-at-once right-hand side and is independent of the design.
std::vector<double> masked_load_vector(const SpaceTimeGrid& g);

// theta = b^T u * dt / theta_ref.
double objective_value(std::span<const double> b, std::span<const double> u,
                       double dt, double theta_ref);

// Right-hand side of the adjoint system, b * dt / theta_ref.
std::vector<double> adjoint_rhs(std::span<const double> b, double dt,
                                double theta_ref);

// Design gradient of theta via the adjoint solution (element-local
// accumulation; masked entries of u and lambda are treated as zero).
std::vector<double> objective_sensitivities(const SpaceTimeGrid& g,
                                            const MaterialPair& mat,
                                            const DesignField& chi,
                                            std::span<const double> u,
                                            std::span<const double> lambda);

// Material volume fraction sum(chi_e) dx / L.
double volume_fraction(const DesignField& chi, const SpaceTimeGrid& g);

struct OptimisationOptions {
  RediscretisationMethod method{InterpolationMethod::Causal,
                                ReassemblyMethod::R};
  PlanStrategy strategy = PlanStrategy::Contrast;
  int n_levels = 6;
  double lambda_crit = 0.25;
  int min_elements = 0;      // Resolution strategy floor
  bool warm_start = true;    // reuse previous state/adjoint solutions
  double volume_limit = 0.5; // allowed volume fraction of conductor
  double theta_ref = 1e6;
  double chi_init = 0.5;
  int max_iterations = 500;
  double rel_change_tol = 1e-3;  // |d theta| / |theta| threshold ...
  int stable_iterations = 5;     // ... held for this many iterations
  SolveOptions solve{.nu = 20};
  MmaOptions mma{};
};

struct IterationRecord {
  int iteration = 0;  // 1-based
  double theta = 0.0;
  double volume = 0.0;      // volume fraction
  double constraint = 0.0;  // volume/limit - 1
  double change = 0.0;      // |theta - theta_prev| / |theta|
  std::string path;         // coarsening path used this iteration
  SolveStatus primal_status = SolveStatus::MaxCycles;
  SolveStatus adjoint_status = SolveStatus::MaxCycles;
  int primal_cycles = 0;
  int adjoint_cycles = 0;
  double primal_factor = 0.0;
  double adjoint_factor = 0.0;
  double primal_seconds = 0.0;
  double adjoint_seconds = 0.0;
};

struct OptimisationResult {
  DesignField chi;
  double theta = 0.0;
  bool converged = false;
  int iterations = 0;
  std::vector<IterationRecord> history;
  // Design evaluated at each iteration (history[i] describes the solve on
  // design_history[i]); `chi` is the final post-update design.
  std::vector<DesignField> design_history;
  double seconds = 0.0;
};

// Run the optimisation on the given geometry (materials on `geom` are
// ignored; each iteration interpolates them from the current design).
OptimisationResult optimise(const SpaceTimeGrid& geom, const MaterialPair& mat,
                            const OptimisationOptions& opts = {});

}  // namespace stmg
