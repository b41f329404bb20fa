#pragma once

// Space-time multigrid for the all-at-once backward-Euler system.
//
// A hierarchy is a chain of levels, each one coarsening step away from the
// previous, with prolongation/restriction pairs between neighbours.  Coarse
// operators come either from re-assembling the discretisation with coarsened
// materials (K, D, R reassembly) or from the Galerkin triple product R J P
// (P reassembly).  The V-cycle smooths with damped Jacobi, restricts the
// residual, recurses, prolongates the correction, and smooths again; the
// coarsest system is solved exactly with a sparse LU factorisation that is
// computed once per hierarchy.
//
// The adjoint of the whole solver is obtained by transposing every level
// operator while keeping the same transfer pairs: with R = s P^T the coarse
// correction P (R J P)^-T R matches the Galerkin-consistent choice exactly,
// so the transposed hierarchy converges like the primal one.

#include <memory>
#include <span>
#include <vector>

#include "stmg/assembly.hpp"
#include "stmg/mesh.hpp"
#include "stmg/rediscretisation.hpp"
#include "stmg/sparse.hpp"
#include "stmg/strategy.hpp"
#include "stmg/transfer.hpp"

namespace stmg {

// Exact sparse LU solve (opaque wrapper, factorised on construction).
class DirectSolver {
 public:
  explicit DirectSolver(const SparseMatrix& m);
  DirectSolver(DirectSolver&&) noexcept;
  DirectSolver& operator=(DirectSolver&&) noexcept;
  ~DirectSolver();

  void solve(std::span<const double> rhs, std::span<double> x) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Convenience: factorise once and solve a single right-hand side.
std::vector<double> direct_solve(const SparseMatrix& m,
                                 std::span<const double> rhs);

struct Level {
  SpaceTimeGrid grid;            // geometry + per-element materials
  SparseMatrix J;                // level operator
  std::vector<double> inv_diag;  // reciprocal diagonal for Jacobi
};

struct LevelHierarchy {
  std::vector<Level> levels;            // [0] finest
  std::vector<TransferPair> transfers;  // [l] connects level l and l+1
  CoarseningPath path;
  RediscretisationMethod method;
  std::unique_ptr<DirectSolver> coarsest;

  int n_levels() const { return static_cast<int>(levels.size()); }
};

// Build the hierarchy for a planned coarsening path.  The fine grid must
// carry materials; the design field and material pair are required only by
// D reassembly (they feed the level-by-level design averaging).
LevelHierarchy build_hierarchy(const SpaceTimeGrid& fine,
                               const RediscretisationMethod& method,
                               const CoarseningPath& path,
                               const DesignField* chi = nullptr,
                               const MaterialPair* mat = nullptr);

// Same levels and transfers with every operator transposed (adjoint solve).
LevelHierarchy transposed_hierarchy(const LevelHierarchy& h);

enum class SolveStatus { Converged, MaxCycles, Diverged };

const char* status_name(SolveStatus s);

struct SolveOptions {
  int nu = 5;             // pre- and post-smoothing sweeps per level
  double omega = 0.5;     // Jacobi damping
  double tol = 1e-9;      // relative-residual convergence threshold
  double div_tol = 1e9;   // relative-residual divergence threshold
  int max_cycles = 100;
};

struct SolveReport {
  SolveStatus status = SolveStatus::MaxCycles;
  int cycles = 0;
  // Geometric-mean residual reduction per cycle, (r_N / r_0)^(1/N);
  // defined as 1 when no cycle ran.
  double factor = 1.0;
  // Relative residual per cycle; history[0] is the initial residual, which
  // is exactly 1 for a zero initial guess.
  std::vector<double> history;
  bool absolute_norms = false;  // fell back to absolute norms (|b| == 0)
  double seconds = 0.0;
};

// Solve J u = b by V-cycles, starting from the caller's u (warm starts are
// supported; pass zeros for a cold start).  A single-level hierarchy applies
// the exact solver directly.
SolveReport mg_solve(const LevelHierarchy& h, std::span<const double> b,
                     std::span<double> u, const SolveOptions& opts = {});

}  // namespace stmg
