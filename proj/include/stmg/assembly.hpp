#pragma once

// Finite-element assembly of the all-at-once backward-Euler system.
//
// Linear elements in space, implicit Euler in time.  Stacking all time
// levels gives one block lower-bidiagonal system J u = b with diagonal
// blocks (C/dt + K) and sub-diagonal blocks -C/dt.  Fixed-temperature
// conditions (left end at every time level, every node at the initial time)
// are imposed algebraically: with the masking projector B that zeroes the
// fixed DOFs,
//
//     J = B J_neu B + w (I - B),      b = B b_neu,
//
// which leaves each fixed DOF with the single diagonal entry w.  The weight
// w is sized like the largest interior diagonal entry so the masked rows
// neither dominate nor vanish in the smoother's scaling.

#include <cstdint>
#include <functional>
#include <vector>

#include "stmg/mesh.hpp"
#include "stmg/sparse.hpp"

namespace stmg {

// 2x2 conduction and capacity matrices of one linear element.
struct ElementMatrices {
  double K[2][2];
  double C[2][2];
};

// K_e = (k/dx) [[1,-1],[-1,1]],  C_e = (c dx/6) [[2,1],[1,2]].
ElementMatrices element_matrices(double k, double c, double dx);

// Assembled spatial conduction/capacity matrices (n_nodes x n_nodes).
// Requires grid materials.
struct SpatialMatrices {
  SparseMatrix K;
  SparseMatrix C;
};
SpatialMatrices assemble_spatial(const SpaceTimeGrid& g);

// Diagonal weight for fixed DOFs: max_e(c_e) dx/dt + max_e(k_e)/dx.
double w_diri(const SpaceTimeGrid& g);

// Volumetric heat source [W/m^3] at position x, time t: a cosine bump over
// the space-time domain, peaked at its centre.
double heat_load_value(double x, double t, double L, double t_T);

// All-at-once load vector before masking: the source is sampled at element
// centres and each element sends q dx/2 to both of its nodes; the initial
// time level carries no load.  The two-argument overload evaluates q(x, t).
std::vector<double> load_vector(const SpaceTimeGrid& g,
                                const std::function<double(double, double)>& q);
std::vector<double> load_vector(const SpaceTimeGrid& g);

struct AssembledSystem {
  SparseMatrix J;
  std::vector<double> b;
  double w_diri = 0.0;
  std::vector<std::uint8_t> masked;  // 1 = fixed-temperature DOF

  std::size_t n_dofs() const { return b.size(); }
};

// DOF (n, i) is fixed iff n == 0 or i == 0.
bool dof_is_masked(const SpaceTimeGrid& g, std::int32_t flat);

// Full system for one grid (requires materials).
AssembledSystem assemble_system(const SpaceTimeGrid& g);

}  // namespace stmg
