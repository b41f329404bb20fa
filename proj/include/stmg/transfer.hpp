#pragma once

// Grid-transfer operators between consecutive space-time levels.
//
// Prolongation P maps coarse DOFs to fine DOFs; one column per coarse DOF.
// Spatial coarsening uses linear interpolation (weight 1 on the coincident
// node, 1/2 on its fine neighbours).  Temporal coarsening comes in two
// flavours:
//
//   Causal   — each coarse value is copied to the two fine time levels it
//              covers (weights 1 and 1), so information never flows backwards
//              in time and the coarse operator stays lower block-triangular.
//   Bilinear — symmetric weights 1/2, 1, 1/2 across neighbouring fine time
//              levels; cheaper error per mode but couples levels both ways.
//
// Combined space-time coarsening tensors the causal temporal stencil with
// the spatial one.  Entries falling outside the grid are truncated without
// renormalising the rest.  Restriction is the scaled transpose R = s P^T
// with s = 1 for spatial and s = 1/2 for temporal or combined coarsening.

#include "stmg/mesh.hpp"
#include "stmg/sparse.hpp"

namespace stmg {

enum class InterpolationMethod { Causal, Bilinear };

const char* interpolation_name(InterpolationMethod m);

struct TransferPair {
  SparseMatrix P;  // (fine dofs) x (coarse dofs)
  SparseMatrix R;  // (coarse dofs) x (fine dofs), equal to s * P^T
  double s = 1.0;
};

// Restriction scaling for a coarsening direction.
double restriction_scale(CoarseningDirection dir);

// Build P for a fine/coarse pair that differs by exactly one coarsening step
// in `dir`.  Combined coarsening supports only the causal temporal stencil.
SparseMatrix build_prolongation(const SpaceTimeGrid& fine,
                                const SpaceTimeGrid& coarse,
                                CoarseningDirection dir,
                                InterpolationMethod interp);

// P together with R = s P^T (entrywise exact transpose-and-scale).
TransferPair build_transfer(const SpaceTimeGrid& fine,
                            const SpaceTimeGrid& coarse,
                            CoarseningDirection dir,
                            InterpolationMethod interp);

}  // namespace stmg
