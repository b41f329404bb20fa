#pragma once

// Construction of coarse-level operators.
//
// Two independent choices define how a coarse level is discretised: the
// temporal interpolation used by the grid transfers (causal C / bilinear B)
// and how the coarse matrix is obtained:
//
//   K — reassemble from arithmetically averaged conductivity and capacity;
//   D — average the design field itself, then re-interpolate materials;
//   R — average thermal resistivity: harmonic mean for k (series
//       conduction through the merged pair), arithmetic mean for c;
//   P — no reassembly at all: project the fine operator, J_c = R J_f P.
//
// Temporal coarsening never touches materials — elements are unchanged, only
// dt doubles.  The P method still carries K-style averaged materials, purely
// as a surrogate for anisotropy indicators; its matrix ignores them, and no
// fixed-DOF post-processing is applied to the projected operator (masked
// fine rows propagate through the product).
//
// The eight combinations are named by two letters, e.g. "CK", "BR", "CP".

#include <optional>
#include <string>
#include <string_view>

#include "stmg/materials.hpp"
#include "stmg/mesh.hpp"
#include "stmg/sparse.hpp"
#include "stmg/transfer.hpp"

namespace stmg {

enum class ReassemblyMethod { K, D, R, P };

struct RediscretisationMethod {
  InterpolationMethod interp = InterpolationMethod::Causal;
  ReassemblyMethod reassembly = ReassemblyMethod::K;
};

// Two-letter name ("CK", "BP", ...).
std::string method_name(const RediscretisationMethod& m);

// Parse a two-letter name; throws on anything else.
RediscretisationMethod parse_method(std::string_view name);

// All eight methods in a fixed order (CK, CD, CR, CP, BK, BD, BR, BP).
const std::vector<RediscretisationMethod>& all_methods();

// Materials (and, for the D method, the design field) of one coarser level.
struct CoarsenedMaterials {
  std::vector<double> k;
  std::vector<double> c;
  std::optional<DesignField> chi;  // carried only by the D method
};

// Coarsen per-element data one step.  The D method needs the fine design
// field and the material pair; the others ignore them.  Temporal coarsening
// copies everything unchanged.
CoarsenedMaterials coarsen_materials(const SpaceTimeGrid& fine,
                                     CoarseningDirection dir,
                                     ReassemblyMethod method,
                                     const DesignField* chi,
                                     const MaterialPair* mat);

// Galerkin coarse operator R J P (used by the P method).
SparseMatrix galerkin_operator(const SparseMatrix& R, const SparseMatrix& J,
                               const SparseMatrix& P);

}  // namespace stmg
