#pragma once

// Space-time grid for the one-dimensional transient conduction problem.
//
// Space is discretised into n_el equal linear elements on [0, L]; time into
// n_t backward-Euler steps on [0, t_T].  The all-at-once unknown vector
// stacks every nodal temperature of every time level, ordered time-major:
//
//     flat = n * (n_el + 1) + i      (time level n, spatial node i)
//
// so one contiguous block per time level.  Per-element conductivity and
// capacity live on the grid once a design has been evaluated; geometric
// helpers work without them.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace stmg {

// Direction a grid is coarsened in.  FullST (both at once) exists only for
// the two-grid anisotropy study; level-selection strategies never emit it.
enum class CoarseningDirection { SpaceX, TimeT, FullST };

const char* direction_name(CoarseningDirection d);

struct SpaceTimeGrid {
  double L = 0.0;    // domain length [m]
  double t_T = 0.0;  // terminal time [s]
  int n_el = 0;      // spatial elements
  int n_t = 0;       // time steps
  double dx = 0.0;   // L / n_el
  double dt = 0.0;   // t_T / n_t

  // Per-element conductivity/capacity; empty until a design is applied.
  std::vector<double> k;
  std::vector<double> c;

  int n_nodes() const { return n_el + 1; }
  int n_times() const { return n_t + 1; }
  std::size_t n_dofs() const {
    return static_cast<std::size_t>(n_times()) * n_nodes();
  }

  // Time-major flattening of (time level, spatial node).
  std::int32_t flatten(int n, int i) const {
    return static_cast<std::int32_t>(n) * n_nodes() + i;
  }
  std::pair<int, int> unflatten(std::int32_t flat) const {
    return {flat / n_nodes(), flat % n_nodes()};
  }

  // Element-centre coordinate of element e.
  double element_centre(int e) const { return (e + 0.5) * dx; }

  bool has_materials() const {
    return k.size() == static_cast<std::size_t>(n_el) && c.size() == k.size();
  }
};

// Build a fine grid.  All arguments must be positive.
SpaceTimeGrid build_fine_grid(double L, double t_T, int n_el, int n_t);

// Halve the element/step count in the given direction (both for FullST).
// Material arrays are left empty — level construction fills them.  Throws if
// a halved count would not be integral.
SpaceTimeGrid coarsen_grid(const SpaceTimeGrid& g, CoarseningDirection dir);

}  // namespace stmg
