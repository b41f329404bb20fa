#include "stmg/mesh.hpp"

#include <stdexcept>

namespace stmg {

const char* direction_name(CoarseningDirection d) {
  switch (d) {
    case CoarseningDirection::SpaceX: return "x";
    case CoarseningDirection::TimeT: return "t";
    case CoarseningDirection::FullST: return "xt";
  }
  return "?";
}

SpaceTimeGrid build_fine_grid(double L, double t_T, int n_el, int n_t) {
  if (L <= 0.0 || t_T <= 0.0)
    throw std::invalid_argument("build_fine_grid: non-positive extent");
  if (n_el <= 0 || n_t <= 0)
    throw std::invalid_argument("build_fine_grid: non-positive count");
  SpaceTimeGrid g;
  g.L = L;
  g.t_T = t_T;
  g.n_el = n_el;
  g.n_t = n_t;
  g.dx = L / n_el;
  g.dt = t_T / n_t;
  return g;
}

SpaceTimeGrid coarsen_grid(const SpaceTimeGrid& g, CoarseningDirection dir) {
  const bool halve_x = dir != CoarseningDirection::TimeT;
  const bool halve_t = dir != CoarseningDirection::SpaceX;
  if (halve_x && g.n_el % 2 != 0)
    throw std::invalid_argument("coarsen_grid: odd element count");
  if (halve_t && g.n_t % 2 != 0)
    throw std::invalid_argument("coarsen_grid: odd step count");
  if ((halve_x && g.n_el < 2) || (halve_t && g.n_t < 2))
    throw std::invalid_argument("coarsen_grid: grid too small to coarsen");
  return build_fine_grid(g.L, g.t_T, halve_x ? g.n_el / 2 : g.n_el,
                         halve_t ? g.n_t / 2 : g.n_t);
}

}  // namespace stmg
