#include "stmg/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stmg {
namespace {

void require_materials(const SpaceTimeGrid& g, const char* where) {
  if (!g.has_materials())
    throw std::invalid_argument(std::string(where) + ": grid has no materials");
}

}  // namespace

ElementMatrices element_matrices(double k, double c, double dx) {
  if (k <= 0.0 || c <= 0.0 || dx <= 0.0)
    throw std::invalid_argument("element_matrices: non-positive input");
  ElementMatrices m;
  const double kd = k / dx;
  m.K[0][0] = kd;
  m.K[0][1] = -kd;
  m.K[1][0] = -kd;
  m.K[1][1] = kd;
  const double cd = c * dx / 6.0;
  m.C[0][0] = 2.0 * cd;
  m.C[0][1] = cd;
  m.C[1][0] = cd;
  m.C[1][1] = 2.0 * cd;
  return m;
}

SpatialMatrices assemble_spatial(const SpaceTimeGrid& g) {
  require_materials(g, "assemble_spatial");
  std::vector<Triplet> tk, tc;
  tk.reserve(static_cast<std::size_t>(g.n_el) * 4);
  tc.reserve(static_cast<std::size_t>(g.n_el) * 4);
  for (int e = 0; e < g.n_el; ++e) {
    const ElementMatrices m = element_matrices(g.k[e], g.c[e], g.dx);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        tk.push_back({e + a, e + b, m.K[a][b]});
        tc.push_back({e + a, e + b, m.C[a][b]});
      }
  }
  const std::int32_t n = g.n_nodes();
  return {SparseMatrix::from_triplets(n, n, std::move(tk)),
          SparseMatrix::from_triplets(n, n, std::move(tc))};
}

double w_diri(const SpaceTimeGrid& g) {
  require_materials(g, "w_diri");
  const double k_max = *std::max_element(g.k.begin(), g.k.end());
  const double c_max = *std::max_element(g.c.begin(), g.c.end());
  return c_max * g.dx / g.dt + k_max / g.dx;
}

double heat_load_value(double x, double t, double L, double t_T) {
  const double xs = x / L - 0.5;
  const double ts = t / t_T - 0.5;
  return (1.0 + std::cos(200.0 * (xs * xs + ts * ts))) * 1.0e6;
}

std::vector<double> load_vector(
    const SpaceTimeGrid& g, const std::function<double(double, double)>& q) {
  std::vector<double> b(g.n_dofs(), 0.0);
  for (int n = 1; n <= g.n_t; ++n) {
    const double t = n * g.dt;
    for (int e = 0; e < g.n_el; ++e) {
      const double qe = q(g.element_centre(e), t) * g.dx / 2.0;
      b[g.flatten(n, e)] += qe;
      b[g.flatten(n, e + 1)] += qe;
    }
  }
  return b;
}

std::vector<double> load_vector(const SpaceTimeGrid& g) {
  return load_vector(g, [&g](double x, double t) {
    return heat_load_value(x, t, g.L, g.t_T);
  });
}

bool dof_is_masked(const SpaceTimeGrid& g, std::int32_t flat) {
  const auto [n, i] = g.unflatten(flat);
  return n == 0 || i == 0;
}

AssembledSystem assemble_system(const SpaceTimeGrid& g) {
  require_materials(g, "assemble_system");

  AssembledSystem sys;
  sys.w_diri = w_diri(g);
  sys.masked.assign(g.n_dofs(), 0);
  for (std::int32_t f = 0; f < static_cast<std::int32_t>(g.n_dofs()); ++f)
    sys.masked[f] = dof_is_masked(g, f) ? 1 : 0;

  // Block rows n = 1..n_t of the unmasked operator: (C/dt + K) on the
  // diagonal block, -C/dt on the sub-diagonal block.  Entries whose row or
  // column is a fixed DOF are dropped; fixed DOFs then get the single
  // diagonal entry w_diri.
  std::vector<Triplet> tr;
  tr.reserve(static_cast<std::size_t>(g.n_t) * g.n_el * 8 + g.n_dofs());
  for (int n = 1; n <= g.n_t; ++n) {
    for (int e = 0; e < g.n_el; ++e) {
      const ElementMatrices m = element_matrices(g.k[e], g.c[e], g.dx);
      for (int a = 0; a < 2; ++a) {
        const std::int32_t row = g.flatten(n, e + a);
        if (sys.masked[row]) continue;
        for (int bb = 0; bb < 2; ++bb) {
          const double cdt = m.C[a][bb] / g.dt;
          const std::int32_t col_same = g.flatten(n, e + bb);
          const std::int32_t col_prev = g.flatten(n - 1, e + bb);
          if (!sys.masked[col_same])
            tr.push_back({row, col_same, cdt + m.K[a][bb]});
          if (!sys.masked[col_prev]) tr.push_back({row, col_prev, -cdt});
        }
      }
    }
  }
  for (std::int32_t f = 0; f < static_cast<std::int32_t>(g.n_dofs()); ++f)
    if (sys.masked[f]) tr.push_back({f, f, sys.w_diri});

  const auto n_dofs = static_cast<std::int32_t>(g.n_dofs());
  sys.J = SparseMatrix::from_triplets(n_dofs, n_dofs, std::move(tr));

  sys.b = load_vector(g);
  for (std::int32_t f = 0; f < n_dofs; ++f)
    if (sys.masked[f]) sys.b[f] = 0.0;
  return sys;
}

}  // namespace stmg
