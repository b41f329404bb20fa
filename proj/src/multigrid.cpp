#include "stmg/multigrid.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <utility>

#include "stmg/kernels.hpp"

namespace stmg {

// ---------------------------------------------------------------------------
// Exact coarsest-level solver
// ---------------------------------------------------------------------------

struct DirectSolver::Impl {
  Eigen::SparseMatrix<double> mat;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
};

DirectSolver::DirectSolver(const SparseMatrix& m) : impl_(new Impl) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("DirectSolver: matrix must be square");
  std::vector<Eigen::Triplet<double>> ts;
  ts.reserve(m.nnz());
  for (std::int32_t r = 0; r < m.rows(); ++r)
    for (std::int32_t p = m.row_ptr()[r]; p < m.row_ptr()[r + 1]; ++p)
      ts.emplace_back(r, m.col_idx()[p], m.values()[p]);
  impl_->mat.resize(m.rows(), m.cols());
  impl_->mat.setFromTriplets(ts.begin(), ts.end());
  impl_->mat.makeCompressed();
  impl_->lu.analyzePattern(impl_->mat);
  impl_->lu.factorize(impl_->mat);
  if (impl_->lu.info() != Eigen::Success)
    throw std::runtime_error(
        "DirectSolver: sparse LU factorisation failed (singular operator?)");
}

DirectSolver::DirectSolver(DirectSolver&&) noexcept = default;
DirectSolver& DirectSolver::operator=(DirectSolver&&) noexcept = default;
DirectSolver::~DirectSolver() = default;

void DirectSolver::solve(std::span<const double> rhs,
                         std::span<double> x) const {
  const auto n = static_cast<Eigen::Index>(impl_->mat.rows());
  if (std::cmp_not_equal(rhs.size(), n) || std::cmp_not_equal(x.size(), n))
    throw std::invalid_argument("DirectSolver::solve: size mismatch");
  const Eigen::Map<const Eigen::VectorXd> b(rhs.data(), n);
  const Eigen::VectorXd sol = impl_->lu.solve(b);
  if (impl_->lu.info() != Eigen::Success)
    throw std::runtime_error("DirectSolver::solve: back-substitution failed");
  std::memcpy(x.data(), sol.data(), sizeof(double) * rhs.size());
}

std::vector<double> direct_solve(const SparseMatrix& m,
                                 std::span<const double> rhs) {
  const DirectSolver solver(m);
  std::vector<double> x(rhs.size());
  solver.solve(rhs, x);
  return x;
}

// ---------------------------------------------------------------------------
// Hierarchy construction
// ---------------------------------------------------------------------------

namespace {

std::vector<double> reciprocal_diagonal(const SparseMatrix& J) {
  std::vector<double> d = J.diagonal();
  for (double& v : d) {
    if (v == 0.0)
      throw std::runtime_error(
          "build_hierarchy: level operator has a zero diagonal entry");
    v = 1.0 / v;
  }
  return d;
}

}  // namespace

LevelHierarchy build_hierarchy(const SpaceTimeGrid& fine,
                               const RediscretisationMethod& method,
                               const CoarseningPath& path,
                               const DesignField* chi,
                               const MaterialPair* mat) {
  if (!fine.has_materials())
    throw std::invalid_argument("build_hierarchy: fine grid has no materials");

  LevelHierarchy h;
  h.path = path;
  h.method = method;
  h.levels.reserve(path.dirs.size() + 1);
  h.transfers.reserve(path.dirs.size());

  {
    Level l0;
    l0.grid = fine;
    l0.J = assemble_system(fine).J;
    l0.inv_diag = reciprocal_diagonal(l0.J);
    h.levels.push_back(std::move(l0));
  }

  DesignField chi_level;
  const bool track_chi = method.reassembly == ReassemblyMethod::D;
  if (track_chi) {
    if (chi == nullptr || mat == nullptr)
      throw std::invalid_argument(
          "build_hierarchy: D reassembly needs the design field and materials");
    chi_level = *chi;
  }

  for (const CoarseningDirection dir : path.dirs) {
    const Level& prev = h.levels.back();

    SpaceTimeGrid cg = coarsen_grid(prev.grid, dir);
    CoarsenedMaterials cm =
        coarsen_materials(prev.grid, dir, method.reassembly,
                          track_chi ? &chi_level : nullptr, mat);
    cg.k = std::move(cm.k);
    cg.c = std::move(cm.c);
    if (track_chi) chi_level = std::move(*cm.chi);

    TransferPair t = build_transfer(prev.grid, cg, dir, method.interp);

    Level lc;
    lc.J = method.reassembly == ReassemblyMethod::P
               ? galerkin_operator(t.R, prev.J, t.P)
               : assemble_system(cg).J;
    lc.grid = std::move(cg);
    lc.inv_diag = reciprocal_diagonal(lc.J);

    h.transfers.push_back(std::move(t));
    h.levels.push_back(std::move(lc));
  }

  h.coarsest = std::make_unique<DirectSolver>(h.levels.back().J);
  return h;
}

LevelHierarchy transposed_hierarchy(const LevelHierarchy& h) {
  LevelHierarchy out;
  out.path = h.path;
  out.method = h.method;
  out.levels.reserve(h.levels.size());
  for (const Level& l : h.levels) {
    Level t;
    t.grid = l.grid;
    t.J = l.J.transposed();
    t.inv_diag = l.inv_diag;  // transposition keeps the diagonal
    out.levels.push_back(std::move(t));
  }
  out.transfers = h.transfers;
  out.coarsest = std::make_unique<DirectSolver>(out.levels.back().J);
  return out;
}

// ---------------------------------------------------------------------------
// V-cycle solver
// ---------------------------------------------------------------------------

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxCycles: return "max-cycles";
    case SolveStatus::Diverged: return "diverged";
  }
  return "?";
}

namespace {

// Per-level scratch storage for one solve.
struct Workspace {
  std::vector<std::vector<double>> f;  // restricted right-hand sides
  std::vector<std::vector<double>> x;  // coarse corrections
  std::vector<std::vector<double>> r;  // residual scratch
};

void v_cycle(const LevelHierarchy& h, int l, std::span<const double> f,
             std::span<double> x, Workspace& ws, const SolveOptions& opts) {
  if (l == h.n_levels() - 1) {
    h.coarsest->solve(f, x);
    return;
  }
  const Level& lev = h.levels[l];
  std::span<double> r(ws.r[l]);

  for (int s = 0; s < opts.nu; ++s) {
    lev.J.residual(f, x, r);
    kernels::jacobi_update(opts.omega, lev.inv_diag, r, x);
  }

  lev.J.residual(f, x, r);
  h.transfers[l].R.multiply(r, ws.f[l + 1]);
  std::fill(ws.x[l + 1].begin(), ws.x[l + 1].end(), 0.0);
  v_cycle(h, l + 1, ws.f[l + 1], ws.x[l + 1], ws, opts);
  h.transfers[l].P.multiply_add(ws.x[l + 1], x);

  for (int s = 0; s < opts.nu; ++s) {
    lev.J.residual(f, x, r);
    kernels::jacobi_update(opts.omega, lev.inv_diag, r, x);
  }
}

}  // namespace

SolveReport mg_solve(const LevelHierarchy& h, std::span<const double> b,
                     std::span<double> u, const SolveOptions& opts) {
  if (h.levels.empty()) throw std::invalid_argument("mg_solve: empty hierarchy");
  const std::size_t n = h.levels.front().grid.n_dofs();
  if (b.size() != n || u.size() != n)
    throw std::invalid_argument("mg_solve: vector size mismatch");
  if (opts.nu < 0 || opts.omega <= 0.0 || opts.tol <= 0.0 ||
      opts.div_tol <= opts.tol || opts.max_cycles < 0)
    throw std::invalid_argument("mg_solve: invalid options");

  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  Workspace ws;
  const int nl = h.n_levels();
  ws.f.resize(nl);
  ws.x.resize(nl);
  ws.r.resize(nl);
  ws.r[0].resize(n);
  for (int l = 1; l < nl; ++l) {
    const std::size_t nd = h.levels[l].grid.n_dofs();
    ws.f[l].resize(nd);
    ws.x[l].resize(nd);
    ws.r[l].resize(nd);
  }

  const double norm_b = kernels::norm2(b);
  SolveReport rep;
  rep.absolute_norms = norm_b == 0.0;
  const double denom = rep.absolute_norms ? 1.0 : norm_b;

  const auto residual_norm = [&] {
    h.levels.front().J.residual(b, u, ws.r[0]);
    return kernels::norm2(ws.r[0]) / denom;
  };

  const double r0 = residual_norm();
  rep.history.push_back(r0);
  if (r0 < opts.tol) {
    rep.status = SolveStatus::Converged;
    rep.seconds = elapsed();
    return rep;  // already solved: zero cycles, unit factor
  }

  rep.status = SolveStatus::MaxCycles;
  for (int cycle = 1; cycle <= opts.max_cycles; ++cycle) {
    v_cycle(h, 0, b, u, ws, opts);
    const double rn = residual_norm();
    rep.history.push_back(rn);
    rep.cycles = cycle;
    if (rn < opts.tol) {
      rep.status = SolveStatus::Converged;
      break;
    }
    if (!std::isfinite(rn) || rn > opts.div_tol) {
      rep.status = SolveStatus::Diverged;
      break;
    }
  }

  if (rep.cycles > 0)
    rep.factor = std::pow(rep.history.back() / r0, 1.0 / rep.cycles);
  rep.seconds = elapsed();
  return rep;
}

}  // namespace stmg
