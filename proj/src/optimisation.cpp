#include "stmg/optimisation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stmg/assembly.hpp"
#include "stmg/kernels.hpp"

namespace stmg {

std::vector<double> masked_load_vector(const SpaceTimeGrid& g) {
  std::vector<double> b = load_vector(g);
  for (std::size_t d = 0; d < b.size(); ++d)
    if (dof_is_masked(g, static_cast<std::int32_t>(d))) b[d] = 0.0;
  return b;
}

double objective_value(std::span<const double> b, std::span<const double> u,
                       double dt, double theta_ref) {
  return kernels::dot(b, u) * dt / theta_ref;
}

std::vector<double> adjoint_rhs(std::span<const double> b, double dt,
                                double theta_ref) {
  std::vector<double> c(b.begin(), b.end());
  const double scale = dt / theta_ref;
  for (double& v : c) v *= scale;
  return c;
}

std::vector<double> objective_sensitivities(const SpaceTimeGrid& g,
                                            const MaterialPair& mat,
                                            const DesignField& chi,
                                            std::span<const double> u,
                                            std::span<const double> lambda) {
  if (static_cast<int>(chi.size()) != g.n_el)
    throw std::invalid_argument(
        "objective_sensitivities: design size mismatch");
  if (u.size() != g.n_dofs() || lambda.size() != g.n_dofs())
    throw std::invalid_argument(
        "objective_sensitivities: state size mismatch");

  // Masked value access: Dirichlet and initial-condition DOFs read as zero,
  // which removes every masked-row replacement term from the product rule.
  const auto at = [&](std::span<const double> v, int n, int i) {
    const std::int32_t flat = g.flatten(n, i);
    return dof_is_masked(g, flat) ? 0.0 : v[flat];
  };

  std::vector<double> sens(g.n_el, 0.0);
  for (int e = 0; e < g.n_el; ++e) {
    const ElementMaterial d = simp_derivatives(chi.chi[e], mat);
    const double dk_dx = d.k / g.dx;       // stiffness derivative scale
    const double dc_dx6 = d.c * g.dx / 6;  // capacity derivative scale
    double acc = 0.0;
    for (int n = 1; n <= g.n_t; ++n) {
      const double u0 = at(u, n, e), u1 = at(u, n, e + 1);
      const double l0 = at(lambda, n, e), l1 = at(lambda, n, e + 1);
      // lambda^T dK u with dK = dk/dx * [[1,-1],[-1,1]]
      acc += dk_dx * (u0 - u1) * (l0 - l1);
      // lambda^T dC v with v = (u_n - u_{n-1})/dt and the consistent mass
      // stencil dc*dx/6 * [[2,1],[1,2]]
      const double v0 = (u0 - at(u, n - 1, e)) / g.dt;
      const double v1 = (u1 - at(u, n - 1, e + 1)) / g.dt;
      acc += dc_dx6 * (l0 * (2.0 * v0 + v1) + l1 * (v0 + 2.0 * v1));
    }
    sens[e] = -acc;
  }
  return sens;
}

double volume_fraction(const DesignField& chi, const SpaceTimeGrid& g) {
  if (static_cast<int>(chi.size()) != g.n_el)
    throw std::invalid_argument("volume_fraction: design size mismatch");
  double s = 0.0;
  for (const double v : chi.chi) s += v;
  return s * g.dx / g.L;
}

OptimisationResult optimise(const SpaceTimeGrid& geom, const MaterialPair& mat,
                            const OptimisationOptions& opts) {
  if (opts.volume_limit <= 0.0 || opts.volume_limit > 1.0)
    throw std::invalid_argument("optimise: volume limit must be in (0, 1]");
  if (opts.max_iterations < 1 || opts.stable_iterations < 1 ||
      opts.rel_change_tol <= 0.0 || opts.theta_ref <= 0.0)
    throw std::invalid_argument("optimise: invalid options");

  const auto t0 = std::chrono::steady_clock::now();

  SpaceTimeGrid grid = geom;
  grid.k.resize(grid.n_el);
  grid.c.resize(grid.n_el);

  DesignField chi;
  chi.chi.assign(grid.n_el, opts.chi_init);

  // The right-hand side depends only on the geometry; the adjoint target is
  // its fixed rescaling.
  const std::vector<double> b = masked_load_vector(grid);
  const std::vector<double> c = adjoint_rhs(b, grid.dt, opts.theta_ref);

  std::vector<double> u(grid.n_dofs(), 0.0);
  std::vector<double> lam(grid.n_dofs(), 0.0);
  std::vector<double> dg(grid.n_el,
                         grid.dx / (opts.volume_limit * grid.L));

  MmaUpdater mma(static_cast<std::size_t>(grid.n_el), opts.mma);

  OptimisationResult result;
  double theta_prev = std::numeric_limits<double>::quiet_NaN();
  int stable = 0;

  for (int it = 1; it <= opts.max_iterations; ++it) {
    apply_design(grid.k, grid.c, chi, mat);

    PlanRequest preq;
    preq.n_levels = opts.n_levels;
    preq.lambda_crit = opts.lambda_crit;
    preq.strategy = opts.strategy;
    preq.reassembly = opts.method.reassembly;
    preq.min_elements = opts.min_elements;
    preq.chi = &chi;
    preq.mat = &mat;
    const CoarseningPath path = plan_coarsening(grid, preq);

    const LevelHierarchy h =
        build_hierarchy(grid, opts.method, path, &chi, &mat);

    if (!opts.warm_start) std::fill(u.begin(), u.end(), 0.0);
    const SolveReport primal = mg_solve(h, b, u, opts.solve);

    const double theta = objective_value(b, u, grid.dt, opts.theta_ref);

    const LevelHierarchy ht = transposed_hierarchy(h);
    if (!opts.warm_start) std::fill(lam.begin(), lam.end(), 0.0);
    const SolveReport adjoint = mg_solve(ht, c, lam, opts.solve);

    const double vol = volume_fraction(chi, grid);
    const double g_val = vol / opts.volume_limit - 1.0;
    const double change =
        it == 1 ? std::numeric_limits<double>::infinity()
                : std::abs(theta - theta_prev) / std::abs(theta);

    IterationRecord rec;
    rec.iteration = it;
    rec.theta = theta;
    rec.volume = vol;
    rec.constraint = g_val;
    rec.change = change;
    rec.path = path_to_string(path);
    rec.primal_status = primal.status;
    rec.adjoint_status = adjoint.status;
    rec.primal_cycles = primal.cycles;
    rec.adjoint_cycles = adjoint.cycles;
    rec.primal_factor = primal.factor;
    rec.adjoint_factor = adjoint.factor;
    rec.primal_seconds = primal.seconds;
    rec.adjoint_seconds = adjoint.seconds;
    result.history.push_back(std::move(rec));
    result.design_history.push_back(chi);

    result.theta = theta;
    result.iterations = it;
    theta_prev = theta;

    stable = change < opts.rel_change_tol ? stable + 1 : 0;
    if (stable >= opts.stable_iterations) {
      result.converged = true;
      break;
    }
    if (it == opts.max_iterations) break;

    const std::vector<double> df =
        objective_sensitivities(grid, mat, chi, u, lam);
    chi.chi = mma.update(chi.chi, df, dg, g_val);
  }

  result.chi = std::move(chi);
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return result;
}

}  // namespace stmg
