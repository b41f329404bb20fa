#include "stmg/optimisation.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracle/oracle.hpp"
#include "stmg/assembly.hpp"
#include "stmg/mma.hpp"

using namespace stmg;

namespace {

const MaterialPair kAlEpoxy{0.197, 214.0, 1.67e6, 2.41e6, 3.0, 2.0};

}  // namespace

TEST_CASE("mma subproblem matches a brute-force grid search") {
  const std::vector<double> x{0.4, 0.6};
  const std::vector<double> df{1.0, -0.5};
  const std::vector<double> dg{2.0, 2.0};
  const double g = 0.1;  // violated: the update must pull the design back
  const std::vector<double> lower{-0.1, 0.1};
  const std::vector<double> upper{0.9, 1.1};
  const std::vector<double> alpha{0.2, 0.4};
  const std::vector<double> beta{0.6, 0.8};

  const std::vector<double> y = mma_subsolve(x, df, dg, g, lower, upper,
                                             alpha, beta);

  // Rebuild the approximation exactly as documented and scan it.
  std::vector<double> p0(2), q0(2), p1(2), q1(2);
  double r1 = g;
  for (int j = 0; j < 2; ++j) {
    const double du = upper[j] - x[j], dl = x[j] - lower[j];
    p0[j] = du * du * std::max(df[j], 0.0);
    q0[j] = dl * dl * std::max(-df[j], 0.0);
    p1[j] = du * du * std::max(dg[j], 0.0);
    q1[j] = dl * dl * std::max(-dg[j], 0.0);
    r1 -= p1[j] / du + q1[j] / dl;
  }
  const auto f_hat = [&](double y0, double y1) {
    return p0[0] / (upper[0] - y0) + q0[0] / (y0 - lower[0]) +
           p0[1] / (upper[1] - y1) + q0[1] / (y1 - lower[1]);
  };
  const auto g_hat = [&](double y0, double y1) {
    return r1 + p1[0] / (upper[0] - y0) + q1[0] / (y0 - lower[0]) +
           p1[1] / (upper[1] - y1) + q1[1] / (y1 - lower[1]);
  };

  const int m = 2001;
  double best0 = x[0], best1 = x[1];
  double best_f = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    const double y0 = alpha[0] + (beta[0] - alpha[0]) * i / (m - 1);
    for (int j = 0; j < m; ++j) {
      const double y1 = alpha[1] + (beta[1] - alpha[1]) * j / (m - 1);
      if (g_hat(y0, y1) > 0.0) continue;
      const double f = f_hat(y0, y1);
      if (f < best_f) {
        best_f = f;
        best0 = y0;
        best1 = y1;
      }
    }
  }

  REQUIRE(std::isfinite(best_f));
  CHECK(std::abs(y[0] - best0) < 1e-3);
  CHECK(std::abs(y[1] - best1) < 1e-3);
  CHECK(g_hat(y[0], y[1]) <= 1e-10);        // returned point is feasible
  CHECK(f_hat(y[0], y[1]) <= best_f + 1e-6);  // and no worse than the scan
}

TEST_CASE("mma leaves the design alone without a reason to move") {
  const std::vector<double> x{0.3, 0.7, 0.5};
  const std::vector<double> zero(3, 0.0);
  const std::vector<double> dg{1.0, 1.0, 1.0};
  const std::vector<double> lower{-0.5, -0.3, 0.0};
  const std::vector<double> upper{1.3, 1.2, 1.0};
  const std::vector<double> alpha{0.1, 0.3, 0.3};
  const std::vector<double> beta{0.5, 0.9, 0.7};
  // Zero objective gradient and a satisfied constraint: nothing moves.
  const std::vector<double> y =
      mma_subsolve(x, zero, dg, -0.2, lower, upper, alpha, beta);
  CHECK(y == x);

  // A violated constraint moves the design even with a flat objective.
  const std::vector<double> y2 =
      mma_subsolve(x, zero, dg, 0.3, lower, upper, alpha, beta);
  for (int j = 0; j < 3; ++j) CHECK(y2[j] < x[j]);
}

TEST_CASE("mma updates preserve feasibility of a linear constraint") {
  // Volume-style constraint g = mean(x)/0.5 - 1 with constant gradient.
  const std::size_t n = 12;
  std::vector<double> x(n, 0.5);
  const std::vector<double> dg(n, 1.0 / (0.5 * n));
  const auto g_of = [&](const std::vector<double>& v) {
    double s = 0.0;
    for (const double w : v) s += v.empty() ? 0.0 : w;
    return s / (0.5 * n) - 1.0;
  };

  MmaUpdater mma(n);
  for (int it = 0; it < 12; ++it) {
    // A churning objective gradient that keeps trying to add material.
    std::vector<double> df(n);
    for (std::size_t j = 0; j < n; ++j)
      df[j] = -1.0 - std::sin(0.9 * static_cast<double>(j) + 0.3 * it);
    x = mma.update(x, df, dg, g_of(x));
    for (const double v : x) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    CHECK(g_of(x) <= 1e-9);
  }
  CHECK(mma.iterations() == 12);
}

TEST_CASE("mma rejects malformed input") {
  CHECK_THROWS_AS(MmaUpdater(0), std::invalid_argument);
  MmaOptions bad;
  bad.asym_grow = 0.9;
  CHECK_THROWS_AS(MmaUpdater(4, bad), std::invalid_argument);
  MmaUpdater ok(2);
  const std::vector<double> x{0.5, 0.5}, short_vec{0.5};
  CHECK_THROWS_AS(ok.update(x, short_vec, x, 0.0), std::invalid_argument);
}

TEST_CASE("masked load vector equals the assembled right-hand side") {
  SpaceTimeGrid g = build_fine_grid(0.1, 10.0, 8, 8);
  g.k.assign(8, 1.0);
  g.c.assign(8, 1.0);
  const AssembledSystem sys = assemble_system(g);
  CHECK(masked_load_vector(g) == sys.b);
}

TEST_CASE("adjoint gradient agrees with finite differences") {
  const int n = 8;
  SpaceTimeGrid g = build_fine_grid(0.1, 10.0, n, n);
  const DesignField chi = design_ramp(n, 0.1, 50.0, 0.05);
  g.k.resize(n);
  g.c.resize(n);
  apply_design(g.k, g.c, chi, kAlEpoxy);

  const AssembledSystem sys = assemble_system(g);
  const double theta_ref = 1e6;
  const std::vector<double> u = direct_solve(sys.J, sys.b);
  const std::vector<double> lam = direct_solve(
      sys.J.transposed(), adjoint_rhs(sys.b, g.dt, theta_ref));

  // The all-at-once objective matches the sequential-march oracle.
  const double theta = objective_value(sys.b, u, g.dt, theta_ref);
  const double theta_oracle = oracle::objective_value(g, kAlEpoxy, chi,
                                                      theta_ref);
  CHECK(theta == doctest::Approx(theta_oracle).epsilon(1e-12));

  const std::vector<double> grad =
      objective_sensitivities(g, kAlEpoxy, chi, u, lam);
  const auto fd = oracle::fd_gradient(g, kAlEpoxy, chi, theta_ref);

  double scale = 0.0;
  for (const double v : fd.value) scale = std::max(scale, std::abs(v));
  REQUIRE(scale > 0.0);
  for (int e = 0; e < n; ++e) {
    CAPTURE(e);
    CHECK(std::abs(grad[e] - fd.value[e]) / scale < 1e-5);
  }
}

TEST_CASE("sensitivities vanish when both phases are identical") {
  SpaceTimeGrid g = build_fine_grid(1.0, 1.0, 4, 4);
  const MaterialPair same{2.0, 2.0, 3.0, 3.0, 3.0, 2.0};
  DesignField chi;
  chi.chi = {0.2, 0.5, 0.7, 1.0};
  g.k.resize(4);
  g.c.resize(4);
  apply_design(g.k, g.c, chi, same);
  const AssembledSystem sys = assemble_system(g);
  const std::vector<double> u = direct_solve(sys.J, sys.b);
  const std::vector<double> lam =
      direct_solve(sys.J.transposed(), adjoint_rhs(sys.b, g.dt, 1e6));
  const std::vector<double> grad =
      objective_sensitivities(g, same, chi, u, lam);
  CHECK(grad == std::vector<double>(4, 0.0));
}

TEST_CASE("volume fraction") {
  SpaceTimeGrid g = build_fine_grid(0.1, 1.0, 4, 4);
  DesignField chi;
  chi.chi = {0.5, 0.5, 0.5, 0.5};
  CHECK(volume_fraction(chi, g) == doctest::Approx(0.5));
  chi.chi = {1.0, 0.0, 1.0, 0.0};
  CHECK(volume_fraction(chi, g) == doctest::Approx(0.5));
  chi.chi = {1.0, 1.0, 1.0, 1.0};
  CHECK(volume_fraction(chi, g) == doctest::Approx(1.0));
  chi.chi = {1.0, 1.0};
  CHECK_THROWS_AS(volume_fraction(chi, g), std::invalid_argument);
}

TEST_CASE("small optimisation run stays feasible and converges its solves") {
  SpaceTimeGrid geom = build_fine_grid(0.1, 10.0, 16, 16);

  OptimisationOptions opts;
  opts.n_levels = 2;
  opts.max_iterations = 8;
  opts.solve.nu = 5;

  const OptimisationResult res = optimise(geom, kAlEpoxy, opts);
  REQUIRE(!res.history.empty());
  CHECK(res.iterations <= 8);
  CHECK(res.theta > 0.0);
  for (const IterationRecord& rec : res.history) {
    CAPTURE(rec.iteration);
    CHECK(rec.primal_status == SolveStatus::Converged);
    CHECK(rec.adjoint_status == SolveStatus::Converged);
    CHECK(rec.volume <= opts.volume_limit + 1e-9);
    CHECK(rec.constraint <= 1e-9);
    CHECK(!rec.path.empty());
  }
  // The design must actually be a design.
  for (const double v : res.chi.chi) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }

  SUBCASE("rerun is bitwise identical") {
    const OptimisationResult res2 = optimise(geom, kAlEpoxy, opts);
    CHECK(res2.theta == res.theta);
    CHECK(res2.chi.chi == res.chi.chi);
    CHECK(res2.iterations == res.iterations);
  }

  SUBCASE("cold restarts solve the same designs") {
    OptimisationOptions cold = opts;
    cold.warm_start = false;
    const OptimisationResult resc = optimise(geom, kAlEpoxy, cold);
    REQUIRE(!resc.history.empty());
    for (const IterationRecord& rec : resc.history) {
      CHECK(rec.primal_status == SolveStatus::Converged);
      CHECK(rec.volume <= cold.volume_limit + 1e-9);
    }
    // First iteration starts from zero either way.
    CHECK(resc.history.front().theta ==
          doctest::Approx(res.history.front().theta).epsilon(1e-12));
  }
}

TEST_CASE("optimise validates its options") {
  SpaceTimeGrid geom = build_fine_grid(0.1, 10.0, 8, 8);
  OptimisationOptions opts;
  opts.volume_limit = 0.0;
  CHECK_THROWS_AS(optimise(geom, kAlEpoxy, opts), std::invalid_argument);
  opts = {};
  opts.max_iterations = 0;
  CHECK_THROWS_AS(optimise(geom, kAlEpoxy, opts), std::invalid_argument);
}
