#include "stmg/mma.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stmg {

namespace {

void check_sizes(std::size_t n, std::span<const double> a, const char* what) {
  if (a.size() != n)
    throw std::invalid_argument(std::string("mma: size mismatch in ") + what);
}

}  // namespace

std::vector<double> mma_subsolve(std::span<const double> x,
                                 std::span<const double> df,
                                 std::span<const double> dg, double g,
                                 std::span<const double> lower,
                                 std::span<const double> upper,
                                 std::span<const double> alpha,
                                 std::span<const double> beta) {
  const std::size_t n = x.size();
  check_sizes(n, df, "df");
  check_sizes(n, dg, "dg");
  check_sizes(n, lower, "lower");
  check_sizes(n, upper, "upper");
  check_sizes(n, alpha, "alpha");
  check_sizes(n, beta, "beta");

  std::vector<double> p0(n), q0(n), p1(n), q1(n);
  double r1 = g;
  for (std::size_t j = 0; j < n; ++j) {
    if (!(lower[j] < x[j] && x[j] < upper[j]))
      throw std::invalid_argument("mma_subsolve: x outside the asymptotes");
    const double du = upper[j] - x[j];
    const double dl = x[j] - lower[j];
    p0[j] = du * du * std::max(df[j], 0.0);
    q0[j] = dl * dl * std::max(-df[j], 0.0);
    p1[j] = du * du * std::max(dg[j], 0.0);
    q1[j] = dl * dl * std::max(-dg[j], 0.0);
    r1 -= p1[j] / du + q1[j] / dl;
  }

  std::vector<double> y(n);
  const auto x_of_eta = [&](double eta) {
    for (std::size_t j = 0; j < n; ++j) {
      const double p = p0[j] + eta * p1[j];
      const double q = q0[j] + eta * q1[j];
      double v;
      if (p == 0.0 && q == 0.0) {
        v = x[j];  // nothing pulls on this variable
      } else {
        const double sp = std::sqrt(p);
        const double sq = std::sqrt(q);
        v = (sp * lower[j] + sq * upper[j]) / (sp + sq);
      }
      y[j] = std::clamp(v, alpha[j], beta[j]);
    }
  };
  const auto g_hat = [&] {
    double s = r1;
    for (std::size_t j = 0; j < n; ++j)
      s += p1[j] / (upper[j] - y[j]) + q1[j] / (y[j] - lower[j]);
    return s;
  };

  // Inactive constraint: the unconstrained minimiser already satisfies it.
  x_of_eta(0.0);
  if (g_hat() <= 0.0) return y;

  // Bracket the dual multiplier, then bisect towards the constraint
  // boundary, ending on the side where the approximation is satisfied.
  double eta_lo = 0.0, eta_hi = 1.0;
  x_of_eta(eta_hi);
  int guard = 0;
  while (g_hat() > 0.0) {
    eta_lo = eta_hi;
    eta_hi *= 2.0;
    x_of_eta(eta_hi);
    if (++guard > 100)
      throw std::runtime_error(
          "mma_subsolve: constraint unreachable within the move limits");
  }
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (eta_lo + eta_hi);
    x_of_eta(mid);
    if (g_hat() > 0.0)
      eta_lo = mid;
    else
      eta_hi = mid;
  }
  x_of_eta(eta_hi);
  return y;
}

MmaUpdater::MmaUpdater(std::size_t n, const MmaOptions& opts)
    : opts_(opts), n_(n) {
  if (n == 0) throw std::invalid_argument("MmaUpdater: empty design");
  if (!(opts.x_min < opts.x_max))
    throw std::invalid_argument("MmaUpdater: empty box");
  if (opts.move_limit <= 0.0 || opts.asym_init <= 0.0 ||
      opts.asym_shrink <= 0.0 || opts.asym_shrink >= 1.0 ||
      opts.asym_grow <= 1.0)
    throw std::invalid_argument("MmaUpdater: invalid options");
}

std::vector<double> MmaUpdater::update(std::span<const double> x,
                                       std::span<const double> df,
                                       std::span<const double> dg, double g) {
  check_sizes(n_, x, "x");
  check_sizes(n_, df, "df");
  check_sizes(n_, dg, "dg");

  const double range = opts_.x_max - opts_.x_min;
  ++iter_;

  std::vector<double> low(n_), upp(n_);
  if (iter_ <= 2) {
    for (std::size_t j = 0; j < n_; ++j) {
      low[j] = x[j] - opts_.asym_init * range;
      upp[j] = x[j] + opts_.asym_init * range;
    }
  } else {
    for (std::size_t j = 0; j < n_; ++j) {
      const double osc = (x[j] - x_prev_[j]) * (x_prev_[j] - x_prev2_[j]);
      const double gamma = osc < 0.0   ? opts_.asym_shrink
                           : osc > 0.0 ? opts_.asym_grow
                                       : 1.0;
      low[j] = x[j] - gamma * (x_prev_[j] - low_[j]);
      upp[j] = x[j] + gamma * (upp_[j] - x_prev_[j]);
      // Keep the asymptotes a sane distance away from the current point.
      low[j] = std::clamp(low[j], x[j] - 10.0 * range, x[j] - 0.01 * range);
      upp[j] = std::clamp(upp[j], x[j] + 0.01 * range, x[j] + 10.0 * range);
    }
  }

  std::vector<double> alpha(n_), beta(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    alpha[j] = std::max({opts_.x_min, low[j] + 0.1 * (x[j] - low[j]),
                         x[j] - opts_.move_limit * range});
    beta[j] = std::min({opts_.x_max, upp[j] - 0.1 * (upp[j] - x[j]),
                        x[j] + opts_.move_limit * range});
  }

  std::vector<double> x_new =
      mma_subsolve(x, df, dg, g, low, upp, alpha, beta);

  x_prev2_ = iter_ >= 2 ? x_prev_ : std::vector<double>(x.begin(), x.end());
  x_prev_.assign(x.begin(), x.end());
  low_ = std::move(low);
  upp_ = std::move(upp);
  return x_new;
}

}  // namespace stmg
