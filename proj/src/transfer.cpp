#include "stmg/transfer.hpp"

#include <stdexcept>

namespace stmg {
namespace {

void check_pair(const SpaceTimeGrid& fine, const SpaceTimeGrid& coarse,
                CoarseningDirection dir) {
  const bool halve_x = dir != CoarseningDirection::TimeT;
  const bool halve_t = dir != CoarseningDirection::SpaceX;
  const int want_el = halve_x ? fine.n_el / 2 : fine.n_el;
  const int want_t = halve_t ? fine.n_t / 2 : fine.n_t;
  if ((halve_x && fine.n_el % 2 != 0) || (halve_t && fine.n_t % 2 != 0))
    throw std::invalid_argument("build_prolongation: fine grid not halvable");
  if (coarse.n_el != want_el || coarse.n_t != want_t)
    throw std::invalid_argument(
        "build_prolongation: grids differ by more than one step");
  if (fine.L != coarse.L || fine.t_T != coarse.t_T)
    throw std::invalid_argument("build_prolongation: extent mismatch");
}

// Temporal stencil: fine time offsets from 2N with weights.
struct TimeEntry {
  int dn;
  double w;
};

}  // namespace

const char* interpolation_name(InterpolationMethod m) {
  return m == InterpolationMethod::Causal ? "causal" : "bilinear";
}

double restriction_scale(CoarseningDirection dir) {
  return dir == CoarseningDirection::SpaceX ? 1.0 : 0.5;
}

SparseMatrix build_prolongation(const SpaceTimeGrid& fine,
                                const SpaceTimeGrid& coarse,
                                CoarseningDirection dir,
                                InterpolationMethod interp) {
  check_pair(fine, coarse, dir);
  if (dir == CoarseningDirection::FullST &&
      interp == InterpolationMethod::Bilinear)
    throw std::invalid_argument(
        "build_prolongation: combined coarsening is causal-only");

  const bool halve_x = dir != CoarseningDirection::TimeT;
  const bool halve_t = dir != CoarseningDirection::SpaceX;

  std::vector<Triplet> tr;
  tr.reserve(coarse.n_dofs() * 4);

  for (int N = 0; N <= coarse.n_t; ++N) {
    // Which fine time levels this coarse level feeds, and with what weight.
    TimeEntry time_entries[3];
    int n_time = 0;
    if (!halve_t) {
      time_entries[n_time++] = {0, 1.0};  // same level
    } else if (interp == InterpolationMethod::Causal) {
      time_entries[n_time++] = {0, 1.0};
      time_entries[n_time++] = {1, 1.0};
    } else {
      time_entries[n_time++] = {-1, 0.5};
      time_entries[n_time++] = {0, 1.0};
      time_entries[n_time++] = {1, 0.5};
    }

    for (int I = 0; I <= coarse.n_el; ++I) {
      const std::int32_t col = coarse.flatten(N, I);
      for (int te = 0; te < n_time; ++te) {
        const int n_fine = halve_t ? 2 * N + time_entries[te].dn : N;
        if (n_fine < 0 || n_fine > fine.n_t) continue;  // truncated
        const double wt = time_entries[te].w;
        if (halve_x) {
          const int i0 = 2 * I;
          tr.push_back({fine.flatten(n_fine, i0), col, wt});
          if (i0 - 1 >= 0)
            tr.push_back({fine.flatten(n_fine, i0 - 1), col, 0.5 * wt});
          if (i0 + 1 <= fine.n_el)
            tr.push_back({fine.flatten(n_fine, i0 + 1), col, 0.5 * wt});
        } else {
          tr.push_back({fine.flatten(n_fine, I), col, wt});
        }
      }
    }
  }

  return SparseMatrix::from_triplets(static_cast<std::int32_t>(fine.n_dofs()),
                                     static_cast<std::int32_t>(coarse.n_dofs()),
                                     std::move(tr));
}

TransferPair build_transfer(const SpaceTimeGrid& fine,
                            const SpaceTimeGrid& coarse,
                            CoarseningDirection dir,
                            InterpolationMethod interp) {
  TransferPair t;
  t.s = restriction_scale(dir);
  t.P = build_prolongation(fine, coarse, dir, interp);
  t.R = t.P.transposed().scaled(t.s);
  return t;
}

}  // namespace stmg
