#include "stmg/transfer.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

using namespace stmg;

namespace {

// Set uniform unit materials so grids pass any has_materials checks later.
SpaceTimeGrid unit_grid(int n_el, int n_t) {
  SpaceTimeGrid g = build_fine_grid(1.0, 1.0, n_el, n_t);
  g.k.assign(n_el, 1.0);
  g.c.assign(n_el, 1.0);
  return g;
}

double row_sum(const SparseMatrix& m, std::int32_t r) {
  double s = 0.0;
  for (std::int32_t p = m.row_ptr()[r]; p < m.row_ptr()[r + 1]; ++p)
    s += m.values()[p];
  return s;
}

}  // namespace

TEST_CASE("restriction scale per direction") {
  CHECK(restriction_scale(CoarseningDirection::SpaceX) == 1.0);
  CHECK(restriction_scale(CoarseningDirection::TimeT) == 0.5);
  CHECK(restriction_scale(CoarseningDirection::FullST) == 0.5);
}

TEST_CASE("interpolation names") {
  CHECK(std::string(interpolation_name(InterpolationMethod::Causal)) ==
        "causal");
  CHECK(std::string(interpolation_name(InterpolationMethod::Bilinear)) ==
        "bilinear");
}

TEST_CASE("spatial prolongation stencil") {
  const SpaceTimeGrid fine = unit_grid(4, 2);
  const SpaceTimeGrid coarse = coarsen_grid(fine, CoarseningDirection::SpaceX);
  const SparseMatrix P = build_prolongation(fine, coarse,
                                            CoarseningDirection::SpaceX,
                                            InterpolationMethod::Causal);
  CHECK(P.rows() == static_cast<std::int32_t>(fine.n_dofs()));
  CHECK(P.cols() == static_cast<std::int32_t>(coarse.n_dofs()));

  for (int n = 0; n <= fine.n_t; ++n) {
    // Coincident nodes: weight 1 from the matching coarse node.
    for (int I = 0; I <= coarse.n_el; ++I)
      CHECK(P.coeff(fine.flatten(n, 2 * I), coarse.flatten(n, I)) == 1.0);
    // In-between nodes: 1/2 from each coarse neighbour.
    for (int i = 1; i <= fine.n_el; i += 2) {
      CHECK(P.coeff(fine.flatten(n, i), coarse.flatten(n, (i - 1) / 2)) ==
            0.5);
      CHECK(P.coeff(fine.flatten(n, i), coarse.flatten(n, (i + 1) / 2)) ==
            0.5);
    }
    // No coupling across time levels.
    CHECK(P.coeff(fine.flatten(n, 0), coarse.flatten(n == 0 ? 1 : 0, 0)) ==
          0.0);
  }

  // Linear interpolation reproduces constants: every row sums to one.
  for (std::int32_t r = 0; r < P.rows(); ++r)
    CHECK(row_sum(P, r) == 1.0);
}

TEST_CASE("causal temporal prolongation copies forward only") {
  const SpaceTimeGrid fine = unit_grid(2, 4);
  const SpaceTimeGrid coarse = coarsen_grid(fine, CoarseningDirection::TimeT);
  const SparseMatrix P = build_prolongation(fine, coarse,
                                            CoarseningDirection::TimeT,
                                            InterpolationMethod::Causal);

  for (int N = 0; N <= coarse.n_t; ++N)
    for (int i = 0; i <= fine.n_el; ++i) {
      CHECK(P.coeff(fine.flatten(2 * N, i), coarse.flatten(N, i)) == 1.0);
      if (2 * N + 1 <= fine.n_t)
        CHECK(P.coeff(fine.flatten(2 * N + 1, i), coarse.flatten(N, i)) ==
              1.0);
    }

  // Every fine level is covered by exactly one coarse level with weight 1.
  for (std::int32_t r = 0; r < P.rows(); ++r) {
    CHECK(P.row_nnz(r) == 1);
    CHECK(row_sum(P, r) == 1.0);
  }

  // No backward support: a coarse value at level N never reaches a fine
  // level earlier than 2N.
  for (std::int32_t r = 0; r < P.rows(); ++r) {
    const auto [n_fine, i_fine] = fine.unflatten(r);
    (void)i_fine;
    for (std::int32_t p = P.row_ptr()[r]; p < P.row_ptr()[r + 1]; ++p) {
      const auto [N_coarse, I_coarse] = coarse.unflatten(P.col_idx()[p]);
      (void)I_coarse;
      CHECK(n_fine >= 2 * N_coarse);
    }
  }
}

TEST_CASE("bilinear temporal prolongation couples both ways") {
  const SpaceTimeGrid fine = unit_grid(2, 4);
  const SpaceTimeGrid coarse = coarsen_grid(fine, CoarseningDirection::TimeT);
  const SparseMatrix P = build_prolongation(fine, coarse,
                                            CoarseningDirection::TimeT,
                                            InterpolationMethod::Bilinear);

  const int i = 1;
  // Coincident levels get weight 1, odd levels 1/2 from each side.
  CHECK(P.coeff(fine.flatten(0, i), coarse.flatten(0, i)) == 1.0);
  CHECK(P.coeff(fine.flatten(2, i), coarse.flatten(1, i)) == 1.0);
  CHECK(P.coeff(fine.flatten(1, i), coarse.flatten(0, i)) == 0.5);
  CHECK(P.coeff(fine.flatten(1, i), coarse.flatten(1, i)) == 0.5);
  CHECK(P.coeff(fine.flatten(3, i), coarse.flatten(1, i)) == 0.5);
  CHECK(P.coeff(fine.flatten(3, i), coarse.flatten(2, i)) == 0.5);

  // Backward support exists (this is what makes the stencil non-causal).
  bool backward = false;
  for (std::int32_t r = 0; r < P.rows(); ++r) {
    const auto [n_fine, i_fine] = fine.unflatten(r);
    (void)i_fine;
    for (std::int32_t p = P.row_ptr()[r]; p < P.row_ptr()[r + 1]; ++p) {
      const auto [N_coarse, I_coarse] = coarse.unflatten(P.col_idx()[p]);
      (void)I_coarse;
      if (n_fine < 2 * N_coarse) backward = true;
    }
  }
  CHECK(backward);

  // Interior rows still reproduce constants.
  for (std::int32_t r = 0; r < P.rows(); ++r)
    CHECK(row_sum(P, r) == 1.0);
}

TEST_CASE("temporal truncation drops entries without renormalising") {
  // With n_t = 4 the last coarse level (N = 2) would feed fine level 5,
  // which does not exist; the causal restriction row then keeps a single
  // 1/2 entry instead of being rescaled back to one.
  const SpaceTimeGrid fine = unit_grid(2, 4);
  const SpaceTimeGrid coarse = coarsen_grid(fine, CoarseningDirection::TimeT);
  const TransferPair t = build_transfer(fine, coarse,
                                        CoarseningDirection::TimeT,
                                        InterpolationMethod::Causal);
  const std::int32_t last = coarse.flatten(coarse.n_t, 0);
  CHECK(t.R.row_nnz(last) == 1);
  CHECK(row_sum(t.R, last) == 0.5);
  // Interior coarse rows collect two fine levels at 1/2 each.
  CHECK(row_sum(t.R, coarse.flatten(1, 0)) == 1.0);

  // Bilinear: the first coarse level would also reach fine level -1.
  const SparseMatrix Pb = build_prolongation(fine, coarse,
                                             CoarseningDirection::TimeT,
                                             InterpolationMethod::Bilinear);
  std::int32_t col0 = coarse.flatten(0, 0);
  double col0_sum = 0.0;
  for (std::int32_t r = 0; r < Pb.rows(); ++r)
    col0_sum += Pb.coeff(r, col0);
  CHECK(col0_sum == 1.5);  // 1 + 1/2, the -1 entry truncated
}

TEST_CASE("combined space-time prolongation tensors the stencils") {
  const SpaceTimeGrid fine = unit_grid(4, 4);
  const SpaceTimeGrid coarse = coarsen_grid(fine, CoarseningDirection::FullST);
  const SparseMatrix P = build_prolongation(fine, coarse,
                                            CoarseningDirection::FullST,
                                            InterpolationMethod::Causal);

  // Coarse DOF (N = 1, I = 1) feeds fine levels 2 and 3 with the spatial
  // hat centred on fine node 2.
  const std::int32_t col = coarse.flatten(1, 1);
  for (int n : {2, 3}) {
    CHECK(P.coeff(fine.flatten(n, 2), col) == 1.0);
    CHECK(P.coeff(fine.flatten(n, 1), col) == 0.5);
    CHECK(P.coeff(fine.flatten(n, 3), col) == 0.5);
  }
  CHECK(P.coeff(fine.flatten(1, 2), col) == 0.0);  // earlier level untouched
  CHECK(P.coeff(fine.flatten(4, 2), col) == 0.0);  // later level untouched

  // Causality holds for the combined stencil too.
  for (std::int32_t r = 0; r < P.rows(); ++r) {
    const auto [n_fine, i_fine] = fine.unflatten(r);
    (void)i_fine;
    for (std::int32_t p = P.row_ptr()[r]; p < P.row_ptr()[r + 1]; ++p) {
      const auto [N_coarse, I_coarse] = coarse.unflatten(P.col_idx()[p]);
      (void)I_coarse;
      CHECK(n_fine >= 2 * N_coarse);
    }
  }

  CHECK_THROWS_AS(build_prolongation(fine, coarse, CoarseningDirection::FullST,
                                     InterpolationMethod::Bilinear),
                  std::invalid_argument);
}

TEST_CASE("restriction is the scaled transpose, entry for entry") {
  const SpaceTimeGrid fine = unit_grid(8, 8);
  for (const auto dir : {CoarseningDirection::SpaceX,
                         CoarseningDirection::TimeT,
                         CoarseningDirection::FullST}) {
    for (const auto interp :
         {InterpolationMethod::Causal, InterpolationMethod::Bilinear}) {
      if (dir == CoarseningDirection::FullST &&
          interp == InterpolationMethod::Bilinear)
        continue;
      const SpaceTimeGrid coarse = coarsen_grid(fine, dir);
      const TransferPair t = build_transfer(fine, coarse, dir, interp);
      CHECK(t.s == restriction_scale(dir));
      CHECK(t.R.rows() == t.P.cols());
      CHECK(t.R.cols() == t.P.rows());
      CHECK(t.R.nnz() == t.P.nnz());
      for (std::int32_t r = 0; r < t.P.rows(); ++r)
        for (std::int32_t p = t.P.row_ptr()[r]; p < t.P.row_ptr()[r + 1];
             ++p) {
          const std::int32_t c = t.P.col_idx()[p];
          // Bitwise: scaling by 1 or 0.5 is exact.
          CHECK(t.R.coeff(c, r) == t.s * t.P.values()[p]);
        }
    }
  }
}

TEST_CASE("prolongation rejects mismatched grids") {
  const SpaceTimeGrid fine = unit_grid(8, 8);
  const SpaceTimeGrid coarse = coarsen_grid(fine, CoarseningDirection::SpaceX);
  // Wrong direction for the given pair.
  CHECK_THROWS_AS(build_prolongation(fine, coarse, CoarseningDirection::TimeT,
                                     InterpolationMethod::Causal),
                  std::invalid_argument);
  // Two steps apart.
  const SpaceTimeGrid twice =
      coarsen_grid(coarse, CoarseningDirection::SpaceX);
  CHECK_THROWS_AS(build_prolongation(fine, twice, CoarseningDirection::SpaceX,
                                     InterpolationMethod::Causal),
                  std::invalid_argument);
  // Same counts but different extent.
  SpaceTimeGrid other = coarse;
  other.L = 2.0;
  CHECK_THROWS_AS(build_prolongation(fine, other, CoarseningDirection::SpaceX,
                                     InterpolationMethod::Causal),
                  std::invalid_argument);
  // Odd fine count cannot be halved.
  SpaceTimeGrid odd = build_fine_grid(1.0, 1.0, 6, 8);
  const SpaceTimeGrid odd_coarse =
      coarsen_grid(odd, CoarseningDirection::SpaceX);  // 3 elements
  CHECK_THROWS_AS(build_prolongation(odd_coarse,
                                     coarsen_grid(fine, CoarseningDirection::FullST),
                                     CoarseningDirection::SpaceX,
                                     InterpolationMethod::Causal),
                  std::invalid_argument);
}
