#include "stmg/sparse.hpp"

#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"

using namespace stmg;

namespace {

SparseMatrix random_matrix(std::mt19937& rng, std::int32_t rows,
                           std::int32_t cols, int nnz) {
  std::uniform_int_distribution<std::int32_t> rd(0, rows - 1), cd(0, cols - 1);
  std::uniform_real_distribution<double> vd(-1.0, 1.0);
  std::vector<Triplet> ts;
  for (int i = 0; i < nnz; ++i) ts.push_back({rd(rng), cd(rng), vd(rng)});
  return SparseMatrix::from_triplets(rows, cols, std::move(ts));
}

std::vector<std::vector<double>> dense(const SparseMatrix& m) {
  std::vector<std::vector<double>> d(
      m.rows(), std::vector<double>(static_cast<std::size_t>(m.cols()), 0.0));
  for (std::int32_t r = 0; r < m.rows(); ++r)
    for (std::int32_t k = m.row_ptr()[r]; k < m.row_ptr()[r + 1]; ++k)
      d[r][m.col_idx()[k]] += m.values()[k];
  return d;
}

}  // namespace

TEST_CASE("from_triplets sums duplicates and sorts columns") {
  const SparseMatrix m = SparseMatrix::from_triplets(
      2, 3, {{0, 2, 1.0}, {0, 0, 2.0}, {0, 2, 3.0}, {1, 1, 5.0}});
  CHECK(m.nnz() == 3);
  CHECK(m.coeff(0, 0) == 2.0);
  CHECK(m.coeff(0, 2) == 4.0);
  CHECK(m.coeff(0, 1) == 0.0);
  CHECK(m.coeff(1, 1) == 5.0);
  // ascending columns within the row
  CHECK(m.col_idx()[0] == 0);
  CHECK(m.col_idx()[1] == 2);
  CHECK(m.row_nnz(0) == 2);
  CHECK(m.row_nnz(1) == 1);
}

TEST_CASE("from_triplets validates indices") {
  CHECK_THROWS_AS(SparseMatrix::from_triplets(2, 2, {{2, 0, 1.0}}),
                  std::out_of_range);
  CHECK_THROWS_AS(SparseMatrix::from_triplets(2, 2, {{0, -1, 1.0}}),
                  std::out_of_range);
}

TEST_CASE("multiply matches a dense reference") {
  std::mt19937 rng(7);
  const SparseMatrix m = random_matrix(rng, 23, 17, 120);
  std::uniform_real_distribution<double> vd(-1.0, 1.0);
  std::vector<double> x(17);
  for (double& v : x) v = vd(rng);

  std::vector<double> y(23, 0.0);
  m.multiply(x, y);

  const auto d = dense(m);
  for (std::int32_t r = 0; r < 23; ++r) {
    double want = 0.0;
    for (std::int32_t c = 0; c < 17; ++c) want += d[r][c] * x[c];
    CHECK(y[r] == doctest::Approx(want).epsilon(1e-13));
  }

  std::vector<double> y2 = y;
  m.multiply_add(x, y2);
  for (std::int32_t r = 0; r < 23; ++r)
    CHECK(y2[r] == doctest::Approx(2.0 * y[r]).epsilon(1e-13));

  std::vector<double> b(23, 1.0), res(23, 0.0);
  m.residual(b, x, res);
  for (std::int32_t r = 0; r < 23; ++r)
    CHECK(res[r] == doctest::Approx(1.0 - y[r]).epsilon(1e-12));
}

TEST_CASE("multiply validates dimensions") {
  const SparseMatrix m = SparseMatrix::from_triplets(2, 3, {{0, 0, 1.0}});
  std::vector<double> x(2), y(2);
  CHECK_THROWS_AS(m.multiply(x, y), std::invalid_argument);
}

TEST_CASE("transpose on a hand example, and double transpose is identity") {
  const SparseMatrix m = SparseMatrix::from_triplets(
      2, 3, {{0, 0, 1.0}, {0, 2, 2.0}, {1, 1, 3.0}});
  const SparseMatrix t = m.transposed();
  CHECK(t.rows() == 3);
  CHECK(t.cols() == 2);
  CHECK(t.coeff(0, 0) == 1.0);
  CHECK(t.coeff(2, 0) == 2.0);
  CHECK(t.coeff(1, 1) == 3.0);

  std::mt19937 rng(11);
  const SparseMatrix r = random_matrix(rng, 31, 19, 200);
  const SparseMatrix rr = r.transposed().transposed();
  REQUIRE(rr.nnz() == r.nnz());
  for (std::size_t i = 0; i < r.nnz(); ++i) {
    CHECK(rr.col_idx()[i] == r.col_idx()[i]);
    CHECK(rr.values()[i] == r.values()[i]);  // bitwise
  }
}

TEST_CASE("scaled by a power of two is exact") {
  std::mt19937 rng(13);
  const SparseMatrix m = random_matrix(rng, 9, 9, 40);
  const SparseMatrix h = m.scaled(0.5);
  for (std::size_t i = 0; i < m.nnz(); ++i)
    CHECK(h.values()[i] == 0.5 * m.values()[i]);  // bitwise
}

TEST_CASE("sparse product matches the dense product") {
  std::mt19937 rng(17);
  const SparseMatrix a = random_matrix(rng, 12, 9, 50);
  const SparseMatrix b = random_matrix(rng, 9, 14, 60);
  const SparseMatrix c = SparseMatrix::multiply(a, b);
  REQUIRE(c.rows() == 12);
  REQUIRE(c.cols() == 14);

  const auto da = dense(a);
  const auto db = dense(b);
  for (std::int32_t i = 0; i < 12; ++i)
    for (std::int32_t j = 0; j < 14; ++j) {
      double want = 0.0;
      for (std::int32_t k = 0; k < 9; ++k) want += da[i][k] * db[k][j];
      CHECK(c.coeff(i, j) == doctest::Approx(want).epsilon(1e-12));
    }

  CHECK_THROWS_AS(SparseMatrix::multiply(a, a), std::invalid_argument);
}

TEST_CASE("diagonal extraction reads missing entries as zero") {
  const SparseMatrix m = SparseMatrix::from_triplets(
      3, 3, {{0, 0, 4.0}, {1, 2, 1.0}, {2, 2, -2.0}});
  const std::vector<double> d = m.diagonal();
  CHECK(d == std::vector<double>{4.0, 0.0, -2.0});
}
