#include "stmg/mesh.hpp"

#include <stdexcept>

#include "doctest.h"

using namespace stmg;

TEST_CASE("fine grid spacing and counts") {
  const SpaceTimeGrid g = build_fine_grid(0.1, 10.0, 256, 128);
  CHECK(g.dx == doctest::Approx(0.1 / 256));
  CHECK(g.dt == doctest::Approx(10.0 / 128));
  CHECK(g.n_nodes() == 257);
  CHECK(g.n_times() == 129);
  CHECK(g.n_dofs() == std::size_t{257} * 129);
  CHECK_FALSE(g.has_materials());
}

TEST_CASE("fine grid rejects bad parameters") {
  CHECK_THROWS_AS(build_fine_grid(0.0, 1.0, 4, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_fine_grid(1.0, -1.0, 4, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_fine_grid(1.0, 1.0, 0, 4), std::invalid_argument);
}

TEST_CASE("time-major flattening") {
  const SpaceTimeGrid g = build_fine_grid(1.0, 1.0, 4, 8);
  CHECK(g.flatten(0, 0) == 0);
  CHECK(g.flatten(0, 4) == 4);
  CHECK(g.flatten(2, 3) == 13);  // 2*(4+1) + 3
  for (int n = 0; n <= g.n_t; ++n)
    for (int i = 0; i <= g.n_el; ++i) {
      const auto [nn, ii] = g.unflatten(g.flatten(n, i));
      CHECK(nn == n);
      CHECK(ii == i);
    }
}

TEST_CASE("element centres") {
  const SpaceTimeGrid g = build_fine_grid(1.0, 1.0, 4, 4);
  CHECK(g.element_centre(0) == doctest::Approx(0.125));
  CHECK(g.element_centre(3) == doctest::Approx(0.875));
}

TEST_CASE("coarsening halves the chosen direction") {
  const SpaceTimeGrid g = build_fine_grid(1.0, 2.0, 8, 4);

  const SpaceTimeGrid gx = coarsen_grid(g, CoarseningDirection::SpaceX);
  CHECK(gx.n_el == 4);
  CHECK(gx.n_t == 4);
  CHECK(gx.dx == doctest::Approx(2.0 * g.dx));
  CHECK(gx.dt == g.dt);

  const SpaceTimeGrid gt = coarsen_grid(g, CoarseningDirection::TimeT);
  CHECK(gt.n_el == 8);
  CHECK(gt.n_t == 2);
  CHECK(gt.dt == doctest::Approx(2.0 * g.dt));

  const SpaceTimeGrid gxt = coarsen_grid(g, CoarseningDirection::FullST);
  CHECK(gxt.n_el == 4);
  CHECK(gxt.n_t == 2);

  CHECK(gx.k.empty());  // materials are a level-construction concern
}

TEST_CASE("coarsening rejects odd counts") {
  const SpaceTimeGrid g = build_fine_grid(1.0, 1.0, 6, 3);
  CHECK_NOTHROW(coarsen_grid(g, CoarseningDirection::SpaceX));
  CHECK_THROWS_AS(coarsen_grid(g, CoarseningDirection::TimeT),
                  std::invalid_argument);
  CHECK_THROWS_AS(coarsen_grid(g, CoarseningDirection::FullST),
                  std::invalid_argument);
}

TEST_CASE("direction names") {
  CHECK(std::string(direction_name(CoarseningDirection::SpaceX)) == "x");
  CHECK(std::string(direction_name(CoarseningDirection::TimeT)) == "t");
  CHECK(std::string(direction_name(CoarseningDirection::FullST)) == "xt");
}
