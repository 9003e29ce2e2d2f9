#include <doctest.h>

#include <cmath>
#include <random>

#include "ffca/perception.hpp"
#include "support/fixtures.hpp"

using namespace ffca;
using namespace ffca::testing;

namespace {

// 3 rows, `len` floor cells in the middle one, agent-free.
Grid open_row(int len) {
  Rows rows(3, std::string(len + 2, '#'));
  for (int c = 1; c <= len; ++c) rows[1][c] = '.';
  rows[0][1] = 'E';
  return grid_from_rows(rows);
}

}  // namespace

TEST_CASE("obstacle distance") {
  const Grid g = open_row(20);
  CHECK(obstacle_distance(g, Cell{1, 1}, Direction::Right, 10) == 10);
  CHECK(obstacle_distance(g, Cell{1, 17}, Direction::Right, 10) == 3);  // wall at offset 4
  CHECK(obstacle_distance(g, Cell{1, 1}, Direction::Left, 10) == 0);
  CHECK(obstacle_distance(g, Cell{1, 1}, Direction::Down, 10) == 0);
  // The exit cell is open; the map edge behind it blocks.
  CHECK(obstacle_distance(g, Cell{1, 1}, Direction::Up, 10) == 1);

  SUBCASE("pedestrians do not block") {
    const Ray ray = cast_ray(g, Cell{1, 5}, Direction::Left, 10);
    CHECK(ray.r_star == 4);
    CHECK(ray.dir == Direction::Left);
  }
}

TEST_CASE("kernel values") {
  CHECK(kernel_phi(0.0) == doctest::Approx(1.49886).epsilon(1e-5));
  CHECK(kernel_phi(std::sqrt(5.0)) == 0.0);
  CHECK(kernel_phi(std::sqrt(5.0) / 2) == doctest::Approx(1.12414).epsilon(1e-5));
  CHECK(kernel_phi(2.3) == 0.0);
  CHECK(kernel_phi(-7.0) == 0.0);
  for (double z = 0.0; z < 3.0; z += 0.01) {
    CHECK(kernel_phi(z) == kernel_phi(-z));
    CHECK(kernel_phi(z) >= 0.0);
  }
}

TEST_CASE("density along a ray") {
  SUBCASE("empty ray is zero") {
    const Occupancy occ(3, 15, 0);
    for (int r_star = 1; r_star <= 12; ++r_star) CHECK(density(occ, Cell{1, 1}, Direction::Right, r_star) == 0.0);
  }
  SUBCASE("single occupied neighbor") {
    Occupancy occ(3, 15, 0);
    occ[Cell{1, 2}] = 1;
    CHECK(raw_density(occ, Cell{1, 1}, Direction::Right, 1) == doctest::Approx(1.1241427).epsilon(1e-7));
    CHECK(density(occ, Cell{1, 1}, Direction::Right, 1) == 1.0);
  }
  SUBCASE("fully occupied ray of ten") {
    Occupancy occ(3, 15, 0);
    for (int c = 2; c <= 11; ++c) occ[Cell{1, c}] = 1;
    CHECK(raw_density(occ, Cell{1, 1}, Direction::Right, 10) ==
          doctest::Approx(1.0219479545).epsilon(1e-9));
    CHECK(density(occ, Cell{1, 1}, Direction::Right, 10) == 1.0);
  }
  SUBCASE("r_star of zero is a contract violation") {
    const Occupancy occ(3, 3, 0);
    CHECK_THROWS_AS(density(occ, Cell{1, 1}, Direction::Up, 0), std::invalid_argument);
  }
}

TEST_CASE("density matches the direct formula for every occupancy pattern") {
  for (int r_star = 1; r_star <= 12; ++r_star) {
    for (unsigned mask = 0; mask < (1u << r_star); ++mask) {
      Occupancy occ(1, r_star + 1, 0);
      std::vector<int> ray(r_star);
      for (int m = 1; m <= r_star; ++m) {
        ray[m - 1] = (mask >> (m - 1)) & 1u;
        occ[Cell{0, m}] = static_cast<std::uint8_t>(ray[m - 1]);
      }
      const double raw = raw_density(occ, Cell{0, 0}, Direction::Right, r_star);
      CHECK(raw == doctest::Approx(oracle_raw_density(ray)).epsilon(1e-12));
      const double d = density(occ, Cell{0, 0}, Direction::Right, r_star);
      CHECK(d >= 0.0);
      CHECK(d <= 1.0);
    }
  }
}

TEST_CASE("adding a pedestrian never lowers the density") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const int r_star = 1 + static_cast<int>(rng() % 12);
    Occupancy occ(1, r_star + 1, 0);
    for (int m = 1; m <= r_star; ++m) occ[Cell{0, m}] = static_cast<std::uint8_t>(rng() % 2);
    const double before = raw_density(occ, Cell{0, 0}, Direction::Right, r_star);
    occ[Cell{0, 1 + static_cast<int>(rng() % r_star)}] = 1;
    CHECK(raw_density(occ, Cell{0, 0}, Direction::Right, r_star) >= before);
  }
}

TEST_CASE("every summed cell carries positive weight") {
  for (int r_star = 1; r_star <= 100; ++r_star) {
    const double c = kernel_bandwidth(r_star);
    for (int m = 1; m <= r_star; ++m) {
      CHECK(m / c < std::sqrt(5.0));
      CHECK(kernel_phi(m / c) > 0.0);
    }
  }
}
