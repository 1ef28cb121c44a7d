#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "edes/operators.hpp"

using namespace edes;

namespace {

GridField random_bump_sum(const GridSpec& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(-0.4 * g.extent, 0.4 * g.extent);
  std::uniform_real_distribution<double> amp(0.2, 1.5);
  GridField out(g);
  for (int b = 0; b < 3; ++b) {
    std::array<double, 3> center{0.0, 0.0, 0.0};
    if (g.mode == GridMode::Tensor)
      for (int d = 0; d < g.dim; ++d) center[d] = pos(rng);
    const GridField bump = bump_field(g, center, 0.35 * g.extent, amp(rng));
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += bump.values[i];
  }
  return out;
}

double weighted_l2(const EllipticOperator& op, const GridField& f) {
  return std::sqrt(op.weighted_inner(f, f));
}

}  // namespace

TEST_CASE("flat laplacian reproduces A e^x = e^x at second order") {
  double errors[3];
  const double hs[3] = {0.02, 0.01, 0.005};
  for (int g = 0; g < 3; ++g) {
    GridSpec grid{GridMode::Tensor, 1, 1.0, hs[g]};
    const auto op = EllipticOperator::flat_laplacian(grid, 1.0);
    GridField u(grid);
    const int m = grid.points_per_axis();
    for (int i = 0; i < m; ++i) u.values[static_cast<std::size_t>(i)] = std::exp(grid.coord(i));
    const GridField au = op.apply(u);
    double err = 0.0;
    for (int i = 0; i < m; ++i) {
      if (std::abs(grid.coord(i)) > 0.5) continue;
      err = std::max(err, std::abs(au.values[static_cast<std::size_t>(i)] -
                                   u.values[static_cast<std::size_t>(i)]));
    }
    errors[g] = err;
  }
  CHECK(std::log2(errors[0] / errors[1]) > 1.9);
  CHECK(std::log2(errors[1] / errors[2]) > 1.9);
}

TEST_CASE("constant fields are annihilated in the interior") {
  for (GridMode mode : {GridMode::Tensor, GridMode::Radial}) {
    GridSpec grid{mode, mode == GridMode::Radial ? 3 : 2, 1.0, 0.05};
    const auto op = EllipticOperator::flat_laplacian(grid, 2.0);
    GridField u(grid);
    for (double& v : u.values) v = 7.25;
    const GridField au = op.apply(u);
    const int m = grid.points_per_axis();
    for (std::size_t i = 0; i < au.values.size(); ++i) {
      const auto idx = grid.unflatten(i);
      bool border = false;
      for (int d = 0; d < (mode == GridMode::Radial ? 1 : grid.dim); ++d)
        if (idx[d] == 0 || idx[d] == m - 1) border = true;
      if (!border) CHECK(std::abs(au.values[i]) < 1e-11);
    }
  }
}

TEST_CASE("Example 1 matches its displayed expansion on the unblended core") {
  // u = cos(x): A u = ((x^2+1)/beta) u'' + (2x/beta) u' inside |x| < R_A - 1.
  const double beta = 2.0;
  double errors[2];
  const double hs[2] = {0.06, 0.03};
  for (int g = 0; g < 2; ++g) {
    GridSpec grid{GridMode::Tensor, 3, 1.2, hs[g]};
    const auto op = EllipticOperator::example1(grid, beta, 2.0);
    GridField u(grid);
    for (std::size_t i = 0; i < u.values.size(); ++i)
      u.values[i] = std::cos(grid.coord(grid.unflatten(i)[0]));
    const GridField au = op.apply(u);
    const int m = grid.points_per_axis();
    double err = 0.0;
    for (std::size_t i = 0; i < au.values.size(); ++i) {
      const auto idx = grid.unflatten(i);
      bool border = false;
      for (int d = 0; d < 3; ++d)
        if (idx[d] == 0 || idx[d] == m - 1) border = true;
      if (border || grid.radius(i) > 0.95) continue;
      const double x = grid.coord(idx[0]);
      const double expected =
          -(x * x + 1.0) / beta * std::cos(x) - 2.0 * x / beta * std::sin(x);
      err = std::max(err, std::abs(au.values[i] - expected));
    }
    errors[g] = err;
  }
  CHECK(errors[1] < 5e-3);
  CHECK(std::log2(errors[0] / errors[1]) > 1.8);
}

TEST_CASE("Example 2 matches its displayed expansion on the unblended core") {
  const double beta = 1.0;
  GridSpec grid{GridMode::Tensor, 3, 1.2, 0.05};
  const auto op = EllipticOperator::example2(grid, beta, 2.0);
  GridField u(grid);
  for (std::size_t i = 0; i < u.values.size(); ++i)
    u.values[i] = std::cos(grid.coord(grid.unflatten(i)[0]));
  const GridField au = op.apply(u);
  const int m = grid.points_per_axis();
  double err = 0.0;
  for (std::size_t i = 0; i < au.values.size(); ++i) {
    const auto idx = grid.unflatten(i);
    bool border = false;
    for (int d = 0; d < 3; ++d)
      if (idx[d] == 0 || idx[d] == m - 1) border = true;
    if (border || grid.radius(i) > 0.95) continue;
    const double x = grid.coord(idx[0]);
    const double e = std::exp(-x * x);
    const double expected =
        -(e + 1.0) / beta * std::cos(x) + (-2.0 * x * e) / beta * (-std::sin(x));
    err = std::max(err, std::abs(au.values[i] - expected));
  }
  CHECK(err < 5e-3);
}

TEST_CASE("propagation speed: flat and Example 1") {
  GridSpec line{GridMode::Tensor, 1, 1.0, 0.1};
  const auto flat1 = EllipticOperator::flat_laplacian(line, 1.0);
  CHECK(flat1.propagation_speed().paper_value == 1.0);
  CHECK(flat1.propagation_speed().speed_value == 1.0);
  const auto flat4 = EllipticOperator::flat_laplacian(line, 4.0);
  CHECK(flat4.propagation_speed().paper_value == 4.0);
  CHECK(flat4.propagation_speed().speed_value == 2.0);

  // Example 1, beta = 1, R_A = 2, grid |x| <= 2: the x-coefficient is clamped
  // to (R_A^2+1)/beta = 5 at the cutoff; the other two axes peak at 1.
  GridSpec grid{GridMode::Tensor, 3, 2.0, 0.25};
  const auto ex1 = EllipticOperator::example1(grid, 1.0, 2.0);
  const auto speed = ex1.propagation_speed();
  CHECK(speed.paper_value == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(speed.speed_value == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));

  // Brute force over grid points and 64 unit directions (axis vectors included).
  std::mt19937_64 rng(17);
  std::normal_distribution<double> gauss;
  double brute = 0.0;
  std::vector<std::array<double, 3>> dirs = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  while (dirs.size() < 64) {
    std::array<double, 3> d{gauss(rng), gauss(rng), gauss(rng)};
    const double norm = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    if (norm < 1e-8) continue;
    for (auto& x : d) x /= norm;
    dirs.push_back(d);
  }
  for (std::size_t node = 0; node < grid.total_points(); ++node) {
    for (const auto& d : dirs) {
      double quad = 0.0;
      for (int axis = 0; axis < 3; ++axis)
        quad += ex1.node_coeff(axis, node) * d[axis] * d[axis];
      brute = std::max(brute, quad / ex1.weight(node));
    }
  }
  CHECK(brute == doctest::Approx(speed.paper_value).epsilon(1e-12));
}

TEST_CASE("self-adjointness defect at rounding level") {
  GridSpec grid{GridMode::Tensor, 2, 1.5, 0.05};
  const auto flat = EllipticOperator::flat_laplacian(grid, 1.0);
  const GridField u = random_bump_sum(grid, 11);
  const GridField v = random_bump_sum(grid, 23);
  CHECK(self_adjointness_defect(flat, u, v) <
        1e-12 * weighted_l2(flat, u) * weighted_l2(flat, v));
  GridField zero(grid);
  CHECK(self_adjointness_defect(flat, u, zero) == 0.0);

  GridSpec grid3{GridMode::Tensor, 3, 2.5, 0.125};
  const auto ex2 = EllipticOperator::example2(grid3, 1.0, 2.0);
  const GridField u3 = random_bump_sum(grid3, 5);
  const GridField v3 = random_bump_sum(grid3, 7);
  CHECK(self_adjointness_defect(ex2, u3, v3) <
        1e-12 * weighted_l2(ex2, u3) * weighted_l2(ex2, v3));
}

TEST_CASE("discrete negativity of the conservative stencil") {
  GridSpec radial{GridMode::Radial, 3, 2.0, 0.02};
  const auto flat = EllipticOperator::flat_laplacian(radial, 1.0);
  const GridField u = random_bump_sum(radial, 3);
  const GridField au = flat.apply(u);
  CHECK(flat.weighted_inner(au, u) <= 1e-12 * flat.weighted_inner(u, u));

  GridSpec grid3{GridMode::Tensor, 3, 2.5, 0.25};
  const auto ex1 = EllipticOperator::example1(grid3, 2.0, 2.0);
  const GridField u3 = random_bump_sum(grid3, 29);
  const GridField au3 = ex1.apply(u3);
  CHECK(ex1.weighted_inner(au3, u3) <= 1e-12 * ex1.weighted_inner(u3, u3));
}

TEST_CASE("exterior agreement with the isotropic operator") {
  GridSpec grid{GridMode::Tensor, 3, 3.0, 0.2};
  const auto ex1 = EllipticOperator::example1(grid, 1.0, 2.0);
  const auto flat = EllipticOperator::flat_laplacian(grid, ex1.exterior_constant());
  const GridField u = random_bump_sum(grid, 41);
  const GridField a1 = ex1.apply(u);
  const GridField a2 = flat.apply(u);
  const double r_a = ex1.exterior_radius();
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    if (grid.radius(i) > r_a + 2.0 * grid.h + 1e-12)
      CHECK(a1.values[i] == doctest::Approx(a2.values[i]).epsilon(1e-13));
  }
}

TEST_CASE("construction and validation errors") {
  GridSpec radial{GridMode::Radial, 3, 1.0, 0.05};
  CHECK_THROWS_AS(EllipticOperator::example1(radial, 1.0, 2.0), std::invalid_argument);
  GridSpec grid{GridMode::Tensor, 1, 1.0, 0.05};
  CHECK_THROWS_AS(EllipticOperator::flat_laplacian(grid, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(EllipticOperator::flat_laplacian(grid, -1.0), std::invalid_argument);
  // Sign-indefinite custom coefficient rejected.
  CHECK_THROWS_AS(
      EllipticOperator::custom(
          grid, [](const std::array<double, 3>&) { return 1.0; },
          {[](const std::array<double, 3>& x) { return x[0]; }}, 1.0, 0.5),
      std::invalid_argument);
  // Grid mismatch in apply.
  const auto op = EllipticOperator::flat_laplacian(grid, 1.0);
  GridSpec other{GridMode::Tensor, 1, 1.0, 0.1};
  GridField wrong(other);
  GridField out(grid);
  CHECK_THROWS_AS(op.apply(wrong, out), std::invalid_argument);
}

TEST_CASE("blend cutoff is a C^2 bridge") {
  CHECK(blend_cutoff(-0.5) == 1.0);
  CHECK(blend_cutoff(0.0) == 1.0);
  CHECK(blend_cutoff(1.0) == 0.0);
  CHECK(blend_cutoff(2.0) == 0.0);
  // Smooth junction: first and second derivatives vanish at both ends.
  const double h = 1e-5;
  for (double s0 : {0.0, 1.0}) {
    const double d1 = (blend_cutoff(s0 + h) - blend_cutoff(s0 - h)) / (2.0 * h);
    const double d2 =
        (blend_cutoff(s0 + h) - 2.0 * blend_cutoff(s0) + blend_cutoff(s0 - h)) / (h * h);
    CHECK(std::abs(d1) < 1e-8);
    CHECK(std::abs(d2) < 1e-4);
  }
  double prev = 1.0;
  for (double s = 0.05; s < 1.0; s += 0.05) {
    CHECK(blend_cutoff(s) < prev);
    prev = blend_cutoff(s);
  }
}
