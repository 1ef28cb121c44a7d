#include <Eigen/Sparse>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "edes/operators.hpp"
#include "edes/special.hpp"

// Discrete positive solution of A phi = phi: Dirichlet solve inside the ball
// B_{R_A+1}(0) with the exterior closed form phi_L(|x|/sqrt(c)) as boundary
// data and glue. Radial grids reduce to a tridiagonal (Thomas) solve; tensor
// grids assemble the a-weighted symmetric form and factor it with a direct
// sparse Cholesky (SimplicialLDLT).

namespace edes {

namespace {

std::vector<double> solve_radial(const EllipticOperator& op, double ball_radius) {
  const GridSpec& g = op.grid();
  const int m = g.points_per_axis();
  const double h = g.h;
  const double n = static_cast<double>(g.dim);
  const double c = op.exterior_constant();

  int interior = 0;
  while (interior < m && g.coord(interior) < ball_radius) ++interior;
  if (interior >= m - 1)
    throw std::invalid_argument("eigenfunction: grid does not cover B_{R_A+1}");

  std::vector<double> phi(static_cast<std::size_t>(m));
  for (int i = interior; i < m; ++i)
    phi[static_cast<std::size_t>(i)] = eigenfunction_exterior(g.dim, c, g.coord(i));

  // Tridiagonal rows (A phi)_i - phi_i = 0 on i < interior.
  std::vector<double> lower(interior, 0.0), diag(interior, 0.0), upper(interior, 0.0),
      rhs(interior, 0.0);
  for (int i = 0; i < interior; ++i) {
    const double r = i * h;
    const double lo = (i == 0) ? 0.0 : r - 0.5 * h;
    const double hi = r + 0.5 * h;
    const double vol = (std::pow(hi, n) - std::pow(lo, n)) / n;
    const double fc_up = op.face_coeff(0, static_cast<std::size_t>(i));
    const double up = fc_up / (h * vol);
    diag[i] = -up - 1.0;
    upper[i] = up;
    if (i > 0) {
      const double fc_dn = op.face_coeff(0, static_cast<std::size_t>(i - 1));
      const double dn = fc_dn / (h * vol);
      diag[i] -= dn;
      lower[i] = dn;
    }
    if (i == interior - 1) {
      rhs[i] = -upper[i] * phi[static_cast<std::size_t>(interior)];
      upper[i] = 0.0;
    }
  }
  // Thomas elimination.
  for (int i = 1; i < interior; ++i) {
    const double w = lower[i] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  if (interior > 0) {
    phi[static_cast<std::size_t>(interior - 1)] = rhs[interior - 1] / diag[interior - 1];
    for (int i = interior - 2; i >= 0; --i)
      phi[static_cast<std::size_t>(i)] =
          (rhs[i] - upper[i] * phi[static_cast<std::size_t>(i + 1)]) / diag[i];
  }
  return phi;
}

std::vector<double> solve_tensor(const EllipticOperator& op, double ball_radius) {
  const GridSpec& g = op.grid();
  const int m = g.points_per_axis();
  const std::size_t total = g.total_points();
  const double h2 = g.h * g.h;
  const double c = op.exterior_constant();

  std::array<std::size_t, 3> stride{1, 0, 0};
  std::size_t s = 1;
  for (int d = 0; d < g.dim; ++d) {
    stride[d] = s;
    s *= static_cast<std::size_t>(m);
  }

  std::vector<double> phi(total, 0.0);
  std::vector<long> unknown(total, -1);
  long count = 0;
  for (std::size_t node = 0; node < total; ++node) {
    const auto idx = g.unflatten(node);
    bool border = false;
    for (int d = 0; d < g.dim; ++d)
      if (idx[d] == 0 || idx[d] == m - 1) border = true;
    if (!border && g.radius(node) < ball_radius) {
      unknown[node] = count++;
    } else {
      phi[node] = eigenfunction_exterior(g.dim, c, g.radius(node));
    }
  }
  if (count == 0) throw std::invalid_argument("eigenfunction: grid does not cover B_{R_A+1}");

  // a-weighted symmetric form: (a_i + sum_faces fc/h^2) phi_i - sum fc/h^2 phi_nb = 0.
  using Trip = Eigen::Triplet<double>;
  std::vector<Trip> trips;
  trips.reserve(static_cast<std::size_t>(count) * (2 * g.dim + 1));
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(count);
  for (std::size_t node = 0; node < total; ++node) {
    if (unknown[node] < 0) continue;
    const long row = unknown[node];
    double diag = op.weight(node);
    for (int d = 0; d < g.dim; ++d) {
      for (int side = 0; side < 2; ++side) {
        const std::size_t nb = side == 0 ? node + stride[d] : node - stride[d];
        const double fc =
            (side == 0 ? op.face_coeff(d, node) : op.face_coeff(d, nb)) / h2;
        diag += fc;
        if (unknown[nb] >= 0)
          trips.emplace_back(row, unknown[nb], -fc);
        else
          rhs[row] += fc * phi[nb];
      }
    }
    trips.emplace_back(row, row, diag);
  }

  Eigen::SparseMatrix<double> mat(count, count);
  mat.setFromTriplets(trips.begin(), trips.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  solver.compute(mat);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigenfunction: factorization failed");
  const Eigen::VectorXd sol = solver.solve(rhs);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigenfunction: solve failed");
  for (std::size_t node = 0; node < total; ++node)
    if (unknown[node] >= 0) phi[node] = sol[unknown[node]];
  return phi;
}

}  // namespace

Eigenfunction eigenfunction(const EllipticOperator& op) {
  const GridSpec& g = op.grid();
  const double ball_radius = op.exterior_radius() + 1.0;
  if (g.extent < ball_radius)
    throw std::invalid_argument("eigenfunction: grid must cover B_{R_A+1}(0)");
  Eigenfunction result;
  result.grid = g;
  result.values =
      g.mode == GridMode::Radial ? solve_radial(op, ball_radius) : solve_tensor(op, ball_radius);
  result.min_value = result.values[0];
  for (double v : result.values) result.min_value = std::min(result.min_value, v);
  return result;
}

}  // namespace edes
