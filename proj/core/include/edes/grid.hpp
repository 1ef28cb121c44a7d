#ifndef EDES_GRID_HPP
#define EDES_GRID_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace edes {

enum class GridMode { Radial, Tensor };

// Uniform grid: Radial mode samples r in [0, extent] (one line, dimension n
// enters through the Jacobian r^(n-1)); Tensor mode samples [-extent, extent]^dim.
struct GridSpec {
  GridMode mode = GridMode::Tensor;
  int dim = 1;  // spatial dimension n
  double extent = 1.0;
  double h = 0.1;

  int points_per_axis() const;
  std::size_t total_points() const;

  double coord(int axis_index) const;  // node coordinate along one axis
  double radius(std::size_t flat_index) const;

  /// Quadrature weight of node i: cell volume (exact finite-volume cells in
  /// Radial mode so that discrete conservation telescopes; h^dim in Tensor mode).
  double cell_weight(std::size_t flat_index) const;

  std::array<int, 3> unflatten(std::size_t flat_index) const;
  std::size_t flatten(const std::array<int, 3>& idx) const;

  bool operator==(const GridSpec&) const = default;
};

struct GridField {
  GridSpec grid;
  std::vector<double> values;

  GridField() = default;
  explicit GridField(const GridSpec& g) : grid(g), values(g.total_points(), 0.0) {}

  double max_norm() const;
};

/// Samples f(x) on the grid (radial: f(|r|); tensor: f applied per node position).
GridField sample_radial(const GridSpec& g, const std::function<double(double)>& f);
GridField sample(const GridSpec& g, const std::function<double(const std::array<double, 3>&)>& f);

/// Smooth compactly supported bump: amplitude * exp(1 - 1/(1 - s^2)) for
/// s = |x - center|/radius < 1, zero otherwise.
double bump_profile(double s);
GridField bump_field(const GridSpec& g, const std::array<double, 3>& center, double radius,
                     double amplitude);

}  // namespace edes

#endif
