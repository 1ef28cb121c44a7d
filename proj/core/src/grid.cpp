#include "edes/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "edes/special.hpp"

namespace edes {

int GridSpec::points_per_axis() const {
  const int half = static_cast<int>(std::llround(extent / h));
  if (half < 2) throw std::invalid_argument("grid too coarse for its extent");
  return mode == GridMode::Radial ? half + 1 : 2 * half + 1;
}

std::size_t GridSpec::total_points() const {
  const std::size_t m = static_cast<std::size_t>(points_per_axis());
  if (mode == GridMode::Radial) return m;
  std::size_t total = 1;
  for (int d = 0; d < dim; ++d) total *= m;
  return total;
}

double GridSpec::coord(int axis_index) const {
  return mode == GridMode::Radial ? axis_index * h : -extent + axis_index * h;
}

std::array<int, 3> GridSpec::unflatten(std::size_t flat_index) const {
  std::array<int, 3> idx{0, 0, 0};
  if (mode == GridMode::Radial) {
    idx[0] = static_cast<int>(flat_index);
    return idx;
  }
  const std::size_t m = static_cast<std::size_t>(points_per_axis());
  for (int d = 0; d < dim; ++d) {
    idx[d] = static_cast<int>(flat_index % m);
    flat_index /= m;
  }
  return idx;
}

std::size_t GridSpec::flatten(const std::array<int, 3>& idx) const {
  if (mode == GridMode::Radial) return static_cast<std::size_t>(idx[0]);
  const std::size_t m = static_cast<std::size_t>(points_per_axis());
  std::size_t flat = 0;
  for (int d = dim - 1; d >= 0; --d) flat = flat * m + static_cast<std::size_t>(idx[d]);
  return flat;
}

double GridSpec::radius(std::size_t flat_index) const {
  if (mode == GridMode::Radial) return coord(static_cast<int>(flat_index));
  const auto idx = unflatten(flat_index);
  double r2 = 0.0;
  for (int d = 0; d < dim; ++d) {
    const double x = coord(idx[d]);
    r2 += x * x;
  }
  return std::sqrt(r2);
}

double GridSpec::cell_weight(std::size_t flat_index) const {
  if (mode == GridMode::Tensor) return std::pow(h, dim);
  // Exact cell volumes |S^{n-1}| * int_{cell} r^{n-1} dr; the origin cell is
  // [0, h/2], the boundary cell [r-h/2, r].
  const int i = static_cast<int>(flat_index);
  const int m = points_per_axis();
  const double r = i * h;
  const double lo = (i == 0) ? 0.0 : r - 0.5 * h;
  const double hi = (i == m - 1) ? r : r + 0.5 * h;
  const double n = static_cast<double>(dim);
  return sphere_surface(dim) * (std::pow(hi, n) - std::pow(lo, n)) / n;
}

double GridField::max_norm() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

GridField sample_radial(const GridSpec& g, const std::function<double(double)>& f) {
  GridField out(g);
  if (g.mode == GridMode::Radial) {
    for (std::size_t i = 0; i < out.values.size(); ++i)
      out.values[i] = f(g.coord(static_cast<int>(i)));
  } else {
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = f(g.radius(i));
  }
  return out;
}

GridField sample(const GridSpec& g,
                 const std::function<double(const std::array<double, 3>&)>& f) {
  GridField out(g);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const auto idx = g.unflatten(i);
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int d = 0; d < (g.mode == GridMode::Radial ? 1 : g.dim); ++d) x[d] = g.coord(idx[d]);
    out.values[i] = f(x);
  }
  return out;
}

double bump_profile(double s) {
  if (!(std::abs(s) < 1.0)) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

GridField bump_field(const GridSpec& g, const std::array<double, 3>& center, double radius,
                     double amplitude) {
  GridField out(g);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const auto idx = g.unflatten(i);
    double r2 = 0.0;
    if (g.mode == GridMode::Radial) {
      const double d = g.coord(idx[0]) - center[0];
      r2 = d * d;
    } else {
      for (int d = 0; d < g.dim; ++d) {
        const double x = g.coord(idx[d]) - center[d];
        r2 += x * x;
      }
    }
    out.values[i] = amplitude * bump_profile(std::sqrt(r2) / radius);
  }
  return out;
}

}  // namespace edes
