#include "edes/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace edes {

double blend_cutoff(double s) {
  if (s <= 0.0) return 1.0;
  if (s >= 1.0) return 0.0;
  return 1.0 - s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

namespace {

using CoeffFn = std::function<double(const std::array<double, 3>&)>;

double radius_of(const std::array<double, 3>& x, int dim) {
  double r2 = 0.0;
  for (int d = 0; d < dim; ++d) r2 += x[d] * x[d];
  return std::sqrt(r2);
}

// Blend a raw interior profile to the exterior constant over [r_a-1, r_a].
CoeffFn blended(CoeffFn raw, double c_ext, double r_a, int dim) {
  return [raw = std::move(raw), c_ext, r_a, dim](const std::array<double, 3>& x) {
    const double w = blend_cutoff(radius_of(x, dim) - (r_a - 1.0));
    return w * raw(x) + (1.0 - w) * c_ext;
  };
}

}  // namespace

EllipticOperator EllipticOperator::flat_laplacian(const GridSpec& grid, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("flat_laplacian: c must be positive");
  EllipticOperator op;
  op.grid_ = grid;
  op.preset_ = OperatorPreset::FlatLaplacian;
  op.c_ = c;
  op.r_a_ = 0.0;
  const auto one = [](const std::array<double, 3>&) { return 1.0; };
  const auto cc = [c](const std::array<double, 3>&) { return c; };
  const int naxes = grid.mode == GridMode::Radial ? 1 : grid.dim;
  op.build(one, std::vector<CoeffFn>(naxes, cc));
  return op;
}

EllipticOperator EllipticOperator::example1(const GridSpec& grid, double beta, double r_a) {
  if (!(beta > 0.0)) throw std::invalid_argument("example1: beta must be positive");
  if (!(r_a >= 1.0)) throw std::invalid_argument("example1: R_A must be >= 1");
  if (grid.mode == GridMode::Radial)
    throw std::invalid_argument("curved presets are not radially symmetric");
  EllipticOperator op;
  op.grid_ = grid;
  op.preset_ = OperatorPreset::Example1;
  op.r_a_ = r_a;
  op.c_ = (r_a * r_a + 1.0) / beta;  // clamp value of the x-coefficient at R_A
  std::vector<CoeffFn> raw = {
      [beta](const std::array<double, 3>& x) { return (x[0] * x[0] + 1.0) / beta; },
      [beta](const std::array<double, 3>& x) { return beta / (x[0] * x[0] + 1.0); },
      [](const std::array<double, 3>&) { return 1.0; },
  };
  raw.resize(grid.dim);
  std::vector<CoeffFn> coeffs;
  for (auto& fn : raw) coeffs.push_back(blended(std::move(fn), op.c_, r_a, grid.dim));
  op.build([](const std::array<double, 3>&) { return 1.0; }, coeffs);
  return op;
}

EllipticOperator EllipticOperator::example2(const GridSpec& grid, double beta, double r_a) {
  if (!(beta > 0.0)) throw std::invalid_argument("example2: beta must be positive");
  if (!(r_a >= 1.0)) throw std::invalid_argument("example2: R_A must be >= 1");
  if (grid.mode == GridMode::Radial)
    throw std::invalid_argument("curved presets are not radially symmetric");
  EllipticOperator op;
  op.grid_ = grid;
  op.preset_ = OperatorPreset::Example2;
  op.r_a_ = r_a;
  op.c_ = (std::exp(-r_a * r_a) + 1.0) / beta;
  std::vector<CoeffFn> raw = {
      [beta](const std::array<double, 3>& x) { return (std::exp(-x[0] * x[0]) + 1.0) / beta; },
      [beta](const std::array<double, 3>& x) { return beta / (std::exp(-x[0] * x[0]) + 1.0); },
      [](const std::array<double, 3>&) { return 1.0; },
  };
  raw.resize(grid.dim);
  std::vector<CoeffFn> coeffs;
  for (auto& fn : raw) coeffs.push_back(blended(std::move(fn), op.c_, r_a, grid.dim));
  op.build([](const std::array<double, 3>&) { return 1.0; }, coeffs);
  return op;
}

EllipticOperator EllipticOperator::custom(const GridSpec& grid, CoeffFn weight,
                                          std::vector<CoeffFn> axis_coeffs, double c,
                                          double r_a) {
  if (grid.mode == GridMode::Radial)
    throw std::invalid_argument("custom operators require a tensor grid");
  if (static_cast<int>(axis_coeffs.size()) != grid.dim)
    throw std::invalid_argument("custom: need one coefficient per axis");
  EllipticOperator op;
  op.grid_ = grid;
  op.preset_ = OperatorPreset::Custom;
  op.c_ = c;
  op.r_a_ = r_a;
  op.build(weight, axis_coeffs);
  return op;
}

void EllipticOperator::build(const CoeffFn& weight_fn, const std::vector<CoeffFn>& coeff_fns) {
  const std::size_t total = grid_.total_points();
  const int naxes = grid_.mode == GridMode::Radial ? 1 : grid_.dim;
  weight_.assign(total, 1.0);
  node_coeff_.assign(naxes, std::vector<double>(total, 0.0));
  face_coeff_.assign(naxes, std::vector<double>(total, 0.0));

  if (grid_.mode == GridMode::Radial) {
    // Flat preset on the radial line: faces carry the r^(n-1) Jacobian so the
    // flux form telescopes exactly against the cell volumes.
    const double c = c_;
    const int m = grid_.points_per_axis();
    for (int i = 0; i < m; ++i) {
      node_coeff_[0][static_cast<std::size_t>(i)] = c;
      const double rf = (i + 0.5) * grid_.h;
      face_coeff_[0][static_cast<std::size_t>(i)] =
          c * std::pow(rf, grid_.dim - 1.0);
    }
    validate();
    return;
  }

  for (std::size_t node = 0; node < total; ++node) {
    const auto idx = grid_.unflatten(node);
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int d = 0; d < grid_.dim; ++d) x[d] = grid_.coord(idx[d]);
    weight_[node] = weight_fn(x);
    for (int d = 0; d < naxes; ++d) {
      node_coeff_[d][node] = coeff_fns[d](x);
      std::array<double, 3> xf = x;
      xf[d] += 0.5 * grid_.h;
      face_coeff_[d][node] = coeff_fns[d](xf);
    }
  }
  validate();
}

void EllipticOperator::validate() const {
  double min_weight = weight_[0];
  for (double a : weight_) min_weight = std::min(min_weight, a);
  if (!(min_weight > 0.0))
    throw std::invalid_argument("elliptic operator: weight a(x) must be positive");
  for (const auto& axis : node_coeff_)
    for (double d : axis)
      if (!(d > 0.0))
        throw std::invalid_argument("elliptic operator: coefficients must be positive definite");
  if (grid_.mode == GridMode::Tensor && r_a_ > 0.0) {
    for (std::size_t node = 0; node < weight_.size(); ++node) {
      if (grid_.radius(node) < r_a_) continue;
      if (std::abs(weight_[node] - 1.0) > 1e-9)
        throw std::invalid_argument("elliptic operator: a(x) must equal 1 outside B_{R_A}");
      for (const auto& axis : node_coeff_)
        if (std::abs(axis[node] - c_) > 1e-9 * std::max(1.0, c_))
          throw std::invalid_argument(
              "elliptic operator: coefficients must equal c outside B_{R_A}");
    }
  }
}

void EllipticOperator::apply(const GridField& u, GridField& out) const {
  if (!(u.grid == grid_)) throw std::invalid_argument("apply: field grid mismatch");
  if (!(out.grid == grid_)) out = GridField(grid_);
  const int m = grid_.points_per_axis();
  const double h2 = grid_.h * grid_.h;

  if (grid_.mode == GridMode::Radial) {
    const double n = static_cast<double>(grid_.dim);
    const auto& fc = face_coeff_[0];
    for (int i = 0; i < m; ++i) {
      const std::size_t node = static_cast<std::size_t>(i);
      if (i == m - 1) {
        out.values[node] = 0.0;  // Dirichlet boundary row
        continue;
      }
      const double r = i * grid_.h;
      const double lo = (i == 0) ? 0.0 : r - 0.5 * grid_.h;
      const double hi = r + 0.5 * grid_.h;
      const double vol = (std::pow(hi, n) - std::pow(lo, n)) / n;
      const double flux_out = fc[node] * (u.values[node + 1] - u.values[node]);
      const double flux_in = (i == 0) ? 0.0 : fc[node - 1] * (u.values[node] - u.values[node - 1]);
      out.values[node] = (flux_out - flux_in) / (grid_.h * vol);
    }
    return;
  }

  const std::size_t total = grid_.total_points();
  std::array<std::size_t, 3> stride{1, 0, 0};
  std::size_t s = 1;
  for (int d = 0; d < grid_.dim; ++d) {
    stride[d] = s;
    s *= static_cast<std::size_t>(m);
  }
  for (std::size_t node = 0; node < total; ++node) {
    const auto idx = grid_.unflatten(node);
    bool border = false;
    for (int d = 0; d < grid_.dim; ++d)
      if (idx[d] == 0 || idx[d] == m - 1) border = true;
    if (border) {
      out.values[node] = 0.0;
      continue;
    }
    double acc = 0.0;
    for (int d = 0; d < grid_.dim; ++d) {
      const std::size_t up = node + stride[d];
      const std::size_t dn = node - stride[d];
      acc += face_coeff_[d][node] * (u.values[up] - u.values[node]) -
             face_coeff_[d][dn] * (u.values[node] - u.values[dn]);
    }
    out.values[node] = acc / (h2 * weight_[node]);
  }
}

GridField EllipticOperator::apply(const GridField& u) const {
  GridField out(grid_);
  apply(u, out);
  return out;
}

EllipticOperator::Speed EllipticOperator::propagation_speed() const {
  double paper = 0.0;
  for (std::size_t node = 0; node < weight_.size(); ++node) {
    double dmax = 0.0;
    for (const auto& axis : node_coeff_) dmax = std::max(dmax, axis[node]);
    paper = std::max(paper, dmax / weight_[node]);
  }
  return Speed{paper, std::sqrt(paper)};
}

double EllipticOperator::weighted_inner(const GridField& f, const GridField& g) const {
  double acc = 0.0;
  for (std::size_t node = 0; node < weight_.size(); ++node)
    acc += weight_[node] * f.values[node] * g.values[node] * grid_.cell_weight(node);
  return acc;
}

double self_adjointness_defect(const EllipticOperator& op, const GridField& u,
                               const GridField& v) {
  const GridField au = op.apply(u);
  const GridField av = op.apply(v);
  return std::abs(op.weighted_inner(au, v) - op.weighted_inner(u, av));
}

}  // namespace edes
