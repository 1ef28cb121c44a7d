#ifndef EDES_OPERATORS_HPP
#define EDES_OPERATORS_HPP

#include <functional>
#include <string>
#include <vector>

#include "edes/grid.hpp"

namespace edes {

enum class OperatorPreset { FlatLaplacian, Example1, Example2, Custom };

// Divergence-form elliptic operator A u = (1/a) sum_j d_j (coeff_j d_j u) with
// a diagonal coefficient matrix, discretized by the conservative flux stencil
// (face coefficients at midpoints). The curved presets carry the x-dependent
// coefficients of the two example metrics inside B_{R_A}, blended with a C^2
// cutoff over [R_A-1, R_A] to the isotropic exterior constant c; the exterior
// constant is the clamp value of the x-coefficient at the ball radius.
class EllipticOperator {
 public:
  static EllipticOperator flat_laplacian(const GridSpec& grid, double c = 1.0);
  static EllipticOperator example1(const GridSpec& grid, double beta, double r_a = 2.0);
  static EllipticOperator example2(const GridSpec& grid, double beta, double r_a = 2.0);
  /// Arbitrary diagonal coefficients; the caller is responsible for exterior
  /// constancy. Construction validates positivity on all grid samples.
  static EllipticOperator custom(const GridSpec& grid,
                                 std::function<double(const std::array<double, 3>&)> weight,
                                 std::vector<std::function<double(const std::array<double, 3>&)>>
                                     axis_coeffs,
                                 double c, double r_a);

  const GridSpec& grid() const { return grid_; }
  OperatorPreset preset() const { return preset_; }
  double exterior_constant() const { return c_; }
  double exterior_radius() const { return r_a_; }

  void apply(const GridField& u, GridField& out) const;
  GridField apply(const GridField& u) const;

  struct Speed {
    double paper_value;  // max over grid of (max_j coeff_j(x)) / a(x)
    double speed_value;  // sqrt(paper_value): characteristic speed
  };
  Speed propagation_speed() const;

  double weight(std::size_t node) const { return weight_[node]; }
  double node_coeff(int axis, std::size_t node) const { return node_coeff_[axis][node]; }
  /// Face coefficient between node and its +1 neighbour along axis.
  double face_coeff(int axis, std::size_t node) const { return face_coeff_[axis][node]; }

  /// a-weighted inner product sum a(x) f g w(x).
  double weighted_inner(const GridField& f, const GridField& g) const;

 private:
  EllipticOperator() = default;
  void build(const std::function<double(const std::array<double, 3>&)>& weight_fn,
             const std::vector<std::function<double(const std::array<double, 3>&)>>& coeff_fns);
  void validate() const;

  GridSpec grid_;
  OperatorPreset preset_ = OperatorPreset::Custom;
  double c_ = 1.0;
  double r_a_ = 0.0;
  std::vector<double> weight_;                    // a(x) at nodes
  std::vector<std::vector<double>> node_coeff_;   // per axis, at nodes
  std::vector<std::vector<double>> face_coeff_;   // per axis, at +1/2 faces
};

/// |<Au, v>_a - <u, Av>_a|; rounding-level for the conservative stencil.
double self_adjointness_defect(const EllipticOperator& op, const GridField& u,
                               const GridField& v);

/// C^2 cutoff: 1 for s <= 0, 0 for s >= 1 (quintic smoothstep in between).
double blend_cutoff(double s);

}  // namespace edes

#endif
