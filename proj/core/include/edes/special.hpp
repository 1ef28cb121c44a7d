#ifndef EDES_SPECIAL_HPP
#define EDES_SPECIAL_HPP

#include <functional>
#include <vector>

#include "edes/grid.hpp"

namespace edes {

class EllipticOperator;

// Modified Bessel functions of real order. K is even in the order; I requires
// nu >= 0.意図された domain: nu in [0,5], z in (0, 700]. K underflows to zero
// once exp(-z) is not representable.
double bessel_I(double nu, double z);
double bessel_K(double nu, double z);
/// exp(z) * K_nu(z); safe for large z where K itself underflows.
double bessel_K_scaled(double nu, double z);

/// Upper incomplete gamma Gamma(a, z) = int_z^inf t^(a-1) e^(-t) dt, z > 0.
/// Negative a handled by the descending recurrence
/// Gamma(a, z) = (Gamma(a+1, z) - z^a e^(-z)) / a, seeded at E1 for integer a.
double incomplete_gamma_upper(double a, double z);

/// Exponential integral E1(z), z > 0.
double expint_e1(double z);

struct LambdaEds {
  double value;
  double derivative;
};

/// Decaying solution (phi(t)+1) e^(-phi(t)) of w'' = t^(-4/3) w, phi(t) = 3 t^(1/3).
LambdaEds lambda_eds(double t);

/// Decaying solution sqrt(t) K_nu(phi(t)) / K_nu(phi(1)) of w'' = t^(-2k) w,
/// nu = 1/(2-2k), phi(t) = t^(1-k)/(1-k); normalized to 1 at t = 1.
double lambda_tilde(double k, double t);
double log_lambda_tilde(double k, double t);

/// -d/dt lambda_tilde at t = 1: the Bessel ratio
/// K_{(1-2k)/(2-2k)}(1/(1-k)) / K_{1/(2-2k)}(1/(1-k)).
double Lambda1(double k);

/// Sphere average int_{S^{n-1}} exp(x.omega) domega at |x| = r, via the
/// reduction to a modified Bessel I of order (n-2)/2; n = 1 gives 2 cosh r.
double phi_L(int n, double r);

/// Surface measure of the unit sphere S^{n-1}.
double sphere_surface(int n);

// Positive solution of A phi = phi on the grid: discrete Dirichlet solve
// inside B_{R_A+1}(0), glued to the exterior closed form outside. For
// exterior constant c the closed form is phi_L(|x|/sqrt(c)), which satisfies
// c * Laplace(phi) = phi there.
struct Eigenfunction {
  GridSpec grid;
  std::vector<double> values;
  double min_value = 0.0;
};

Eigenfunction eigenfunction(const EllipticOperator& op);

/// Exterior closed form used by the eigenfunction glue.
double eigenfunction_exterior(int n, double c, double r);

struct GrowthBound {
  double lhs;        // int_{|x|<=tau} |phi_L|^{p/(p-1)} dx
  double rhs_shape;  // tau^{((n-1)/2)((p-2)/(p-1))} e^{tau p/(p-1)}
};

/// Quadrature check of the eigenfunction growth lemma (flat exterior, R_A = 0).
GrowthBound growth_bound_check(double p, int n, double tau);

struct WeightedIntegralBound {
  double lhs;  // lambda_tilde^2(t) * int_T^t lambda_tilde^(-2)(s) ds
  double rhs;  // t^k / 32
};

/// Quadrature check of the weighted-integral lower bound; evaluated in log
/// space so large phi(t) does not overflow.
WeightedIntegralBound weighted_integral_bound_check(double k, double t, double T);

namespace detail {
/// Adaptive Simpson quadrature on [a, b].
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, double abs_tol);
}  // namespace detail

}  // namespace edes

#endif
