#include "edes/special.hpp"

#include <cmath>
#include <stdexcept>

namespace edes {

namespace detail {

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double fa, double b,
                            double fb, double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, double abs_tol) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = simpson(a, fa, b, fb, fm);
  const double tol = std::max(abs_tol, rel_tol * std::abs(whole));
  return adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

}  // namespace detail

double sphere_surface(int n) {
  if (n < 1) throw std::invalid_argument("sphere_surface: dimension must be >= 1");
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

LambdaEds lambda_eds(double t) {
  if (!(t > 0.0)) throw std::invalid_argument("lambda_eds: t must be positive");
  const double phi = 3.0 * std::cbrt(t);
  const double e = std::exp(-phi);
  return LambdaEds{(phi + 1.0) * e, -(9.0 / phi) * e};
}

namespace {

void require_k(double k) {
  if (!(k >= 0.0 && k < 1.0))
    throw std::invalid_argument("degeneracy exponent k must lie in [0,1)");
}

double char_time(double k, double t) { return std::pow(t, 1.0 - k) / (1.0 - k); }

}  // namespace

double log_lambda_tilde(double k, double t) {
  require_k(k);
  if (!(t >= 1.0)) throw std::invalid_argument("lambda_tilde: t must be >= 1");
  const double nu = 1.0 / (2.0 - 2.0 * k);
  const double zt = char_time(k, t);
  const double z1 = char_time(k, 1.0);
  return 0.5 * std::log(t) + std::log(bessel_K_scaled(nu, zt)) - zt -
         (std::log(bessel_K_scaled(nu, z1)) - z1);
}

double lambda_tilde(double k, double t) { return std::exp(log_lambda_tilde(k, t)); }

double Lambda1(double k) {
  require_k(k);
  const double z = 1.0 / (1.0 - k);
  const double nu_num = (1.0 - 2.0 * k) / (2.0 - 2.0 * k);
  const double nu_den = 1.0 / (2.0 - 2.0 * k);
  return bessel_K_scaled(nu_num, z) / bessel_K_scaled(nu_den, z);
}

double phi_L(int n, double r) {
  if (n < 1) throw std::invalid_argument("phi_L: dimension must be >= 1");
  if (r < 0.0) throw std::invalid_argument("phi_L: radius must be >= 0");
  if (n == 1) return 2.0 * std::cosh(r);
  if (r < 1e-6) return sphere_surface(n) * (1.0 + r * r / (2.0 * n));
  const double nu = 0.5 * n - 1.0;
  return std::pow(2.0 * M_PI, 0.5 * n) * std::pow(r, -nu) * bessel_I(nu, r);
}

double eigenfunction_exterior(int n, double c, double r) {
  return phi_L(n, r / std::sqrt(c));
}

GrowthBound growth_bound_check(double p, int n, double tau) {
  if (!(p > 1.0)) throw std::invalid_argument("growth_bound_check: p must exceed 1");
  if (!(tau >= 1.0))
    throw std::invalid_argument("growth_bound_check: tau must be >= R_A + 1 = 1");
  const double expnt = p / (p - 1.0);
  const auto integrand = [&](double r) {
    return std::pow(phi_L(n, r), expnt) * std::pow(r, n - 1.0);
  };
  const double lhs =
      sphere_surface(n) * detail::adaptive_simpson(integrand, 0.0, tau, 1e-11, 1e-300);
  const double rhs_shape =
      std::pow(tau, 0.5 * (n - 1.0) * (p - 2.0) / (p - 1.0)) * std::exp(tau * expnt);
  return GrowthBound{lhs, rhs_shape};
}

WeightedIntegralBound weighted_integral_bound_check(double k, double t, double T) {
  require_k(k);
  if (!(1.0 < T && T < t))
    throw std::invalid_argument("weighted_integral_bound_check: need 1 < T < t");
  const double log_lt = log_lambda_tilde(k, t);
  const auto integrand = [&](double s) {
    return std::exp(2.0 * (log_lt - log_lambda_tilde(k, s)));
  };
  const double lhs = detail::adaptive_simpson(integrand, T, t, 1e-10, 1e-300);
  return WeightedIntegralBound{lhs, std::pow(t, k) / 32.0};
}

}  // namespace edes
