#include "edes/exponents.hpp"

#include <cmath>
#include <stdexcept>

namespace edes {

namespace {

void require_dimension(int n) {
  if (n < 1) throw std::invalid_argument("spatial dimension n must be >= 1");
}

void require_degeneracy(double k) {
  if (!(k >= 0.0 && k < 1.0))
    throw std::invalid_argument("degeneracy exponent k must lie in [0,1)");
}

}  // namespace

namespace detail {

double p0_singular_real(double n) {
  return (n + 13.0 + std::sqrt(n * n + 34.0 * n + 193.0)) / (2.0 * (n + 3.0));
}

}  // namespace detail

double p0_singular(int n) {
  require_dimension(n);
  return detail::p0_singular_real(static_cast<double>(n));
}

double pcr(int n) {
  require_dimension(n);
  return std::max(p0_singular(n), 1.0 + 6.0 / n);
}

double p0_nk(int n, double k) {
  require_dimension(n);
  require_degeneracy(k);
  const double disc =
      k * k * (n + 5.0) * (n + 5.0) - 2.0 * k * (n * (n + 14.0) + 29.0) + n * (n + 18.0) + 49.0;
  return (n + 5.0 - k * (n + 1.0) + std::sqrt(disc)) / (2.0 * (1.0 - k) * (n + 3.0));
}

double fujita_like(int n, double k) {
  require_dimension(n);
  require_degeneracy(k);
  return 1.0 + 2.0 / (n * (1.0 - k));
}

double upper_bound_case2(int n, double k) {
  require_dimension(n);
  require_degeneracy(k);
  return (2.0 / (n + 3.0)) * (n - 1.0 + 2.0 / (1.0 - k));
}

double alpha0(int n) {
  require_dimension(n);
  const double m = n + 3.0;
  return (-m + std::sqrt(n * n + 30.0 * n + 81.0)) / (2.0 * m);
}

bool kato_condition(double p, double q, double r) {
  return r >= 1.0 && p > 1.0 && (p - 1.0) * r > q - 2.0;
}

Prediction blowup_predicted(int n, double k, double p, Problem problem) {
  require_dimension(n);
  require_degeneracy(k);
  if (!(p > 1.0)) throw std::invalid_argument("exponent p must exceed 1");
  if (problem == Problem::SingularAtZero) {
    // The weighted problem is stated for the EdeS exponent only.
    if (std::abs(k - 2.0 / 3.0) > 1e-12)
      throw std::invalid_argument("singular start requires k = 2/3");
    return p < pcr(n) ? Prediction::Blowup : Prediction::NoPrediction;
  }
  const bool case1 = p < fujita_like(n, k);
  const bool case2 = p <= upper_bound_case2(n, k) && p < p0_nk(n, k);
  return (case1 || case2) ? Prediction::Blowup : Prediction::NoPrediction;
}

ExponentReport exponent_report(int n, double k) {
  require_dimension(n);
  require_degeneracy(k);
  return ExponentReport{
      n,
      k,
      p0_singular(n),
      pcr(n),
      p0_nk(n, k),
      fujita_like(n, k),
      upper_bound_case2(n, k),
      alpha0(n),
  };
}

}  // namespace edes
