#include <cmath>
#include <limits>
#include <stdexcept>

#include "edes/special.hpp"

// Upper incomplete gamma for real a and z > 0. Positive a uses the regularized
// series / Lentz continued fraction split at z = a+1; negative a descends from
// a positive (or the E1) seed with Gamma(a,z) = (Gamma(a+1,z) - z^a e^-z)/a.

namespace edes {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIter = 10000;

// Regularized lower P(a, z) by series, valid z < a+1.
double gamma_p_series(double a, double z) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < kMaxIter; ++i) {
    ap += 1.0;
    del *= z / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-z + a * std::log(z) - std::lgamma(a));
}

// Gamma(a, z) by the Lentz continued fraction, valid z >= a+1 (a > 0) and for
// a <= 0 once z is away from the origin.
double gamma_upper_cf(double a, double z) {
  const double tiny = 1e-300;
  double b = z + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return std::exp(-z + a * std::log(z)) * h;
}

double pow_exp(double a, double z) {  // z^a e^-z without intermediate overflow
  return std::exp(a * std::log(z) - z);
}

}  // namespace

double expint_e1(double z) {
  if (!(z > 0.0)) throw std::invalid_argument("expint_e1: argument must be positive");
  if (z <= 1.0) {
    // E1(z) = -gamma - ln z + sum_{k>=1} (-1)^{k+1} z^k / (k k!)
    constexpr double kEulerGamma = 0.5772156649015329;
    double sum = 0.0;
    double term = 1.0;
    for (int k = 1; k <= kMaxIter; ++k) {
      term *= -z / k;
      const double del = -term / k;
      sum += del;
      if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    return -kEulerGamma - std::log(z) + sum;
  }
  // Lentz continued fraction E1(z) = e^-z / (z + 1 - 1/(z + 3 - 4/(z + 5 - ...))).
  const double tiny = 1e-300;
  double b = z + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return std::exp(-z) * h;
}

double incomplete_gamma_upper(double a, double z) {
  if (!(z > 0.0))
    throw std::invalid_argument("incomplete_gamma_upper: argument must be positive");
  if (a > 0.0) {
    if (z < a + 1.0) return std::tgamma(a) * (1.0 - gamma_p_series(a, z));
    return gamma_upper_cf(a, z);
  }
  const bool integer_a = (a == std::floor(a));
  int steps;
  double value;  // Gamma(seed, z)
  double seed;
  if (integer_a) {
    seed = 0.0;
    steps = static_cast<int>(-a);
    value = expint_e1(z);  // Gamma(0, z)
  } else if (z >= 1.0) {
    // The continued fraction converges for negative a once z is O(1).
    return gamma_upper_cf(a, z);
  } else {
    steps = static_cast<int>(std::ceil(-a));
    seed = a + steps;  // in (0, 1)
    value = std::tgamma(seed) * (1.0 - gamma_p_series(seed, z));
  }
  for (int j = 1; j <= steps; ++j) {
    const double s = seed - j;  // target order of this step
    value = (value - pow_exp(s, z)) / s;
  }
  return value;
}

}  // namespace edes
