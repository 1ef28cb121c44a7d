#include <cmath>
#include <limits>
#include <stdexcept>

#include "edes/special.hpp"

// Modified Bessel I and K of real order. K follows Temme's series for small
// argument and the Steed/Thompson-Barnett continued fraction for z > 2, with
// the order reduced to |mu| <= 1/2 and recurred upward. I uses the ascending
// power series (all terms positive) for moderate z and the large-z expansion
// beyond, truncated at its smallest term.

namespace edes {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIter = 10000;

// Coefficients of 1/Gamma(1+x) = sum a_k x^k (Abramowitz & Stegun 6.1.34).
constexpr double kInvGammaCoeff[] = {
    1.0,
    0.5772156649015329,
    -0.6558780715202538,
    -0.0420026350340952,
    0.1665386113822915,
    -0.0421977345555443,
    -0.0096219715278770,
    0.0072189432466630,
    -0.0011651675918591,
    -0.0002152416741149,
    0.0001280502823882,
};

struct TemmeGammas {
  double gam1;   // (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)
  double gam2;   // (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2
  double gampl;  // 1/Gamma(1+mu)
  double gammi;  // 1/Gamma(1-mu)
};

TemmeGammas temme_gammas(double mu) {
  TemmeGammas g;
  g.gampl = 1.0 / std::tgamma(1.0 + mu);
  g.gammi = 1.0 / std::tgamma(1.0 - mu);
  if (std::abs(mu) < 0.05) {
    // Odd part of the 1/Gamma series; avoids the cancellation in the quotient.
    const double m2 = mu * mu;
    double s = 0.0;
    double pw = 1.0;
    for (int k = 1; k < 11; k += 2) {
      s += kInvGammaCoeff[k] * pw;
      pw *= m2;
    }
    g.gam1 = -s;
  } else {
    g.gam1 = (g.gammi - g.gampl) / (2.0 * mu);
  }
  g.gam2 = 0.5 * (g.gammi + g.gampl);
  return g;
}

// K_mu(x) and K_{mu+1}(x) for x <= 2, |mu| <= 1/2 (Temme 1975).
void bessel_k_series(double mu, double x, double& kmu, double& kmu1) {
  const double d = -std::log(0.5 * x);
  const double sigma = mu * d;
  const double pimu = M_PI * mu;
  const double fact = std::abs(pimu) < 1e-30 ? 1.0 : pimu / std::sin(pimu);
  const double sinhc = std::abs(sigma) < 1e-30 ? 1.0 : std::sinh(sigma) / sigma;
  const auto g = temme_gammas(mu);
  double f = fact * (g.gam1 * std::cosh(sigma) + g.gam2 * sinhc * d);
  double p = 0.5 * std::exp(sigma) / g.gampl;
  double q = 0.5 * std::exp(-sigma) / g.gammi;
  double c = 1.0;
  const double x2 = 0.25 * x * x;
  double sum = f;
  double sum1 = p;
  for (int i = 1; i <= kMaxIter; ++i) {
    f = (i * f + p + q) / (i * i - mu * mu);
    c *= x2 / i;
    p /= (i - mu);
    q /= (i + mu);
    const double del = c * f;
    sum += del;
    sum1 += c * (p - i * f);
    if (std::abs(del) < std::abs(sum) * kEps) break;
  }
  kmu = sum;
  kmu1 = sum1 * 2.0 / x;
}

// exp(x) K_mu(x) and exp(x) K_{mu+1}(x) for x > 2, |mu| <= 1/2.
void bessel_k_cf2(double mu, double x, double& kmu, double& kmu1) {
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25 - mu * mu;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i <= kMaxIter; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) <= kEps) break;
  }
  h = a1 * h;
  kmu = std::sqrt(M_PI / (2.0 * x)) / s;
  kmu1 = kmu * (mu + x + 0.5 - h) / x;
}

// exp(x) K_nu(x) for nu >= 0, x > 0.
double bessel_k_scaled_impl(double nu, double x) {
  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;
  double kmu, kmu1;
  if (x <= 2.0) {
    bessel_k_series(mu, x, kmu, kmu1);
    const double scale = std::exp(x);
    kmu *= scale;
    kmu1 *= scale;
  } else {
    bessel_k_cf2(mu, x, kmu, kmu1);
  }
  for (int i = 1; i <= nl; ++i) {
    const double knext = kmu + 2.0 * (mu + i) / x * kmu1;
    kmu = kmu1;
    kmu1 = knext;
  }
  return kmu;
}

}  // namespace

double bessel_K_scaled(double nu, double z) {
  if (!(z > 0.0)) throw std::invalid_argument("bessel_K: argument must be positive");
  return bessel_k_scaled_impl(std::abs(nu), z);
}

double bessel_K(double nu, double z) {
  if (!(z > 0.0)) throw std::invalid_argument("bessel_K: argument must be positive");
  const double scaled = bessel_k_scaled_impl(std::abs(nu), z);
  return scaled * std::exp(-z);  // underflows to zero for huge z
}

double bessel_I(double nu, double z) {
  if (!(z > 0.0)) throw std::invalid_argument("bessel_I: argument must be positive");
  if (nu < 0.0) throw std::invalid_argument("bessel_I: order must be non-negative");
  if (z <= 40.0) {
    // Ascending series; every term positive, no cancellation.
    double term = std::pow(0.5 * z, nu) / std::tgamma(nu + 1.0);
    double sum = term;
    const double q = 0.25 * z * z;
    for (int m = 1; m <= kMaxIter; ++m) {
      term *= q / (m * (nu + m));
      sum += term;
      if (term < sum * kEps) break;
    }
    return sum;
  }
  // Large-argument expansion, stopped at its smallest term.
  const double mu4 = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  double prev = std::numeric_limits<double>::max();
  for (int k = 1; k <= 40; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu4 - odd * odd) / (8.0 * k * z);
    if (std::abs(term) >= prev) break;
    sum += term;
    prev = std::abs(term);
    if (std::abs(term) < kEps * std::abs(sum)) break;
  }
  return std::exp(z) / std::sqrt(2.0 * M_PI * z) * sum;
}

}  // namespace edes
