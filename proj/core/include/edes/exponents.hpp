#ifndef EDES_EXPONENTS_HPP
#define EDES_EXPONENTS_HPP

namespace edes {

// Critical-exponent algebra for the degenerate semilinear wave equation
//   u_tt - t^(-2k) A u = t^(1-p) |u|^p
// in the Einstein-de Sitter setting (k = 2/3 for the singular start).
// All thresholds are explicit radicals; no root finding.

/// Positive root of (n+3) p^2 - (n+13) p - 2 = 0.
double p0_singular(int n);

/// max(p0_singular(n), 1 + 6/n).
double pcr(int n);

/// Positive root of (1-k)(n+3) p^2 - (n+5-k(n+1)) p - 2 + 2k = 0, for 0 <= k < 1.
double p0_nk(int n, double k);

/// Fujita-type first-case threshold 1 + 2/(n(1-k)).
double fujita_like(int n, double k);

/// Second-case admissibility bound (2/(n+3)) (n - 1 + 2/(1-k)).
double upper_bound_case2(int n, double k);

/// Positive root of (n+3) a^2 + (n+3) a - 6 = 0; local-solvability exponent range is (0, alpha0).
double alpha0(int n);

/// Blow-up condition of Kato's lemma: r >= 1, p > 1 and (p-1) r > q - 2.
bool kato_condition(double p, double q, double r);

enum class Problem { SingularAtZero, CauchyAtOne };
enum class Prediction { Blowup, NoPrediction };

// The theorems are one-sided: above the thresholds nothing is claimed,
// so the negative branch is NoPrediction, never "global existence".
Prediction blowup_predicted(int n, double k, double p, Problem problem);

struct ExponentReport {
  int n;
  double k;
  double p0_singular;
  double pcr;
  double p0_nk;
  double fujita_like;
  double upper_bound_case2;
  double alpha0;
};

ExponentReport exponent_report(int n, double k);

namespace detail {
// Real-argument versions backing the closed forms; used by the ratio table
// and the bisection that locates where p0_singular crosses 1 + 6/n.
double p0_singular_real(double n);
}  // namespace detail

}  // namespace edes

#endif
