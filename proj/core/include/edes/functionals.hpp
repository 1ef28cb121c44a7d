#ifndef EDES_FUNCTIONALS_HPP
#define EDES_FUNCTIONALS_HPP

#include <vector>

#include "edes/solver.hpp"

namespace edes {

/// F = int a u dx (a-weighted grid quadrature).
double evaluate_F(const SimState& state, const EllipticOperator& op);

/// F1 = test_value * int a u phi dx.
double evaluate_F1(const SimState& state, const EllipticOperator& op, const Eigenfunction& phi,
                   double test_value);

/// Max over interior samples of |F'' - t^(1-p) int a|u|^p| relative to the
/// source term; F'' by the three-point second difference on the stored trace.
double f2_identity_residual(const FunctionalTrace& trace);

enum class KatoOutcome { Escape, Bounded };

struct KatoResult {
  KatoOutcome outcome = KatoOutcome::Bounded;
  double escape_time = 0.0;  // extrapolated blow-up time when Escape
};

/// Integrates F'' = c (1+t)^(-q) |F|^p from F(0)=F0, F'(0)=F0p with an
/// adaptive RK4; Escape once F exceeds 1e12. The parameter r only documents
/// the growth hypothesis F >= c0 (1+t)^r of Kato's lemma; it does not enter
/// the integration.
KatoResult kato_ode_integrate(double p, double q, double r, double F0, double F0p, double c,
                              double horizon);

struct F1BoundReport {
  int violations = 0;
  double onset_time = 0.0;  // infinity when the bound never settles
  double bound_coefficient = 0.0;  // (1/16)(Lambda1 m0 + m1)
};

/// Checks F1(t) >= (1/16) t^k (Lambda1(k) m0 + m1) on the trace and reports the
/// first sample time after which no violations occur.
F1BoundReport f1_lower_bound_check(const FunctionalTrace& trace, double k);

/// Weighted-start analog: fitted constant min_{t>1} F1 / ((9 t^(2/3) - 1) m1).
double f1_singular_growth_constant(const FunctionalTrace& trace);

/// True when every sample keeps all but 1e-8 of the a-weighted mass inside the
/// ball of radius R + (phi(t)-phi(t0)) max(s_paper, sqrt(s_paper)) + tol.
bool cone_check(const FunctionalTrace& trace, const ModelParams& params,
                const EllipticOperator& op, double tol);

/// Largest violation of the discrete Hoelder chain
/// F^p <= (support ball volume)^(p-1) * int a^p |u|^p over the samples,
/// normalized by the right-hand side (non-positive when the inequality holds).
double holder_chain_excess(const FunctionalTrace& trace);

}  // namespace edes

#endif
