#include "edes/functionals.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace edes {

double evaluate_F(const SimState& state, const EllipticOperator& op) {
  double acc = 0.0;
  for (std::size_t i = 0; i < state.u.values.size(); ++i)
    acc += op.weight(i) * state.u.values[i] * op.grid().cell_weight(i);
  return acc;
}

double evaluate_F1(const SimState& state, const EllipticOperator& op, const Eigenfunction& phi,
                   double test_value) {
  double acc = 0.0;
  for (std::size_t i = 0; i < state.u.values.size(); ++i)
    acc += op.weight(i) * state.u.values[i] * phi.values[i] * op.grid().cell_weight(i);
  return test_value * acc;
}

double f2_identity_residual(const FunctionalTrace& trace) {
  const auto& s = trace.samples;
  if (s.size() < 5) throw std::invalid_argument("f2_identity_residual: need >= 5 samples");
  if (trace.params.nonlinearity != Nonlinearity::AbsPow)
    throw std::invalid_argument("f2_identity_residual: AbsPow runs only");
  const double p = trace.params.p;
  double worst = 0.0;
  for (std::size_t j = 1; j + 1 < s.size(); ++j) {
    const double t0 = s[j - 1].t, t1 = s[j].t, t2 = s[j + 1].t;
    const double h1 = t1 - t0, h2 = t2 - t1;
    // Three-point second derivative on a nonuniform stencil.
    const double fpp = 2.0 * (s[j - 1].F / (h1 * (h1 + h2)) - s[j].F / (h1 * h2) +
                              s[j + 1].F / (h2 * (h1 + h2)));
    const double rhs = std::pow(t1, 1.0 - p) * s[j].source_integral;
    if (rhs == 0.0) continue;
    worst = std::max(worst, std::abs(fpp - rhs) / std::abs(rhs));
  }
  return worst;
}

KatoResult kato_ode_integrate(double p, double q, double r, double F0, double F0p, double c,
                              double horizon) {
  (void)r;  // hypothesis bookkeeping only
  constexpr double kCap = 1e12;
  const auto rhs = [&](double t, double f) { return c * std::pow(1.0 + t, -q) * std::pow(std::abs(f), p); };

  double t = 0.0;
  double f = F0;
  double g = F0p;
  double dt = 1e-3;
  std::vector<double> ts{t}, fs{f};
  const double tol = 1e-8;

  const auto rk4 = [&](double t0, double f0, double g0, double h, double& f1, double& g1) {
    const double k1f = g0, k1g = rhs(t0, f0);
    const double k2f = g0 + 0.5 * h * k1g, k2g = rhs(t0 + 0.5 * h, f0 + 0.5 * h * k1f);
    const double k3f = g0 + 0.5 * h * k2g, k3g = rhs(t0 + 0.5 * h, f0 + 0.5 * h * k2f);
    const double k4f = g0 + h * k3g, k4g = rhs(t0 + h, f0 + h * k3f);
    f1 = f0 + h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
    g1 = g0 + h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
  };

  long samples_kept = 0;
  while (t < horizon) {
    if (f > kCap) break;
    if (dt < 1e-13 * (1.0 + t)) break;  // step collapse at the singularity
    dt = std::min(dt, horizon - t);
    // Step doubling: one full step vs two half steps.
    double f_full, g_full, f_half, g_half, f_two, g_two;
    rk4(t, f, g, dt, f_full, g_full);
    rk4(t, f, g, 0.5 * dt, f_half, g_half);
    rk4(t + 0.5 * dt, f_half, g_half, 0.5 * dt, f_two, g_two);
    const double scale = std::abs(f_two) + std::abs(dt * g_two) + 1e-30;
    const double err = std::abs(f_two - f_full) / scale;
    if (err > tol && dt > 1e-13 * (1.0 + t)) {
      dt *= 0.5;
      continue;
    }
    t += dt;
    f = f_two + (f_two - f_full) / 15.0;
    g = g_two + (g_two - g_full) / 15.0;
    if (++samples_kept % 4 == 0 || f > kCap) {
      ts.push_back(t);
      fs.push_back(f);
    }
    if (err < 0.1 * tol) dt = std::min(2.0 * dt, 0.05 * (1.0 + t));
  }

  KatoResult result;
  if (f > kCap) {
    result.outcome = KatoOutcome::Escape;
    result.escape_time = estimate_blowup_time(ts, fs, p);
  }
  return result;
}

F1BoundReport f1_lower_bound_check(const FunctionalTrace& trace, double k) {
  if (trace.params.start != StartKind::CauchyAtOne)
    throw std::invalid_argument("f1_lower_bound_check: Cauchy traces only");
  const double lam1 = Lambda1(k);
  const double coeff = lam1 * trace.m0 + trace.m1;
  if (!(coeff > 0.0))
    throw std::invalid_argument(
        "f1_lower_bound_check: hypothesis Lambda1 m0 + m1 > 0 violated");
  F1BoundReport report;
  report.bound_coefficient = coeff / 16.0;
  const auto& s = trace.samples;
  // First sample index from which the bound holds to the end.
  std::size_t onset = s.size();
  for (std::size_t j = s.size(); j-- > 0;) {
    const double bound = report.bound_coefficient * std::pow(s[j].t, k);
    if (s[j].F1 >= bound)
      onset = j;
    else
      break;
  }
  if (onset == s.size()) {
    report.onset_time = std::numeric_limits<double>::infinity();
    int count = 0;
    for (const auto& sample : s)
      if (sample.F1 < report.bound_coefficient * std::pow(sample.t, k)) ++count;
    report.violations = count;
  } else {
    report.onset_time = s[onset].t;
    report.violations = 0;
  }
  return report;
}

double f1_singular_growth_constant(const FunctionalTrace& trace) {
  if (trace.params.start != StartKind::SingularAtZero)
    throw std::invalid_argument("f1_singular_growth_constant: weighted traces only");
  if (!(trace.m1 > 0.0))
    throw std::invalid_argument("f1_singular_growth_constant: needs int a phi1 phi > 0");
  double fitted = std::numeric_limits<double>::infinity();
  bool any = false;
  for (const auto& s : trace.samples) {
    if (s.t <= 1.0) continue;
    const double shape = (9.0 * std::cbrt(s.t * s.t) - 1.0) * trace.m1;
    fitted = std::min(fitted, s.F1 / shape);
    any = true;
  }
  if (!any) throw std::invalid_argument("f1_singular_growth_constant: no samples beyond t=1");
  return fitted;
}

bool cone_check(const FunctionalTrace& trace, const ModelParams& params,
                const EllipticOperator& op, double tol) {
  const auto speed = op.propagation_speed();
  const double s_eff = std::max(speed.paper_value, speed.speed_value);
  const double phi0 = characteristic_time(params.k, trace.start_time);
  for (const auto& s : trace.samples) {
    const double cone =
        trace.initial_support_radius + (characteristic_time(params.k, s.t) - phi0) * s_eff + tol;
    if (s.mass_quantile_radius > cone) return false;
  }
  return true;
}

double holder_chain_excess(const FunctionalTrace& trace) {
  const double p = trace.params.p;
  const int n = trace.params.n;
  double worst = -std::numeric_limits<double>::infinity();
  const double ball_const = sphere_surface(n) / n;  // |B_1|
  for (const auto& s : trace.samples) {
    if (s.holder_integral <= 0.0) continue;
    const double vol = ball_const * std::pow(s.support_radius, n);
    const double rhs = std::pow(vol, p - 1.0) * s.holder_integral;
    const double lhs = std::pow(std::abs(s.F), p);
    worst = std::max(worst, (lhs - rhs) / rhs);
  }
  return worst;
}

}  // namespace edes
