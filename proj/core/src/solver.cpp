#include "edes/solver.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace edes {

double characteristic_time(double k, double t) { return std::pow(t, 1.0 - k) / (1.0 - k); }

void ModelParams::validate() {
  if (n < 1 || n > 10) throw std::invalid_argument("model: n must lie in [1,10]");
  if (!(k >= 0.0 && k < 1.0)) throw std::invalid_argument("model: k must lie in [0,1)");
  if (nonlinearity != Nonlinearity::None && !(p > 1.0))
    throw std::invalid_argument("model: p must exceed 1 for a nonlinear run");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("model: CFL must lie in (0,1]");
  if (start == StartKind::SingularAtZero) {
    if (!(epsilon > 0.0 && epsilon <= 0.1))
      throw std::invalid_argument("model: epsilon must lie in (0, 0.1]");
    if (std::abs(k - 2.0 / 3.0) > 1e-12)
      throw std::invalid_argument("model: the weighted start requires k = 2/3");
    k = 2.0 / 3.0;
  }
  if (!(horizon > start_time())) throw std::invalid_argument("model: horizon before start");
  if (output_stride < 1) throw std::invalid_argument("model: output stride must be >= 1");
}

double suggested_extent(const ModelParams& params, double s_paper, double data_radius,
                        double h) {
  const double span =
      characteristic_time(params.k, params.horizon) - characteristic_time(params.k, params.start_time());
  return data_radius + span * std::max(s_paper, std::sqrt(s_paper)) + 5.0 * h;
}

namespace detail {

LeapfrogStepper::LeapfrogStepper(const ModelParams& params, const EllipticOperator& op,
                                 double tau0, double dtau, const GridField& u0,
                                 const GridField& u_tau0)
    : params_(params), op_(op), k_(params.k), tau0_(tau0), dtau_(dtau), u_prev_(u0),
      u_curr_(u0), scratch_(u0.grid) {
  // Taylor start: u_1 = u_0 + dtau v_0 + dtau^2/2 (A u_0 + b v_0 + S_0).
  const GridField acc = acceleration(u0, time());
  const double b0 = damping(tau0_);
  for (std::size_t i = 0; i < u_curr_.values.size(); ++i) {
    u_curr_.values[i] = u0.values[i] + dtau_ * u_tau0.values[i] +
                        0.5 * dtau_ * dtau_ * (acc.values[i] + b0 * u_tau0.values[i]);
  }
  m_ = 1;
}

double LeapfrogStepper::time() const {
  return std::pow((1.0 - k_) * tau(), 1.0 / (1.0 - k_));
}

GridField LeapfrogStepper::acceleration(const GridField& u, double t) const {
  GridField acc = op_.apply(u);
  const ModelParams& mp = params_;
  const bool have_nl = mp.nonlinearity != Nonlinearity::None;
  if (!have_nl && !external_source_) return acc;
  // tau-form source t^{2k} g(x,t); the intrinsic g is coupling * t^{1-p} N(u).
  const double t2k = std::pow(t, 2.0 * k_);
  const double amp = mp.coupling * std::pow(t, 1.0 - mp.p + 2.0 * k_);
  for (std::size_t i = 0; i < acc.values.size(); ++i) {
    double s = 0.0;
    if (have_nl) {
      const double v = u.values[i];
      const double av = std::abs(v);
      const double pw = std::pow(av, mp.p);
      s += amp * (mp.nonlinearity == Nonlinearity::AbsPow ? pw : (v < 0.0 ? -pw : pw));
    }
    if (external_source_) s += t2k * external_source_(i, t);
    acc.values[i] += s;
  }
  return acc;
}

void LeapfrogStepper::step() {
  const double tau_m = tau();
  const double theta = 0.5 * damping(tau_m) * dtau_;
  const GridField acc = acceleration(u_curr_, time());
  const double inv = 1.0 / (1.0 - theta);
  for (std::size_t i = 0; i < u_curr_.values.size(); ++i) {
    const double next = inv * (2.0 * u_curr_.values[i] - (1.0 + theta) * u_prev_.values[i] +
                               dtau_ * dtau_ * acc.values[i]);
    u_prev_.values[i] = u_curr_.values[i];
    u_curr_.values[i] = next;
  }
  ++m_;
}

void LeapfrogStepper::step_back() {
  // Invert: u_next (1-theta) = 2 u_m - (1+theta) u_prev + dtau^2 acc(u_m)
  // for u_prev, given (u_m, u_next) = (u_prev_, u_curr_) one level down.
  const double tau_m = tau() - dtau_;  // level of u_prev_ (the middle point)
  const double theta = 0.5 * damping(tau_m) * dtau_;
  const double t_m = std::pow((1.0 - k_) * tau_m, 1.0 / (1.0 - k_));
  const GridField acc = acceleration(u_prev_, t_m);
  const double inv = 1.0 / (1.0 + theta);
  for (std::size_t i = 0; i < u_curr_.values.size(); ++i) {
    const double prev = inv * (2.0 * u_prev_.values[i] - (1.0 - theta) * u_curr_.values[i] +
                               dtau_ * dtau_ * acc.values[i]);
    u_curr_.values[i] = u_prev_.values[i];
    u_prev_.values[i] = prev;
  }
  --m_;
}

GridField LeapfrogStepper::velocity_tau() const {
  // One-sided second-order: v (1 - theta) = (u_m - u_{m-1})/dtau + dtau/2 (A u_m + S_m).
  const double tau_m = tau();
  const double theta = 0.5 * damping(tau_m) * dtau_;
  const GridField acc = acceleration(u_curr_, time());
  GridField v(u_curr_.grid);
  const double inv = 1.0 / (1.0 - theta);
  for (std::size_t i = 0; i < v.values.size(); ++i) {
    v.values[i] = inv * ((u_curr_.values[i] - u_prev_.values[i]) / dtau_ +
                         0.5 * dtau_ * acc.values[i]);
  }
  return v;
}

GridField LeapfrogStepper::velocity_t() const {
  GridField v = velocity_tau();
  const double tk = std::pow(time(), -k_);
  for (double& x : v.values) x *= tk;
  return v;
}

void LeapfrogStepper::set_external_source(std::function<double(std::size_t, double)> source) {
  external_source_ = std::move(source);
}

}  // namespace detail

namespace {

double support_radius_of(const GridField& f, const GridSpec& g,
                         const std::array<double, 3>& center) {
  const double cutoff = 1e-12 * f.max_norm();
  if (!(cutoff > 0.0)) return 0.0;
  double radius = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (std::abs(f.values[i]) <= cutoff) continue;
    const auto idx = g.unflatten(i);
    double r2 = 0.0;
    for (int d = 0; d < (g.mode == GridMode::Radial ? 1 : g.dim); ++d) {
      const double x = g.coord(idx[d]) - center[d];
      r2 += x * x;
    }
    radius = std::max(radius, std::sqrt(r2));
  }
  return radius;
}

struct MomentAccumulator {
  const EllipticOperator& op;
  double weighted_integral(const GridField& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
      acc += op.weight(i) * f.values[i] * op.grid().cell_weight(i);
    return acc;
  }
  double eigen_moment(const GridField& f, const Eigenfunction* phi) const {
    if (phi == nullptr) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
      acc += op.weight(i) * f.values[i] * phi->values[i] * op.grid().cell_weight(i);
    return acc;
  }
};

void fill_moments(SimState& state, const EllipticOperator& op, const GridField& phi0,
                  const GridField& phi1, const Eigenfunction* phi, bool weighted) {
  const MomentAccumulator acc{op};
  if (weighted) {
    state.c0 = acc.weighted_integral(phi0);
    state.c1 = acc.weighted_integral(phi1);
    state.m0 = acc.eigen_moment(phi0, phi);
    state.m1 = acc.eigen_moment(phi1, phi);
  } else {
    state.c0 = acc.weighted_integral(state.u);      // int a u0
    state.c1 = acc.weighted_integral(state.u_t);    // int a u1
    state.m0 = acc.eigen_moment(state.u, phi);
    state.m1 = acc.eigen_moment(state.u_t, phi);
  }
  GridField data_span(phi0.grid);
  for (std::size_t i = 0; i < data_span.values.size(); ++i)
    data_span.values[i] = std::abs(phi0.values[i]) + std::abs(phi1.values[i]);
  state.initial_support_radius =
      support_radius_of(data_span, phi0.grid, std::array<double, 3>{0.0, 0.0, 0.0});
}

}  // namespace

SimState init_weighted(const ModelParams& params, const EllipticOperator& op,
                       const GridField& phi0, const GridField& phi1, const Eigenfunction* phi) {
  ModelParams mp = params;
  mp.validate();
  if (mp.start != StartKind::SingularAtZero)
    throw std::invalid_argument("init_weighted: params request a Cauchy start");
  const double eps = mp.epsilon;
  const GridField a_phi0 = op.apply(phi0);
  const double e23 = std::pow(eps, 2.0 / 3.0);
  const double e13 = std::cbrt(eps);
  SimState state;
  state.t = eps;
  state.u = GridField(phi0.grid);
  state.u_t = GridField(phi0.grid);
  for (std::size_t i = 0; i < phi0.values.size(); ++i) {
    state.u.values[i] = phi0.values[i] + eps * phi1.values[i] - 4.5 * e23 * a_phi0.values[i];
    state.u_t.values[i] = phi1.values[i] - 3.0 / e13 * a_phi0.values[i];
  }
  if (e23 * a_phi0.max_norm() > 0.1 * phi0.max_norm() && phi0.max_norm() > 0.0)
    std::cerr << "init_weighted: epsilon too large for the asymptotic start "
              << "(eps^{2/3} |A phi0| > 0.1 |phi0|)\n";
  fill_moments(state, op, phi0, phi1, phi, /*weighted=*/true);
  return state;
}

SimState init_cauchy(const ModelParams& params, const EllipticOperator& op,
                     const GridField& phi0, const GridField& phi1, const Eigenfunction* phi) {
  ModelParams mp = params;
  mp.validate();
  if (mp.start != StartKind::CauchyAtOne)
    throw std::invalid_argument("init_cauchy: params request a weighted start");
  SimState state;
  state.t = 1.0;
  state.u = phi0;
  state.u_t = GridField(phi0.grid);
  for (std::size_t i = 0; i < phi0.values.size(); ++i)
    state.u_t.values[i] = phi0.values[i] + phi1.values[i];
  fill_moments(state, op, phi0, phi1, phi, /*weighted=*/false);
  return state;
}

double explicit_solution(ExplicitKind kind, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("explicit_solution: t must be positive");
  const double x = 3.0 * std::cbrt(t);
  switch (kind) {
    case ExplicitKind::U: return std::cosh(x) - x * std::sinh(x);
    case ExplicitKind::W: return std::sinh(x) - x * std::cosh(x);
    case ExplicitKind::V: return (x + 1.0) * std::exp(-x);
  }
  return 0.0;
}

std::pair<GridField, GridField> liouville_to_psi(const SimState& state) {
  if (!(state.t > 0.0)) throw std::invalid_argument("liouville_to_psi: t must be positive");
  GridField psi(state.u.grid);
  GridField psi_t(state.u.grid);
  const double inv_t = 1.0 / state.t;
  for (std::size_t i = 0; i < psi.values.size(); ++i) {
    psi.values[i] = state.u.values[i] * inv_t;
    psi_t.values[i] = state.u_t.values[i] * inv_t - state.u.values[i] * inv_t * inv_t;
  }
  return {std::move(psi), std::move(psi_t)};
}

double estimate_blowup_time(const std::vector<double>& t, const std::vector<double>& F,
                            double p) {
  if (t.size() != F.size() || t.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double f_end = F.back();
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (F[i] > 0.0 && F[i] >= 0.1 * f_end) {
      xs.push_back(t[i]);
      ys.push_back(std::pow(F[i], -0.5 * (p - 1.0)));
    }
  }
  if (xs.size() < 3) return t.back();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return t.back();
  const double slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;
  if (!(slope < 0.0)) return t.back();
  return -intercept / slope;
}

namespace {

struct SampleMachinery {
  const EllipticOperator& op;
  const Eigenfunction* phi;
  const ModelParams& params;
  std::array<double, 3> center{0.0, 0.0, 0.0};
  std::vector<std::size_t> by_radius_desc;  // node order for the mass quantile
  std::vector<double> radius;

  explicit SampleMachinery(const EllipticOperator& op_, const Eigenfunction* phi_,
                           const ModelParams& params_)
      : op(op_), phi(phi_), params(params_) {
    const GridSpec& g = op.grid();
    const std::size_t total = g.total_points();
    radius.resize(total);
    by_radius_desc.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
      const auto idx = g.unflatten(i);
      double r2 = 0.0;
      for (int d = 0; d < (g.mode == GridMode::Radial ? 1 : g.dim); ++d) {
        const double x = g.coord(idx[d]) - center[d];
        r2 += x * x;
      }
      radius[i] = std::sqrt(r2);
      by_radius_desc[i] = i;
    }
    std::sort(by_radius_desc.begin(), by_radius_desc.end(),
              [&](std::size_t a, std::size_t b) { return radius[a] > radius[b]; });
  }

  TraceSample sample(const GridField& u, double t, double test_value) const {
    const GridSpec& g = op.grid();
    TraceSample s;
    s.t = t;
    s.max_norm = u.max_norm();
    double mass = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
      const double w = g.cell_weight(i);
      const double a = op.weight(i);
      const double v = u.values[i];
      s.F += a * v * w;
      if (phi != nullptr) s.F1 += a * v * phi->values[i] * w;
      const double pw = std::pow(std::abs(v), params.p);
      s.source_integral += a * pw * w;
      s.holder_integral += std::pow(a, params.p) * pw * w;
      mass += a * std::abs(v) * w;
    }
    s.F1 *= test_value;
    // Support radius and the (1 - 1e-8) mass quantile radius.
    const double cutoff = 1e-12 * s.max_norm;
    double sup_r = 0.0;
    if (cutoff > 0.0) {
      for (std::size_t i = 0; i < u.values.size(); ++i)
        if (std::abs(u.values[i]) > cutoff) sup_r = std::max(sup_r, radius[i]);
    }
    s.support_radius = sup_r;
    if (mass > 0.0) {
      const double budget = 1e-8 * mass;
      double outside = 0.0;
      double quantile = 0.0;
      for (std::size_t rank = 0; rank < by_radius_desc.size(); ++rank) {
        const std::size_t i = by_radius_desc[rank];
        const double contrib = op.weight(i) * std::abs(u.values[i]) * g.cell_weight(i);
        if (outside + contrib > budget) {
          quantile = radius[i];
          break;
        }
        outside += contrib;
      }
      s.mass_quantile_radius = quantile;
    }
    return s;
  }
};

bool has_non_finite(const GridField& f) {
  for (double v : f.values)
    if (!std::isfinite(v)) return true;
  return false;
}

}  // namespace

RunResult run(const SimState& state, const ModelParams& params, const EllipticOperator& op,
              const Eigenfunction* phi) {
  ModelParams mp = params;
  mp.validate();
  if (!(state.u.grid == op.grid()))
    throw std::invalid_argument("run: state and operator grids differ");

  const double tau0 = characteristic_time(mp.k, state.t);
  const double tau_end = characteristic_time(mp.k, mp.horizon);
  const auto speed = op.propagation_speed();
  double dtau = mp.cfl * op.grid().h / std::max(1.0, speed.speed_value);

  RunResult result;
  result.trace.params = mp;
  result.trace.start_time = state.t;
  result.trace.c0 = state.c0;
  result.trace.c1 = state.c1;
  result.trace.m0 = state.m0;
  result.trace.m1 = state.m1;
  result.trace.initial_support_radius = state.initial_support_radius;
  result.trace.s_paper = speed.paper_value;
  result.trace.s_speed = speed.speed_value;

  const double span = tau_end - tau0;
  if (!(dtau > 0.0) || span / dtau > 5e7) {
    result.outcome = Outcome::StepCollapse;
    result.diagnostic = "time step underflow";
    result.final_state = state;
    return result;
  }
  const long nsteps = std::max<long>(1, static_cast<long>(std::ceil(span / dtau)));
  dtau = span / static_cast<double>(nsteps);

  const double cap =
      mp.blowup_cap > 0.0 ? mp.blowup_cap : 1e8 * (state.u.max_norm() + 1.0);

  const SampleMachinery machinery(op, phi, mp);
  const auto test_value = [&](double t) {
    if (phi == nullptr) return 1.0;
    return mp.start == StartKind::SingularAtZero ? lambda_eds(t).value
                                                 : lambda_tilde(mp.k, std::max(t, 1.0));
  };

  GridField u_tau0(state.u.grid);
  const double tk = std::pow(state.t, mp.k);
  for (std::size_t i = 0; i < u_tau0.values.size(); ++i)
    u_tau0.values[i] = tk * state.u_t.values[i];

  detail::LeapfrogStepper stepper(mp, op, tau0, dtau, state.u, u_tau0);
  result.trace.samples.push_back(machinery.sample(state.u, state.t, test_value(state.t)));

  auto finish = [&](Outcome outcome, const std::string& diag) {
    result.outcome = outcome;
    result.diagnostic = diag;
    result.final_state.t = stepper.time();
    result.final_state.u = stepper.current();
    result.final_state.u_t = stepper.velocity_t();
    result.final_state.steps = stepper.index();
    result.final_state.c0 = state.c0;
    result.final_state.c1 = state.c1;
    result.final_state.m0 = state.m0;
    result.final_state.m1 = state.m1;
    result.final_state.initial_support_radius = state.initial_support_radius;
    if (outcome == Outcome::BlowupDetected) {
      std::vector<double> ts, fs;
      for (const auto& s : result.trace.samples) {
        ts.push_back(s.t);
        fs.push_back(s.F);
      }
      result.blowup_time_estimate = estimate_blowup_time(ts, fs, mp.p);
    }
    return result;
  };

  for (long m = 1; m <= nsteps; ++m) {
    if (m > 1) stepper.step();  // constructor already produced level 1
    const double t_now = stepper.time();
    const bool sampled = (m % mp.output_stride == 0) || m == nsteps;
    if (sampled) {
      const GridField& u_now = stepper.current();
      if (has_non_finite(u_now)) return finish(Outcome::StepCollapse, "non-finite field");
      result.trace.samples.push_back(machinery.sample(u_now, t_now, test_value(t_now)));
      if (u_now.max_norm() > cap) return finish(Outcome::BlowupDetected, "max-norm cap crossed");
    }
  }
  return finish(Outcome::ReachedHorizon, "");
}

}  // namespace edes
