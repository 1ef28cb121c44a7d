#include <cmath>
#include <stdexcept>
#include <vector>

#include "edes/exponents.hpp"
#include "edes/solver.hpp"

// Picard iteration for the weighted problem: psi_{m+1} = psi_0 + G[|psi_m|^{1+alpha}],
// realized in the Liouville variable by linear runs with the frozen source
// g_m(x,t) = coupling * t^{-alpha} |u_m(x,t)|^{1+alpha} (u = t psi). Distances
// are taken in sup_t t^{1 + n alpha/(3(alpha+2))} L^q with q = alpha + 2.

namespace edes {

namespace {

struct Trajectory {
  // u at every time level, level-major.
  std::vector<std::vector<double>> levels;
};

double lq_norm(const std::vector<double>& a, const std::vector<double>& b,
               const EllipticOperator& op, double q) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::abs(a[i] - b[i]);
    acc += std::pow(d, q) * op.grid().cell_weight(i);
  }
  return std::pow(acc, 1.0 / q);
}

}  // namespace

PicardResult picard_local_solve(const ModelParams& params, const EllipticOperator& op,
                                const GridField& phi0, const GridField& phi1, int iterations) {
  ModelParams mp = params;
  mp.validate();
  if (mp.start != StartKind::SingularAtZero)
    throw std::invalid_argument("picard_local_solve: requires the weighted start");
  const double alpha = mp.p - 1.0;
  if (!(alpha > 0.0 && alpha < alpha0(mp.n)))
    throw std::invalid_argument("picard_local_solve: need 0 < alpha < alpha0(n)");
  if (iterations < 1) throw std::invalid_argument("picard_local_solve: iterations >= 1");

  const double tau0 = characteristic_time(mp.k, mp.epsilon);
  const double tau_end = characteristic_time(mp.k, mp.horizon);
  const auto speed = op.propagation_speed();
  double dtau = mp.cfl * op.grid().h / std::max(1.0, speed.speed_value);
  const long nsteps = std::max<long>(1, static_cast<long>(std::ceil((tau_end - tau0) / dtau)));
  dtau = (tau_end - tau0) / static_cast<double>(nsteps);

  const double q = alpha + 2.0;
  const double weight_exp = 1.0 + mp.n * alpha / (3.0 * (alpha + 2.0));

  // Linear model for the iterate runs; the nonlinearity enters as frozen source.
  ModelParams linear = mp;
  linear.nonlinearity = Nonlinearity::None;

  const SimState state0 = init_weighted(linear, op, phi0, phi1);
  GridField u_tau0(state0.u.grid);
  const double tk = std::pow(state0.t, mp.k);
  for (std::size_t i = 0; i < u_tau0.values.size(); ++i)
    u_tau0.values[i] = tk * state0.u_t.values[i];

  const auto run_iterate = [&](const Trajectory* frozen, Trajectory& out, SimState& final_state) {
    detail::LeapfrogStepper stepper(linear, op, tau0, dtau, state0.u, u_tau0);
    if (frozen != nullptr) {
      stepper.set_external_source([&, frozen](std::size_t node, double t) {
        const long level = stepper.index();
        const double u_prev_iter = frozen->levels[static_cast<std::size_t>(level)][node];
        const double a = std::abs(u_prev_iter);
        const double pw = std::pow(a, 1.0 + alpha);
        const double val = mp.nonlinearity == Nonlinearity::SignedPow && u_prev_iter < 0.0
                               ? -pw
                               : pw;
        return mp.coupling * std::pow(t, -alpha) * val;
      });
    }
    out.levels.assign(static_cast<std::size_t>(nsteps) + 1, {});
    out.levels[0] = state0.u.values;
    out.levels[1] = stepper.current().values;
    for (long m = 2; m <= nsteps; ++m) {
      stepper.step();
      out.levels[static_cast<std::size_t>(m)] = stepper.current().values;
    }
    final_state.t = stepper.time();
    final_state.u = stepper.current();
    final_state.u_t = stepper.velocity_t();
    final_state.steps = stepper.index();
  };

  PicardResult result;
  Trajectory prev, curr;
  SimState final_state;
  run_iterate(nullptr, prev, final_state);
  result.iterates.push_back(final_state);

  // Weighted distance between trajectories: sup over levels of t^w ||psi diff||_q.
  const auto distance = [&](const Trajectory& a, const Trajectory& b) {
    double sup = 0.0;
    for (long m = 0; m <= nsteps; ++m) {
      const double tau = tau0 + m * dtau;
      const double t = std::pow((1.0 - mp.k) * tau, 1.0 / (1.0 - mp.k));
      const double norm =
          lq_norm(a.levels[static_cast<std::size_t>(m)], b.levels[static_cast<std::size_t>(m)],
                  op, q) /
          t;  // psi = u / t
      sup = std::max(sup, std::pow(t, weight_exp) * norm);
    }
    return sup;
  };

  int consecutive_expanding = 0;
  for (int it = 1; it <= iterations; ++it) {
    run_iterate(&prev, curr, final_state);
    result.iterates.push_back(final_state);
    const double d = distance(curr, prev);
    result.iterate_distances.push_back(d);
    const std::size_t nd = result.iterate_distances.size();
    if (nd >= 2) {
      const double prev_d = result.iterate_distances[nd - 2];
      const double est = prev_d > 0.0 ? d / prev_d : 0.0;
      result.contraction_estimates.push_back(est);
      consecutive_expanding = est > 1.0 ? consecutive_expanding + 1 : 0;
      if (consecutive_expanding >= 3) {
        result.diverged = true;
        break;
      }
    }
    if (d == 0.0) {
      result.converged = true;
      break;
    }
    std::swap(prev, curr);
  }
  return result;
}

}  // namespace edes
