#ifndef EDES_SOLVER_HPP
#define EDES_SOLVER_HPP

#include <string>
#include <utility>
#include <vector>

#include "edes/grid.hpp"
#include "edes/model.hpp"
#include "edes/operators.hpp"
#include "edes/special.hpp"
#include "edes/trace.hpp"

namespace edes {

// Time integration in the Liouville variable u = t psi of
//   u_tt - t^(-2k) A u = coupling * t^(1-p) N(u),
// advanced in the characteristic time tau = t^(1-k)/(1-k). The change of
// variables (t(tau) = ((1-k) tau)^(1/(1-k)), u_t = t^(-k) u_tau) turns the
// equation into
//   u_tautau - (k/((1-k) tau)) u_tau = A u + t(tau)^(1-p+2k) N(u),
// which the central leapfrog discretizes with a uniform step and constant
// principal speed. (Check against lambda(tau) = (tau+1) e^(-tau) at k = 2/3.)

struct SimState {
  double t = 0.0;
  GridField u;
  GridField u_t;
  long steps = 0;
  // Data moments frozen at initialization (weighted: phi moments; Cauchy: u moments).
  double c0 = 0.0, c1 = 0.0, m0 = 0.0, m1 = 0.0;
  double initial_support_radius = 0.0;
};

/// Characteristic time phi(t) = t^(1-k)/(1-k).
double characteristic_time(double k, double t);

/// Domain half-width keeping the boundary causally unreachable:
/// R + (phi(T)-phi(t0)) * max(s_paper, sqrt(s_paper)) + 5h.
double suggested_extent(const ModelParams& params, double s_paper, double data_radius, double h);

/// Weighted start at t = epsilon:
/// u = phi0 + eps phi1 - (9/2) eps^(2/3) A phi0,  u_t = phi1 - 3 eps^(-1/3) A phi0.
SimState init_weighted(const ModelParams& params, const EllipticOperator& op,
                       const GridField& phi0, const GridField& phi1,
                       const Eigenfunction* phi = nullptr);

/// Cauchy start at t = 1: u = phi0, u_t = phi0 + phi1.
SimState init_cauchy(const ModelParams& params, const EllipticOperator& op,
                     const GridField& phi0, const GridField& phi1,
                     const Eigenfunction* phi = nullptr);

enum class Outcome { ReachedHorizon, BlowupDetected, StepCollapse };

struct RunResult {
  FunctionalTrace trace;
  Outcome outcome = Outcome::ReachedHorizon;
  double blowup_time_estimate = 0.0;  // extrapolated; meaningful for BlowupDetected
  std::string diagnostic;
  SimState final_state;
};

RunResult run(const SimState& state, const ModelParams& params, const EllipticOperator& op,
              const Eigenfunction* phi = nullptr);

enum class ExplicitKind { U, W, V };

/// Separated-variable solutions at k = 2/3 (x = 3 t^(1/3)):
/// U = cosh x - x sinh x, W = sinh x - x cosh x, V = U - W = (x+1) e^(-x).
double explicit_solution(ExplicitKind kind, double t);

/// psi = u/t, psi_t = u_t/t - u/t^2.
std::pair<GridField, GridField> liouville_to_psi(const SimState& state);

/// Extrapolated blow-up time: least-squares line through F^(-(p-1)/2) over the
/// last decade of growth, extrapolated to zero.
double estimate_blowup_time(const std::vector<double>& t, const std::vector<double>& F, double p);

struct PicardResult {
  std::vector<SimState> iterates;              // state at the horizon per iterate
  std::vector<double> iterate_distances;       // d(psi_m, psi_{m-1}) in the weighted norm
  std::vector<double> contraction_estimates;   // d_{m+1}/d_m
  bool diverged = false;
  bool converged = false;                      // fixed point reached early
};

/// Picard iteration psi_{m+1} = psi_0 + G[|psi_m|^(1+alpha)] realized by linear
/// runs with a frozen source; distances in sup_t t^(1+n alpha/(3(alpha+2))) L^q,
/// q = alpha + 2. Requires the weighted start and p = 1 + alpha, alpha < alpha0(n).
PicardResult picard_local_solve(const ModelParams& params, const EllipticOperator& op,
                                const GridField& phi0, const GridField& phi1, int iterations);

namespace detail {

// Central three-term recurrence on the tau form; exposed so tests can drive
// forward/backward steps directly (the scheme is algebraically reversible).
class LeapfrogStepper {
 public:
  LeapfrogStepper(const ModelParams& params, const EllipticOperator& op, double tau0,
                  double dtau, const GridField& u0, const GridField& u_tau0);

  void step();       // advance (u_prev, u_curr) from tau_m to tau_{m+1}
  void step_back();  // exact algebraic inverse of step()

  long index() const { return m_; }
  double tau() const { return tau0_ + m_ * dtau_; }
  double time() const;  // physical t(tau)
  const GridField& current() const { return u_curr_; }
  GridField velocity_tau() const;  // u_tau at the current level (second order)
  GridField velocity_t() const;    // u_t = t^(-k) u_tau

  /// Frozen external source g(x, t) added to the physical equation; used by the
  /// Picard iteration. Called with the node index and physical time.
  void set_external_source(std::function<double(std::size_t, double)> source);

 private:
  GridField acceleration(const GridField& u, double t) const;  // A u + tau-source
  double damping(double tau) const { return k_ / ((1.0 - k_) * tau); }

  const ModelParams params_;
  const EllipticOperator& op_;
  double k_;
  double tau0_;
  double dtau_;
  long m_ = 0;
  GridField u_prev_, u_curr_, scratch_;
  std::function<double(std::size_t, double)> external_source_;
};

}  // namespace detail

}  // namespace edes

#endif
