#include "edes/sweep.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace edes {

const char* to_string(SweepOutcome outcome) {
  switch (outcome) {
    case SweepOutcome::Blowup: return "blowup";
    case SweepOutcome::ReachedHorizon: return "reached_horizon";
    case SweepOutcome::StepCollapse: return "step_collapse";
    case SweepOutcome::Failed: return "failed";
  }
  return "failed";
}

const char* to_string(Prediction prediction) {
  return prediction == Prediction::Blowup ? "blowup" : "no_prediction";
}

namespace {

bool f_accelerating(const FunctionalTrace& trace) {
  const auto& s = trace.samples;
  if (s.size() < 4) return false;
  const double f_end = s.back().F;
  int positive = 0, counted = 0;
  for (std::size_t j = 1; j + 1 < s.size(); ++j) {
    if (!(s[j].F > 0.0) || s[j].F < 0.1 * f_end) continue;
    const double h1 = s[j].t - s[j - 1].t;
    const double h2 = s[j + 1].t - s[j].t;
    const double fpp = 2.0 * (s[j - 1].F / (h1 * (h1 + h2)) - s[j].F / (h1 * h2) +
                              s[j + 1].F / (h2 * (h1 + h2)));
    ++counted;
    if (fpp > 0.0) ++positive;
  }
  return counted > 0 && 3 * positive >= 2 * counted;
}

SweepRow run_point(const SweepPoint& point, const SweepHarness& harness) {
  SweepRow row;
  row.n = point.params.n;
  row.k = point.params.k;
  row.p = point.params.p;
  row.scale = point.scale;
  row.t_est = std::numeric_limits<double>::quiet_NaN();
  try {
    ModelParams mp = point.params;
    mp.validate();
    row.predicted = mp.nonlinearity == Nonlinearity::None
                        ? Prediction::NoPrediction
                        : blowup_predicted(mp.n, mp.k, mp.p,
                                           mp.start == StartKind::SingularAtZero
                                               ? Problem::SingularAtZero
                                               : Problem::CauchyAtOne);
    GridSpec grid;
    grid.mode = mp.n == 1 ? GridMode::Tensor : GridMode::Radial;
    grid.dim = mp.n;
    grid.h = harness.grid_h;
    grid.extent =
        suggested_extent(mp, harness.operator_c, harness.data_radius, harness.grid_h);
    const EllipticOperator op = EllipticOperator::flat_laplacian(grid, harness.operator_c);
    const GridField bump = bump_field(grid, {0.0, 0.0, 0.0}, harness.data_radius,
                                      harness.data_amplitude * point.scale);
    const GridField zero(grid);
    const SimState state = mp.start == StartKind::SingularAtZero
                               ? init_weighted(mp, op, bump, zero)
                               : init_cauchy(mp, op, bump, zero);
    const RunResult result = run(state, mp, op);
    switch (result.outcome) {
      case Outcome::ReachedHorizon:
        row.outcome = SweepOutcome::ReachedHorizon;
        break;
      case Outcome::BlowupDetected:
        if (f_accelerating(result.trace)) {
          row.outcome = SweepOutcome::Blowup;
          row.t_est = result.blowup_time_estimate;
        } else {
          row.outcome = SweepOutcome::StepCollapse;
          row.message = "cap crossed without F acceleration";
        }
        break;
      case Outcome::StepCollapse:
        row.outcome = SweepOutcome::StepCollapse;
        row.message = result.diagnostic;
        break;
    }
  } catch (const std::exception& e) {
    row.outcome = SweepOutcome::Failed;
    row.message = e.what();
  }
  return row;
}

}  // namespace

std::vector<SweepRow> classify_sweep(const std::vector<SweepPoint>& points,
                                     const SweepHarness& harness, int threads) {
  std::vector<SweepRow> rows(points.size());
  if (points.empty()) return rows;
  const int workers =
      std::max(1, std::min<int>(threads, static_cast<int>(points.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      rows[i] = run_point(points[i], harness);
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return rows;
}

}  // namespace edes
