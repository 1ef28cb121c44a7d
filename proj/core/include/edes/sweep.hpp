#ifndef EDES_SWEEP_HPP
#define EDES_SWEEP_HPP

#include <string>
#include <vector>

#include "edes/exponents.hpp"
#include "edes/functionals.hpp"

namespace edes {

struct SweepPoint {
  ModelParams params;
  double scale = 1.0;
};

enum class SweepOutcome { Blowup, ReachedHorizon, StepCollapse, Failed };

struct SweepRow {
  int n = 0;
  double k = 0.0, p = 0.0, scale = 1.0;
  SweepOutcome outcome = SweepOutcome::Failed;
  double t_est = 0.0;  // NaN unless Blowup
  Prediction predicted = Prediction::NoPrediction;
  std::string message;
};

// Shared shape of every sweep run: flat operator, positive bump at the origin
// scaled per point; n = 1 runs on a tensor line, n > 1 radially.
struct SweepHarness {
  double grid_h = 0.02;
  double data_radius = 1.0;
  double data_amplitude = 1.0;
  double operator_c = 1.0;
};

/// Runs every point (in parallel up to `threads`), classifies the outcome and
/// attaches the theorem prediction. "Blowup" requires both the max-norm cap
/// crossing and positive second-difference acceleration of F over the last
/// decade of growth; individual failures land in the row, the sweep continues.
std::vector<SweepRow> classify_sweep(const std::vector<SweepPoint>& points,
                                     const SweepHarness& harness, int threads);

const char* to_string(SweepOutcome outcome);
const char* to_string(Prediction prediction);

}  // namespace edes

#endif
