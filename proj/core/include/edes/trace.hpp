#ifndef EDES_TRACE_HPP
#define EDES_TRACE_HPP

#include <vector>

#include "edes/model.hpp"

namespace edes {

struct TraceSample {
  double t = 0.0;
  double F = 0.0;                     // int a u dx
  double F1 = 0.0;                    // int a u v dx, v = test function * eigenfunction
  double support_radius = 0.0;        // smallest ball holding |u| > 1e-12 max|u|
  double max_norm = 0.0;
  double source_integral = 0.0;       // int a |u|^p dx
  double holder_integral = 0.0;       // int a^p |u|^p dx
  double mass_quantile_radius = 0.0;  // smallest radius holding all but 1e-8 of int a|u| dx
};

struct FunctionalTrace {
  std::vector<TraceSample> samples;
  ModelParams params;
  double start_time = 0.0;
  double c0 = 0.0;  // int a phi0 (weighted) / int a u0 (Cauchy)
  double c1 = 0.0;  // int a phi1 (weighted) / int a u1 (Cauchy)
  double m0 = 0.0;  // int a u0 phi (eigenfunction moment; 0 without eigenfunction)
  double m1 = 0.0;  // int a u1 phi
  double initial_support_radius = 0.0;
  double s_paper = 0.0;
  double s_speed = 0.0;
};

}  // namespace edes

#endif
