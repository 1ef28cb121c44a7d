#ifndef EDES_RUN_CONFIG_HPP
#define EDES_RUN_CONFIG_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "edes/grid.hpp"
#include "edes/model.hpp"
#include "edes/operators.hpp"

namespace edes {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OperatorSpec {
  std::string preset = "flat_laplacian";  // flat_laplacian | example1 | example2
  double c = 1.0;
  double beta = 1.0;
  double r_a = 2.0;
};

struct GridConfig {
  std::string mode = "auto";  // auto | radial | tensor
  double h = 0.02;
  double extent = 0.0;  // 0: derived from the propagation cone
};

struct DataSpec {
  std::array<double, 3> center{0.0, 0.0, 0.0};
  double radius = 1.0;
  double amplitude = 1.0;
  double jitter = 0.0;  // seeded relative perturbation inside the support
};

struct OutputSpec {
  std::string trace_csv;
  std::string outcome_json;
  std::string csv;  // sweep / table output
};

struct SweepLists {
  std::vector<int> n{1};
  std::vector<double> k{2.0 / 3.0};
  std::vector<double> p{2.0};
  std::vector<double> scale{1.0};
};

struct RunConfig {
  ModelParams model;
  OperatorSpec op;
  GridConfig grid;
  DataSpec data;
  std::uint64_t seed = 0;
  OutputSpec output;
  SweepLists sweep;
  int picard_iterations = 6;
};

/// Parses and schema-validates; unknown keys and out-of-range values raise
/// ConfigError naming the offending key.
RunConfig parse_run_config(const std::string& json_text);

/// Materialize grid + operator + data from a config (grid extent auto-derived
/// from the cone when 0).
GridSpec make_grid(const RunConfig& cfg);
EllipticOperator make_operator(const RunConfig& cfg, const GridSpec& grid);
GridField make_data(const RunConfig& cfg, const GridSpec& grid, double scale = 1.0);

int thread_cap(int requested);  // honors EDES_LAB_THREADS

}  // namespace edes

#endif
