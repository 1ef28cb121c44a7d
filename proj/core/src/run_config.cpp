#include "edes/run_config.hpp"

#include <cmath>
#include <cstdlib>
#include <random>
#include <set>
#include <thread>

#include <nlohmann/json.hpp>

#include "edes/solver.hpp"

namespace edes {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::string& where,
                         const std::set<std::string>& allowed) {
  for (const auto& item : obj.items()) {
    if (!allowed.contains(item.key()))
      throw ConfigError("unknown key '" + where + item.key() + "'");
  }
}

double get_number(const json& obj, const std::string& where, const std::string& key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError("key '" + where + key + "' must be a number");
  return v.get<double>();
}

std::string get_string(const json& obj, const std::string& where, const std::string& key,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_string()) throw ConfigError("key '" + where + key + "' must be a string");
  return v.get<std::string>();
}

void parse_model(const json& obj, ModelParams& mp) {
  reject_unknown_keys(obj, "model.",
                      {"n", "k", "p", "nonlinearity", "coupling", "horizon", "start", "epsilon",
                       "cfl", "blowup_cap", "output_stride"});
  mp.n = static_cast<int>(get_number(obj, "model.", "n", mp.n));
  mp.k = get_number(obj, "model.", "k", mp.k);
  mp.p = get_number(obj, "model.", "p", mp.p);
  const std::string nl = get_string(obj, "model.", "nonlinearity", "abs_pow");
  if (nl == "abs_pow")
    mp.nonlinearity = Nonlinearity::AbsPow;
  else if (nl == "signed_pow")
    mp.nonlinearity = Nonlinearity::SignedPow;
  else if (nl == "none")
    mp.nonlinearity = Nonlinearity::None;
  else
    throw ConfigError("key 'model.nonlinearity' must be abs_pow|signed_pow|none");
  mp.coupling = get_number(obj, "model.", "coupling", mp.coupling);
  mp.horizon = get_number(obj, "model.", "horizon", mp.horizon);
  const std::string start = get_string(obj, "model.", "start", "cauchy_at_one");
  if (start == "cauchy_at_one")
    mp.start = StartKind::CauchyAtOne;
  else if (start == "singular_at_zero")
    mp.start = StartKind::SingularAtZero;
  else
    throw ConfigError("key 'model.start' must be cauchy_at_one|singular_at_zero");
  mp.epsilon = get_number(obj, "model.", "epsilon", mp.epsilon);
  mp.cfl = get_number(obj, "model.", "cfl", mp.cfl);
  mp.blowup_cap = get_number(obj, "model.", "blowup_cap", mp.blowup_cap);
  mp.output_stride = static_cast<int>(get_number(obj, "model.", "output_stride", mp.output_stride));
  try {
    mp.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be a JSON object");
  reject_unknown_keys(root, "",
                      {"model", "operator", "grid", "data", "seed", "output", "sweep",
                       "picard_iterations"});

  RunConfig cfg;
  if (root.contains("model")) parse_model(root.at("model"), cfg.model);

  if (root.contains("operator")) {
    const auto& obj = root.at("operator");
    reject_unknown_keys(obj, "operator.", {"preset", "c", "beta", "r_a"});
    cfg.op.preset = get_string(obj, "operator.", "preset", cfg.op.preset);
    if (cfg.op.preset != "flat_laplacian" && cfg.op.preset != "example1" &&
        cfg.op.preset != "example2")
      throw ConfigError("key 'operator.preset' must be flat_laplacian|example1|example2");
    cfg.op.c = get_number(obj, "operator.", "c", cfg.op.c);
    cfg.op.beta = get_number(obj, "operator.", "beta", cfg.op.beta);
    cfg.op.r_a = get_number(obj, "operator.", "r_a", cfg.op.r_a);
    if (!(cfg.op.c > 0.0)) throw ConfigError("key 'operator.c' must be positive");
    if (!(cfg.op.beta > 0.0)) throw ConfigError("key 'operator.beta' must be positive");
  }

  if (root.contains("grid")) {
    const auto& obj = root.at("grid");
    reject_unknown_keys(obj, "grid.", {"mode", "h", "extent"});
    cfg.grid.mode = get_string(obj, "grid.", "mode", cfg.grid.mode);
    if (cfg.grid.mode != "auto" && cfg.grid.mode != "radial" && cfg.grid.mode != "tensor")
      throw ConfigError("key 'grid.mode' must be auto|radial|tensor");
    cfg.grid.h = get_number(obj, "grid.", "h", cfg.grid.h);
    cfg.grid.extent = get_number(obj, "grid.", "extent", cfg.grid.extent);
    if (!(cfg.grid.h > 0.0)) throw ConfigError("key 'grid.h' must be positive");
    if (cfg.grid.extent < 0.0) throw ConfigError("key 'grid.extent' must be >= 0");
  }

  if (root.contains("data")) {
    const auto& obj = root.at("data");
    reject_unknown_keys(obj, "data.", {"center", "radius", "amplitude", "jitter"});
    if (obj.contains("center")) {
      const auto& c = obj.at("center");
      if (!c.is_array() || c.size() > 3) throw ConfigError("key 'data.center' must be an array of <= 3 numbers");
      for (std::size_t i = 0; i < c.size(); ++i) cfg.data.center[i] = c[i].get<double>();
    }
    cfg.data.radius = get_number(obj, "data.", "radius", cfg.data.radius);
    cfg.data.amplitude = get_number(obj, "data.", "amplitude", cfg.data.amplitude);
    cfg.data.jitter = get_number(obj, "data.", "jitter", cfg.data.jitter);
    if (!(cfg.data.radius > 0.0)) throw ConfigError("key 'data.radius' must be positive");
    if (cfg.data.jitter < 0.0 || cfg.data.jitter > 0.5)
      throw ConfigError("key 'data.jitter' must lie in [0, 0.5]");
  }

  if (root.contains("seed")) {
    const auto& v = root.at("seed");
    if (!v.is_number_unsigned()) throw ConfigError("key 'seed' must be a non-negative integer");
    cfg.seed = v.get<std::uint64_t>();
  }

  if (root.contains("output")) {
    const auto& obj = root.at("output");
    reject_unknown_keys(obj, "output.", {"trace_csv", "outcome_json", "csv"});
    cfg.output.trace_csv = get_string(obj, "output.", "trace_csv", "");
    cfg.output.outcome_json = get_string(obj, "output.", "outcome_json", "");
    cfg.output.csv = get_string(obj, "output.", "csv", "");
  }

  if (root.contains("sweep")) {
    const auto& obj = root.at("sweep");
    reject_unknown_keys(obj, "sweep.", {"n", "k", "p", "scale"});
    const auto load = [&](const char* key, auto& target) {
      if (!obj.contains(key)) return;
      const auto& arr = obj.at(key);
      if (!arr.is_array() || arr.empty())
        throw ConfigError(std::string("key 'sweep.") + key + "' must be a non-empty array");
      target.clear();
      for (const auto& v : arr) target.push_back(v.get<typename std::decay_t<decltype(target)>::value_type>());
    };
    load("n", cfg.sweep.n);
    load("k", cfg.sweep.k);
    load("p", cfg.sweep.p);
    load("scale", cfg.sweep.scale);
  }

  if (root.contains("picard_iterations")) {
    cfg.picard_iterations = static_cast<int>(get_number(root, "", "picard_iterations", 6));
    if (cfg.picard_iterations < 1 || cfg.picard_iterations > 64)
      throw ConfigError("key 'picard_iterations' must lie in [1, 64]");
  }
  return cfg;
}

GridSpec make_grid(const RunConfig& cfg) {
  GridSpec grid;
  if (cfg.grid.mode == "auto")
    grid.mode = cfg.model.n == 1 ? GridMode::Tensor : GridMode::Radial;
  else
    grid.mode = cfg.grid.mode == "radial" ? GridMode::Radial : GridMode::Tensor;
  grid.dim = cfg.model.n;
  if (grid.mode == GridMode::Tensor && grid.dim > 3)
    throw ConfigError("tensor grids support n <= 3; use radial mode");
  grid.h = cfg.grid.h;
  if (cfg.grid.extent > 0.0) {
    grid.extent = cfg.grid.extent;
  } else {
    const double s_paper = cfg.op.preset == "flat_laplacian"
                               ? cfg.op.c
                               : (cfg.op.preset == "example1"
                                      ? (cfg.op.r_a * cfg.op.r_a + 1.0) / cfg.op.beta
                                      : (std::exp(-cfg.op.r_a * cfg.op.r_a) + 1.0) / cfg.op.beta);
    ModelParams mp = cfg.model;
    grid.extent = suggested_extent(mp, s_paper, cfg.data.radius, cfg.grid.h);
  }
  return grid;
}

EllipticOperator make_operator(const RunConfig& cfg, const GridSpec& grid) {
  if (cfg.op.preset == "example1") return EllipticOperator::example1(grid, cfg.op.beta, cfg.op.r_a);
  if (cfg.op.preset == "example2") return EllipticOperator::example2(grid, cfg.op.beta, cfg.op.r_a);
  return EllipticOperator::flat_laplacian(grid, cfg.op.c);
}

GridField make_data(const RunConfig& cfg, const GridSpec& grid, double scale) {
  GridField field = bump_field(grid, cfg.data.center, cfg.data.radius,
                               cfg.data.amplitude * scale);
  if (cfg.data.jitter > 0.0) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (double& v : field.values)
      if (v != 0.0) v *= 1.0 + cfg.data.jitter * unit(rng);
  }
  return field;
}

int thread_cap(int requested) {
  int cap = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (cap < 1) cap = 1;
  if (const char* env = std::getenv("EDES_LAB_THREADS")) {
    const int env_cap = std::atoi(env);
    if (env_cap >= 1) cap = std::min(cap, env_cap);
  }
  return cap;
}

}  // namespace edes
