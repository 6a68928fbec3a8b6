#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "silevy/integral.hpp"
#include "silevy/regularity.hpp"

namespace silevy {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EstimatorConfig {
  int j_min = 3;
  int j_max = 10;
  int oversample = 3;
  bool drop_scales = true;
  std::vector<std::string> estimators{"holder"};
  int pc_n_min = 2;
  int pc_n_max = 8;
  JumpBoundParams jump_bound;
  bool with_jump_bound = false;
  // mass-curve grids
  double alpha_max = 2.0;
  double alpha_step = 0.1;
  int rho_min_log2 = -6;
  int rho_max_log2 = -2;
  int quad_level = 9;

  ScaleLadder ladder() const { return ScaleLadder{j_min, j_max, oversample, drop_scales}; }
};

struct ExperimentConfig {
  Space space = Space::box(1, 1.0);
  LevyTriplet triplet;
  std::optional<Integrand> integrand;
  int mesh_level = 10;
  std::vector<double> eps_ladder{0.001};  // first entry is the working truncation
  std::vector<Point> targets;
  int replications = 1;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: hardware concurrency
  bool cancel_drift = false;
  std::optional<nlohmann::json> test_function;  // deterministic estimator mode
  EstimatorConfig estimator;
  std::string out = "out";
  nlohmann::json echo;  // the validated config, echoed into every artifact

  double eps() const { return eps_ladder.front(); }
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config_file(const std::string& path);

// Deterministic test functions for the calibration mode of `exponent`.
SetFunction make_test_function(const Space& s, const nlohmann::json& spec);

}  // namespace silevy
