#pragma once

#include "silevy/config.hpp"

namespace silevy {

// Runs fn(i) for i in [0, count) on a worker pool; results must be written to
// pre-sized slots so the output is independent of scheduling.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

double median(std::vector<double> v);
double quantile(std::vector<double> v, double q);

nlohmann::json json_of_estimate(const ExponentEstimate& e);
nlohmann::json json_of_double(double v);  // +-inf as "inf"/"-inf"

// `exponent` subcommand: per-target estimates over R replications (or the
// deterministic test function), with quantiles and optional jump bounds.
nlohmann::json run_exponent(const ExperimentConfig& cfg);

// Built-in verification experiments reproducing the regularity corollaries
// at desk scale.  Deterministic given (seed, reps).
struct VerifyOptions {
  std::uint64_t seed = 20260810;
  int reps = 50;
  int threads = 0;
};

struct VerdictLine {
  std::string id;
  bool pass = false;
  std::string detail;
};

struct VerifyResult {
  std::vector<VerdictLine> verdicts;
  nlohmann::json report;

  bool all_pass() const {
    for (const auto& v : verdicts)
      if (!v.pass) return false;
    return true;
  }
};

VerifyResult run_verify(const VerifyOptions& opt);

}  // namespace silevy
