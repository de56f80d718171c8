#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace ckit {

enum class ProblemKind { quadratic, saddle };

enum class Algorithm {
  catalyst_sgd,
  r_catalyst_sgd,
  reg,
  sreg,
  sreg_restarted,
  catalyst_minimax_det,
  r_catalyst_minimax_det,
  catalyst_minimax_stoch,
  r_catalyst_minimax_stoch,
  exact_prox_baseline,
};

struct ProblemSpec {
  ProblemKind kind = ProblemKind::quadratic;
  std::int64_t d = 10;
  std::int64_t dx = 2;
  std::int64_t dy = 2;
  double L = 1.0;
  double mu = 0.0;
  double mu_p = 0.0;
  double mu_d = 1.0;
  double sigma = 0.0;
  std::uint64_t seed = 1;
  double scale = 1.0;         // quadratic: ||x*||
  double offset_scale = 1.0;  // saddle: size of the linear terms
  bool random_start = true;   // otherwise start at the origin
};

struct AlgorithmSpec {
  Algorithm name = Algorithm::catalyst_sgd;
  std::optional<double> eps;         // target accuracy
  std::optional<std::int64_t> K;     // outer iterations (overrides the recipe)
  std::optional<std::int64_t> T;     // inner / solver steps
  std::optional<std::int64_t> epochs;
  double gap_ratio = 1.0;            // minimax: estimate of [f(x0)-f*]/||x*-x0||^2
  double overestimate = 1.0;         // factor applied to the true D^2 / Delta0 / R^2
  std::int64_t trace_every = 1;      // bare solvers: record every n-th step
};

struct ExperimentConfig {
  ProblemSpec problem;
  AlgorithmSpec algorithm;
  std::int64_t seeds = 1;
  std::uint64_t base_seed = 0;
  std::string output;  // CSV path; empty means no file
};

// Parses a JSON document; errors are ConfigError with a field path like "problem.L".
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::string algorithm_name(Algorithm a);

}  // namespace ckit
