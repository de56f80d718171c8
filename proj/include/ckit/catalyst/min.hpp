#pragma once

#include <vector>

#include "ckit/subsolvers/subsolvers.hpp"

namespace ckit {

// Schedule for the convex catalyst loop with gamma_k = 2/(k+1), beta_k = (k+1)L/k.
struct MinRecipe {
  std::int64_t K = 0;
  double L = 0;
  double t0 = 8;
  std::int64_t T = 8;   // inner sgd_prox steps per outer iteration
  double delta = 0;     // per-iteration noise budget the certificate must meet
  bool exact_prox = false;

  // Restarted variant: epoch e (1-based) uses epoch_T[e-1] and epoch_delta[e-1].
  std::int64_t epochs = 0;
  std::vector<std::int64_t> epoch_T;
  std::vector<double> epoch_delta;

  double gamma(std::int64_t k) const { return 2.0 / static_cast<double>(k + 1); }
  double beta(std::int64_t k) const { return static_cast<double>(k + 1) * L / static_cast<double>(k); }
};

// K = ceil(4 sqrt(L D2 / eps)), T = ceil(8 + 32 sigma^2 K / (L eps)), delta = eps / (4K).
MinRecipe recipe_smooth(double L, double eps, double sigma, double D2);

// K = ceil(6 sqrt(L/mu)), E = ceil(log2(Delta0 / eps)); epoch e has
// delta_e = 2^{-e-2} Delta0 / K and T_e = ceil(8 + 128 sigma^2 2^e K / (L Delta0)).
// Delta0 is an overestimate of f(x0) - f*.
MinRecipe recipe_restarted(double L, double mu, double eps, double sigma, double Delta0);

// Gamma_k = prod_{j=2..k} (1 - gamma_j); equals 2/(k(k+1)) for this schedule.
double min_gamma_product(const MinRecipe& r, std::int64_t k);

// Absolute (alpha_k, eps_k, delta_k) the inner solver will certify at outer step k.
InexactnessCertificate min_certificate(const MinRecipe& r, std::int64_t k, double sigma, std::int64_t T);

// Throws ConfigError naming the violated inequality.
void check_min_recipe(const MinRecipe& r, double mu, double sigma);

struct CatalystStep {
  std::int64_t epoch;  // 0 for the plain loop
  std::int64_t k;
  const Vector& x_tilde;
  const Vector& x_last;
  const Vector& x_bar;
  std::int64_t sfo_calls;  // cumulative
  InexactnessCertificate certificate;  // absolute values
};
using CatalystObserver = std::function<void(const CatalystStep&)>;

struct MinResult {
  Vector x_tilde;
  std::int64_t sfo_calls = 0;
};

MinResult catalyst_run(const SmoothObjective& prob, const MinRecipe& recipe, const Vector& x0, OracleStream& stream,
                       const CatalystObserver& observer = {});

MinResult r_catalyst_run(const SmoothObjective& prob, const MinRecipe& recipe, const Vector& x0,
                         OracleStream& stream, const CatalystObserver& observer = {});

}  // namespace ckit
