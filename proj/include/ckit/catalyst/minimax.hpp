#pragma once

#include <vector>

#include "ckit/subsolvers/subsolvers.hpp"

namespace ckit {

enum class MinimaxInner { reg, sreg_asym };

// Schedule for the minimax catalyst loop with gamma_k = 2/(k+1) and
// beta_k = mu_d (k+1) / (c (k+2)), c = 2 for the REG inner solver, 4 for sreg_asym.
struct MinimaxRecipe {
  MinimaxInner inner = MinimaxInner::reg;
  bool strongly_convex = false;
  std::int64_t K = 0;
  double L = 0;
  double mu_d = 0;
  double D_Y = 0;
  double gap_ratio = 1;  // estimate of [f(x0) - f*] / ||x* - x0||^2

  std::int64_t T = 0;  // inner steps per outer iteration
  double delta = 0;    // stochastic noise budget per outer iteration

  // Restarted variant: epoch e (1-based) uses epoch_T[e-1] and epoch_delta[e-1].
  std::int64_t epochs = 0;
  std::vector<std::int64_t> epoch_T;
  std::vector<double> epoch_delta;

  double gamma(std::int64_t k) const { return 2.0 / static_cast<double>(k + 1); }
  double beta(std::int64_t k) const {
    const double c = inner == MinimaxInner::reg ? 2.0 : 4.0;
    return mu_d * static_cast<double>(k + 1) / (c * static_cast<double>(k + 2));
  }
  // REG: the constant stepsize; sreg_asym: the cap eta_bar.
  double eta(std::int64_t k) const {
    const double c = inner == MinimaxInner::reg ? 3.0 : 24.0;
    return static_cast<double>(k + 2) / (c * static_cast<double>(k + 1) * L);
  }
  // Weight on ||y~* - y||^2 in the composite metric the recipe controls.
  double composite_weight() const { return inner == MinimaxInner::reg ? mu_d / 6.0 : mu_d / 12.0; }
};

// ceil(sqrt(factor * init / eps)); init estimates 2 mu_d ||x* - x0||^2 + mu_d ||y~0* - y0||^2.
// factor is 4 for the deterministic recipe and 24 for the stochastic one.
std::int64_t minimax_K_for_target(double eps, double init, double factor);

// REG inner, mu_p = 0. T = ceil((6L/mu_d)[log 12 + log(6K^2) + max(0, log(2 ratio))]).
MinimaxRecipe recipe_det(const SaddleObjective& prob, std::int64_t K, double gap_ratio = 1.0);
// REG inner, mu_p > 0: K = ceil(12 sqrt(mu_d/mu_p)), T without the ratio term.
MinimaxRecipe recipe_det_sc(const SaddleObjective& prob, std::int64_t epochs);

// sreg_asym inner, mu_p = 0, target eps on the composite metric.
MinimaxRecipe recipe_stoch(const SaddleObjective& prob, double eps, std::int64_t K, double gap_ratio = 1.0);
// sreg_asym inner, mu_p > 0: K = ceil(24 sqrt(mu_d/mu_p)), per-epoch T_e and
// delta_e = 2^{-e} Delta0 / (128 K). Delta0 overestimates the initial composite metric.
MinimaxRecipe recipe_stoch_sc(const SaddleObjective& prob, double Delta0, std::int64_t epochs);

// Options handed to sreg_asym at outer step k.
AsymOptions minimax_asym_options(const MinimaxRecipe& r, std::int64_t k, std::int64_t T);

// Absolute (alpha_k, eps_k, eps'_k, delta_k) certified by the inner solver.
InexactnessCertificate minimax_certificate(const MinimaxRecipe& r, std::int64_t k, std::int64_t T, double sigma);

// Per-step contraction of the outer potential, theta_k for k = 2..K (index 0 and
// 1 unused). Gamma'_k = prod theta_j must stay below 12/k^2.
std::vector<double> minimax_contractions(const MinimaxRecipe& r, std::int64_t T, double sigma);
// Gamma_k = prod_{j<=k} (1 - gamma_j + 4 eps_j/mu_d) / (1 - 4 eps_j/mu_d).
std::vector<double> minimax_gamma_sequence(const MinimaxRecipe& r, std::int64_t T, double sigma);

// Throws ConfigError naming the violated inequality.
void check_minimax_recipe(const MinimaxRecipe& r, double sigma);

struct MinimaxStep {
  std::int64_t epoch;  // 0 for the plain loop
  std::int64_t k;
  const Vector& x_tilde;
  const Vector& x_last;
  const Vector& y_last;
  const Vector& x_bar;
  std::int64_t sfo_calls;  // cumulative
  InexactnessCertificate certificate;  // absolute values
};
using MinimaxObserver = std::function<void(const MinimaxStep&)>;

struct MinimaxResult {
  Vector x_tilde;
  Vector y;
  std::int64_t sfo_calls = 0;
};

MinimaxResult catalyst_minimax_run(const SaddleObjective& prob, const MinimaxRecipe& recipe, const Vector& x0,
                                   const Vector& y0, OracleStream& stream, const MinimaxObserver& observer = {});

MinimaxResult r_catalyst_minimax_run(const SaddleObjective& prob, const MinimaxRecipe& recipe, const Vector& x0,
                                     const Vector& y0, OracleStream& stream, const MinimaxObserver& observer = {});

}  // namespace ckit
