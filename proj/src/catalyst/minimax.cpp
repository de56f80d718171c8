#include "ckit/catalyst/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ckit {

namespace {

std::int64_t ceil_count(double v) {
  if (!(v < 9e18)) throw ParameterError("step count overflows");
  return static_cast<std::int64_t>(std::ceil(v - 1e-9));
}

void require_moduli(const SaddleObjective& prob) {
  prob.validate();
  if (!(prob.mu_d > 0)) throw ConfigError("minimax catalyst: mu_d must be positive");
}

double det_T(const SaddleObjective& prob, std::int64_t K, double ratio_term) {
  const double Kd = static_cast<double>(K);
  return 6.0 * prob.L / prob.mu_d * (std::log(12.0) + std::log(6.0 * Kd * Kd) + ratio_term);
}

[[noreturn]] void fail(const std::string& what, std::int64_t k, double lhs, double rhs) {
  throw ConfigError("minimax recipe check failed: " + what + " at k=" + std::to_string(k) +
                    " (lhs=" + std::to_string(lhs) + ", rhs=" + std::to_string(rhs) + ")");
}

}  // namespace

std::int64_t minimax_K_for_target(double eps, double init, double factor) {
  if (!(eps > 0) || !(init >= 0)) throw ParameterError("minimax_K_for_target: need eps > 0, init >= 0");
  return std::max<std::int64_t>(1, ceil_count(std::sqrt(factor * init / eps)));
}

MinimaxRecipe recipe_det(const SaddleObjective& prob, std::int64_t K, double gap_ratio) {
  require_moduli(prob);
  if (K < 1) throw ParameterError("recipe_det: K must be >= 1");
  if (!(gap_ratio > 0)) throw ParameterError("recipe_det: gap ratio estimate must be positive");
  MinimaxRecipe r;
  r.inner = MinimaxInner::reg;
  r.K = K;
  r.L = prob.L;
  r.mu_d = prob.mu_d;
  r.gap_ratio = gap_ratio;
  // A ratio below 1/2 would shorten T; the clamp keeps T at the ratio-free value.
  r.T = ceil_count(det_T(prob, K, std::max(0.0, std::log(2.0 * gap_ratio))));
  return r;
}

MinimaxRecipe recipe_det_sc(const SaddleObjective& prob, std::int64_t epochs) {
  require_moduli(prob);
  if (!(prob.mu_p > 0)) throw ConfigError("recipe_det_sc: mu_p = 0, use recipe_det");
  if (epochs < 0) throw ParameterError("recipe_det_sc: epochs must be >= 0");
  MinimaxRecipe r;
  r.inner = MinimaxInner::reg;
  r.strongly_convex = true;
  r.K = ceil_count(12.0 * std::sqrt(prob.mu_d / prob.mu_p));
  r.L = prob.L;
  r.mu_d = prob.mu_d;
  r.T = ceil_count(det_T(prob, r.K, 0.0));
  r.epochs = epochs;
  r.epoch_T.assign(static_cast<std::size_t>(epochs), r.T);
  r.epoch_delta.assign(static_cast<std::size_t>(epochs), 0.0);
  return r;
}

MinimaxRecipe recipe_stoch(const SaddleObjective& prob, double eps, std::int64_t K, double gap_ratio) {
  require_moduli(prob);
  if (!(prob.sigma > 0)) throw ConfigError("recipe_stoch: sigma = 0, use recipe_det");
  if (!prob.D_Y) throw ConfigError("recipe_stoch: problem has no D_Y");
  if (!(eps > 0) || K < 1 || !(gap_ratio > 0)) throw ParameterError("recipe_stoch: need eps > 0, K >= 1, ratio > 0");
  const double L = prob.L, md = prob.mu_d, s2 = prob.sigma * prob.sigma, D = *prob.D_Y;
  const double Kd = static_cast<double>(K);
  MinimaxRecipe r;
  r.inner = MinimaxInner::sreg_asym;
  r.K = K;
  r.L = L;
  r.mu_d = md;
  r.D_Y = D;
  r.gap_ratio = gap_ratio;
  const double noise = 49152.0 * s2 * Kd / (md * eps);
  const double T = 288.0 * L / md * (std::log(96.0) + std::log(48.0 * Kd * Kd) + std::max(0.0, std::log(16.0 * gap_ratio))) +
                   24756.0 * s2 * (std::log(md * md * D * D / s2) + 2.0) * Kd / (eps * md) +
                   noise * std::max(std::log(noise), 1.0);
  r.T = ceil_count(T);
  r.delta = eps / (128.0 * Kd);
  return r;
}

MinimaxRecipe recipe_stoch_sc(const SaddleObjective& prob, double Delta0, std::int64_t epochs) {
  require_moduli(prob);
  if (!(prob.mu_p > 0)) throw ConfigError("recipe_stoch_sc: mu_p = 0, use recipe_stoch");
  if (!(prob.sigma > 0)) throw ConfigError("recipe_stoch_sc: sigma = 0, use recipe_det_sc");
  if (!prob.D_Y) throw ConfigError("recipe_stoch_sc: problem has no D_Y");
  if (!(Delta0 > 0) || epochs < 0) throw ParameterError("recipe_stoch_sc: need Delta0 > 0 and epochs >= 0");
  const double L = prob.L, md = prob.mu_d, s2 = prob.sigma * prob.sigma, D = *prob.D_Y;
  MinimaxRecipe r;
  r.inner = MinimaxInner::sreg_asym;
  r.strongly_convex = true;
  r.K = ceil_count(24.0 * std::sqrt(md / prob.mu_p));
  r.L = L;
  r.mu_d = md;
  r.D_Y = D;
  r.epochs = epochs;
  const double Kd = static_cast<double>(r.K);
  const double base = 288.0 * L * (std::log(96.0) + std::log(48.0 * Kd * Kd)) / md;
  for (std::int64_t e = 1; e <= epochs; ++e) {
    const double two_e = std::ldexp(1.0, static_cast<int>(e));
    const double bracket =
        192.0 * s2 * (std::log(md * md * D * D / s2) + 2.0) / md +
        384.0 * s2 * std::max(std::log(49152.0 * Kd * s2 / Delta0) + static_cast<double>(e) * std::log(2.0), 1.0) / md;
    r.epoch_T.push_back(ceil_count(base + 128.0 * Kd * two_e / Delta0 * bracket));
    r.epoch_delta.push_back(Delta0 / (two_e * 128.0 * Kd));
  }
  r.T = r.epoch_T.empty() ? ceil_count(base) : r.epoch_T.front();
  r.delta = r.epoch_delta.empty() ? 0.0 : r.epoch_delta.front();
  return r;
}

AsymOptions minimax_asym_options(const MinimaxRecipe& r, std::int64_t k, std::int64_t T) {
  AsymOptions o;
  o.mu_X = r.beta(k);
  o.mu_Y = r.mu_d;
  o.T = T;
  o.eta_bar = r.eta(k);
  o.mu_X_upper = r.mu_d / 4.0;
  o.mu_X_lower = r.mu_d / 6.0;
  o.D_Y = r.D_Y;
  return o;
}

InexactnessCertificate minimax_certificate(const MinimaxRecipe& r, std::int64_t k, std::int64_t T, double sigma) {
  const double beta = r.beta(k);
  InexactnessCertificate c;
  if (r.inner == MinimaxInner::reg) {
    // beta_k eta_t = mu_d / (6L) for every k, so Lambda_T = (1 + mu_d/(6L))^T.
    c.eps_prime = 1.0 / pow1p_minus_one(beta * r.eta(k), static_cast<double>(T));
    c.eps = c.eps_prime;
    c.alpha = 1.0 + c.eps_prime;
  } else {
    c = asym_certificate(minimax_asym_options(r, k, T), sigma);
  }
  c.alpha *= beta;
  c.eps *= beta;
  c.eps_prime *= beta;
  return c;
}

std::vector<double> minimax_contractions(const MinimaxRecipe& r, std::int64_t T, double sigma) {
  std::vector<double> theta(static_cast<std::size_t>(r.K + 1), 0.0);
  double A_prev = 0, B_prev = 0;
  for (std::int64_t k = 1; k <= r.K; ++k) {
    const InexactnessCertificate c = minimax_certificate(r, k, T, sigma);
    const double g = r.gamma(k);
    const double s = 4.0 * c.eps / r.mu_d;
    const double A = c.alpha * g * g / (2.0 * (1.0 - s));
    const double B = c.alpha / (2.0 * (1.0 - s));
    if (k >= 2) {
      const double rho = (1.0 - g + s) / (1.0 - s);
      const double C = (r.beta(k) + c.eps_prime) * g * g / (2.0 * (1.0 - s));
      const double D = c.eps / (1.0 - s);
      theta[static_cast<std::size_t>(k)] = std::max({rho, C / A_prev, D / B_prev});
    }
    A_prev = A;
    B_prev = B;
  }
  return theta;
}

std::vector<double> minimax_gamma_sequence(const MinimaxRecipe& r, std::int64_t T, double sigma) {
  std::vector<double> G(static_cast<std::size_t>(r.K + 1), 1.0);
  for (std::int64_t k = 2; k <= r.K; ++k) {
    const double s = 4.0 * minimax_certificate(r, k, T, sigma).eps / r.mu_d;
    G[static_cast<std::size_t>(k)] = G[static_cast<std::size_t>(k - 1)] * (1.0 - r.gamma(k) + s) / (1.0 - s);
  }
  return G;
}

namespace {

void check_schedule(const MinimaxRecipe& r, std::int64_t T, double sigma, double delta) {
  if (T < 1) fail("T >= 1", 0, static_cast<double>(T), 1.0);
  const double Kd = static_cast<double>(r.K);
  const double eps_cap = std::min(1.0 / 12.0, 1.0 / ((Kd + 1.0) * (Kd + 2.0)));
  for (std::int64_t k = 1; k <= r.K; ++k) {
    const double beta = r.beta(k);
    const InexactnessCertificate c = minimax_certificate(r, k, T, sigma);
    const double eps = c.eps / beta;
    if (eps > eps_cap * (1 + 1e-12)) fail("eps <= min(1/12, 1/((K+1)(K+2)))", k, eps, eps_cap);
    if (!r.strongly_convex && eps > 1.0 / (2.0 * r.gap_ratio) * (1 + 1e-12)) {
      fail("eps <= ||x* - x0||^2 / (2 [f(x0) - f*])", k, eps, 1.0 / (2.0 * r.gap_ratio));
    }
    if (c.eps_prime / beta > 1.0 + 1e-12) fail("eps' <= 1", k, c.eps_prime / beta, 1.0);
    if (r.inner == MinimaxInner::reg) {
      const double eta = r.eta(k);
      if (eta * (r.L + beta) > 1.0 + 1e-12) fail("eta_t <= 1/(L + beta_k)", k, eta * (r.L + beta), 1.0);
    } else {
      if (4.0 * beta > r.mu_d * (1 + 1e-12)) fail("4 mu_X <= mu_Y", k, 4.0 * beta, r.mu_d);
      if (2.0 * r.eta(k) * (r.L + beta) > 1.0 + 1e-12) fail("eta_bar <= 1/(2 L_psi)", k, 2.0 * r.eta(k) * (r.L + beta), 1.0);
      if (c.delta > delta * (1 + 1e-12)) fail("delta_k <= delta", k, c.delta, delta);
    }
  }
  const std::vector<double> theta = minimax_contractions(r, T, sigma);
  double G = 1.0;
  for (std::int64_t k = 2; k <= r.K; ++k) {
    G *= theta[static_cast<std::size_t>(k)];
    const double kd = static_cast<double>(k);
    if (G > 12.0 / (kd * kd) * (1 + 1e-12)) fail("potential contraction prod theta_j <= 12/k^2", k, G, 12.0 / (kd * kd));
  }
}

MinimaxResult run_loop(const SaddleObjective& prob, const MinimaxRecipe& r, const Vector& x0, const Vector& y0,
                       std::int64_t T, std::int64_t epoch, std::int64_t sfo_base, OracleStream& stream,
                       const MinimaxObserver& observer) {
  Vector x_tilde = x0, x_bar = x0, x_hat, x_last = x0, y = y0;
  std::int64_t sfo = sfo_base;
  const double mu_p = prob.mu_p;
  for (std::int64_t k = 1; k <= r.K; ++k) {
    const double g = r.gamma(k), beta = r.beta(k);
    x_hat = g * x_bar + (1.0 - g) * x_tilde;
    const SaddleSubproblem sub(prob, beta, x_hat);
    SaddleSolverOutput out;
    if (r.inner == MinimaxInner::reg) {
      const double eta = r.eta(k);
      out = reg(sub, beta, x_hat, y, T, [eta](std::int64_t) { return eta; });
    } else {
      OracleStream inner = stream.split({static_cast<std::uint64_t>(epoch), static_cast<std::uint64_t>(k)});
      out = sreg_asym(sub, minimax_asym_options(r, k, T), x_hat, y, inner);
    }
    sfo += out.sfo_calls;
    InexactnessCertificate cert = out.certificate;
    cert.alpha *= beta;
    cert.eps *= beta;
    cert.eps_prime *= beta;
    x_last = out.last.x();
    y = out.last.y();
    const double a = cert.alpha;
    x_bar = (a * x_last + (mu_p - a) * (1.0 - g) * x_tilde) / (a * g + mu_p * (1.0 - g));
    x_tilde = out.ergodic.x();
    if (observer) observer(MinimaxStep{epoch, k, x_tilde, x_last, y, x_bar, sfo, cert});
  }
  return MinimaxResult{x_tilde, y, sfo};
}

void check_common(const SaddleObjective& prob, const MinimaxRecipe& r, const Vector& x0, const Vector& y0) {
  require_moduli(prob);
  require_dim(x0.size(), prob.dx(), "minimax catalyst x0");
  require_dim(y0.size(), prob.dy(), "minimax catalyst y0");
  if (r.K < 1) throw ConfigError("minimax recipe: K must be >= 1");
  if (prob.L > r.L * (1 + 1e-12) || std::abs(prob.mu_d - r.mu_d) > 1e-12 * prob.mu_d) {
    throw ConfigError("minimax recipe: L or mu_d differ from the problem");
  }
  if (r.inner == MinimaxInner::reg && prob.sigma > 0) {
    throw ConfigError("minimax recipe: the REG recipe needs an exact operator (sigma = 0)");
  }
  if (r.inner == MinimaxInner::sreg_asym && !(prob.sigma > 0)) {
    throw ConfigError("minimax recipe: the stochastic recipe needs sigma > 0");
  }
}

}  // namespace

void check_minimax_recipe(const MinimaxRecipe& r, double sigma) {
  if (r.epochs > 0) {
    if (static_cast<std::int64_t>(r.epoch_T.size()) != r.epochs ||
        static_cast<std::int64_t>(r.epoch_delta.size()) != r.epochs) {
      throw ConfigError("minimax recipe: epoch plan length differs from epochs");
    }
    for (std::int64_t e = 0; e < r.epochs; ++e) check_schedule(r, r.epoch_T[e], sigma, r.epoch_delta[e]);
  } else {
    check_schedule(r, r.T, sigma, r.delta);
  }
}

MinimaxResult catalyst_minimax_run(const SaddleObjective& prob, const MinimaxRecipe& recipe, const Vector& x0,
                                   const Vector& y0, OracleStream& stream, const MinimaxObserver& observer) {
  check_common(prob, recipe, x0, y0);
  check_schedule(recipe, recipe.T, prob.sigma, recipe.delta);
  return run_loop(prob, recipe, prob.setX.project(x0), prob.setY.project(y0), recipe.T, 0, 0, stream, observer);
}

MinimaxResult r_catalyst_minimax_run(const SaddleObjective& prob, const MinimaxRecipe& recipe, const Vector& x0,
                                     const Vector& y0, OracleStream& stream, const MinimaxObserver& observer) {
  if (!(prob.mu_p > 0)) throw ConfigError("r_catalyst_minimax_run: mu_p = 0, use catalyst_minimax_run");
  check_common(prob, recipe, x0, y0);
  check_minimax_recipe(recipe, prob.sigma);
  MinimaxResult res{prob.setX.project(x0), prob.setY.project(y0), 0};
  for (std::int64_t e = 1; e <= recipe.epochs; ++e) {
    res = run_loop(prob, recipe, res.x_tilde, res.y, recipe.epoch_T[e - 1], e, res.sfo_calls, stream, observer);
  }
  return res;
}

}  // namespace ckit
