#include "ckit/catalyst/min.hpp"

#include <cmath>
#include <string>

namespace ckit {

MinRecipe recipe_smooth(double L, double eps, double sigma, double D2) {
  if (!(L > 0) || !(eps > 0) || !(D2 > 0) || !(sigma >= 0)) {
    throw ParameterError("recipe_smooth: need L, eps, D2 > 0 and sigma >= 0");
  }
  MinRecipe r;
  r.L = L;
  r.K = static_cast<std::int64_t>(std::ceil(4.0 * std::sqrt(L * D2 / eps)));
  r.T = static_cast<std::int64_t>(std::ceil(8.0 + 32.0 * sigma * sigma * static_cast<double>(r.K) / (L * eps)));
  r.delta = eps / (4.0 * static_cast<double>(r.K));
  return r;
}

MinRecipe recipe_restarted(double L, double mu, double eps, double sigma, double Delta0) {
  if (!(mu > 0)) throw ConfigError("recipe_restarted: mu = 0, use recipe_smooth with catalyst_run");
  if (!(L >= mu) || !(eps > 0) || !(Delta0 > 0) || !(sigma >= 0)) {
    throw ParameterError("recipe_restarted: need L >= mu, eps > 0, Delta0 > 0, sigma >= 0");
  }
  MinRecipe r;
  r.L = L;
  r.K = static_cast<std::int64_t>(std::ceil(6.0 * std::sqrt(L / mu)));
  r.epochs = Delta0 > eps ? static_cast<std::int64_t>(std::ceil(std::log2(Delta0 / eps) - 1e-12)) : 0;
  const double K = static_cast<double>(r.K);
  for (std::int64_t e = 1; e <= r.epochs; ++e) {
    const double two_e = std::ldexp(1.0, static_cast<int>(e));
    r.epoch_delta.push_back(Delta0 / (4.0 * two_e * K));
    r.epoch_T.push_back(static_cast<std::int64_t>(std::ceil(8.0 + 128.0 * sigma * sigma * two_e * K / (L * Delta0))));
  }
  r.T = r.epoch_T.empty() ? 8 : r.epoch_T.front();
  r.delta = r.epoch_delta.empty() ? 0.0 : r.epoch_delta.front();
  return r;
}

double min_gamma_product(const MinRecipe& r, std::int64_t k) {
  double g = 1.0;
  for (std::int64_t j = 2; j <= k; ++j) g *= 1.0 - r.gamma(j);
  return g;
}

InexactnessCertificate min_certificate(const MinRecipe& r, std::int64_t k, double sigma, std::int64_t T) {
  const double beta = r.beta(k);
  InexactnessCertificate c;
  if (r.exact_prox) {
    c.alpha = beta;
    return c;
  }
  c = sgd_certificate(beta, r.L + beta, sigma, r.t0, T);
  c.alpha *= beta;
  c.eps *= beta;
  return c;
}

namespace {

[[noreturn]] void fail(const std::string& what, std::int64_t k, double lhs, double rhs) {
  throw ConfigError("catalyst recipe check failed: " + what + " at k=" + std::to_string(k) +
                    " (lhs=" + std::to_string(lhs) + ", rhs=" + std::to_string(rhs) + ")");
}

void check_schedule(const MinRecipe& r, double mu, double sigma, std::int64_t T, double delta) {
  if (!r.exact_prox) {
    if (static_cast<double>(T) < r.t0) fail("T >= t0", 0, static_cast<double>(T), r.t0);
    // t0 >= 4 L_phi / beta_k is tightest at k = K.
    const double need = 4.0 * (r.L + r.beta(r.K)) / r.beta(r.K);
    if (r.t0 < need * (1 - 1e-12)) fail("t0 >= 4 L_phi / beta_k", r.K, r.t0, need);
  }
  // alpha and eps relative to beta_k do not depend on k.
  const InexactnessCertificate rel = r.exact_prox ? InexactnessCertificate{} : [&] {
    InexactnessCertificate c;
    const double lam = sgd_lambda(r.t0, T);
    c.eps = lam / (1.0 - lam);
    c.alpha = 1.0 / (1.0 - lam);
    return c;
  }();
  if (rel.eps > 1.0) fail("eps <= 1", 1, rel.eps, 1.0);
  double gam_prev = 1.0;
  for (std::int64_t k = 2; k <= r.K; ++k) {
    const double gk = r.gamma(k), gp = r.gamma(k - 1);
    const double gam = gam_prev * (1.0 - gk);
    const double lhs = r.beta(k) * (1.0 + rel.eps) * gk * gk / gam;
    const double rhs = (r.beta(k - 1) * rel.alpha * gp + mu * (1.0 - gp)) * gp / gam_prev;
    if (lhs > rhs * (1 + 1e-12)) fail("(beta_k + eps_k) gamma_k^2 / Gamma_k <= (alpha_{k-1} gamma_{k-1} + mu(1 - gamma_{k-1})) gamma_{k-1} / Gamma_{k-1}", k, lhs, rhs);
    gam_prev = gam;
  }
  if (sigma > 0 && !r.exact_prox) {
    // The certified delta grows as beta_k shrinks, so k = K is the worst case; k = 1 is checked too.
    for (std::int64_t k : {std::int64_t{1}, r.K}) {
      const double d = min_certificate(r, k, sigma, T).delta;
      if (d > delta * (1 + 1e-12)) fail("delta_k <= delta", k, d, delta);
    }
  }
}

MinResult run_loop(const SmoothObjective& prob, const MinRecipe& r, const Vector& x0, std::int64_t T,
                   std::int64_t epoch, std::int64_t sfo_base, OracleStream& stream, const CatalystObserver& observer) {
  Vector x_tilde = x0, x_bar = x0, x_hat, x_last = x0;
  std::int64_t sfo = sfo_base;
  const double mu = prob.mu;
  for (std::int64_t k = 1; k <= r.K; ++k) {
    const double g = r.gamma(k), beta = r.beta(k);
    x_hat = g * x_bar + (1.0 - g) * x_tilde;
    InexactnessCertificate cert;
    Vector x_tilde_new;
    if (r.exact_prox) {
      x_tilde_new = prob.exact_prox(x_hat, beta);
      x_last = x_tilde_new;
      cert.alpha = beta;
    } else {
      OracleStream inner = stream.split({static_cast<std::uint64_t>(epoch), static_cast<std::uint64_t>(k)});
      SolverOutput out = sgd_prox(ProxSubproblem{prob, beta, x_hat}, SgdOptions{T, r.t0, beta}, inner);
      x_tilde_new = std::move(out.ergodic);
      x_last = std::move(out.last);
      sfo += out.sfo_calls;
      cert = out.certificate;
      cert.alpha *= beta;
      cert.eps *= beta;
    }
    const double a = cert.alpha;
    x_bar = (a * x_last + (mu - a) * (1.0 - g) * x_tilde) / (a * g + mu * (1.0 - g));
    x_tilde = std::move(x_tilde_new);
    if (observer) observer(CatalystStep{epoch, k, x_tilde, x_last, x_bar, sfo, cert});
  }
  return MinResult{x_tilde, sfo};
}

void check_common(const SmoothObjective& prob, const MinRecipe& r, const Vector& x0) {
  prob.validate();
  require_dim(x0.size(), prob.dim(), "catalyst x0");
  if (r.K < 1) throw ConfigError("catalyst recipe: K must be >= 1");
  if (prob.L > r.L * (1 + 1e-12)) throw ConfigError("catalyst recipe: recipe L below the problem's L");
  if (r.exact_prox && !prob.exact_prox) throw ConfigError("catalyst recipe: exact-prox mode needs an exact_prox oracle");
}

}  // namespace

void check_min_recipe(const MinRecipe& r, double mu, double sigma) {
  if (r.epochs > 0) {
    if (static_cast<std::int64_t>(r.epoch_T.size()) != r.epochs ||
        static_cast<std::int64_t>(r.epoch_delta.size()) != r.epochs) {
      throw ConfigError("catalyst recipe: epoch plan length differs from epochs");
    }
    for (std::int64_t e = 0; e < r.epochs; ++e) check_schedule(r, mu, sigma, r.epoch_T[e], r.epoch_delta[e]);
  } else {
    check_schedule(r, mu, sigma, r.T, r.delta);
  }
}

MinResult catalyst_run(const SmoothObjective& prob, const MinRecipe& recipe, const Vector& x0, OracleStream& stream,
                       const CatalystObserver& observer) {
  check_common(prob, recipe, x0);
  check_schedule(recipe, prob.mu, prob.sigma, recipe.T, recipe.delta);
  return run_loop(prob, recipe, prob.set.project(x0), recipe.T, 0, 0, stream, observer);
}

MinResult r_catalyst_run(const SmoothObjective& prob, const MinRecipe& recipe, const Vector& x0,
                         OracleStream& stream, const CatalystObserver& observer) {
  if (!(prob.mu > 0)) throw ConfigError("r_catalyst_run: mu = 0, use catalyst_run");
  check_common(prob, recipe, x0);
  check_min_recipe(recipe, prob.mu, prob.sigma);
  MinResult res{prob.set.project(x0), 0};
  for (std::int64_t e = 1; e <= recipe.epochs; ++e) {
    res = run_loop(prob, recipe, res.x_tilde, recipe.epoch_T[e - 1], e, res.sfo_calls, stream, observer);
  }
  return res;
}

}  // namespace ckit
