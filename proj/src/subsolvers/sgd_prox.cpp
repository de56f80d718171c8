#include <cmath>

#include "ckit/core/prox.hpp"
#include "ckit/subsolvers/subsolvers.hpp"

namespace ckit {

double sgd_stepsize(double modulus, double t0, std::int64_t t) {
  return 2.0 / (modulus * (static_cast<double>(t) + t0 + 2.0));
}

double sgd_lambda(double t0, std::int64_t t) {
  const double tt = static_cast<double>(t);
  return (t0 + 1) * (t0 + 2) / ((tt + t0 + 1) * (tt + t0 + 2));
}

InexactnessCertificate sgd_certificate(double m, double L_phi, double sigma, double t0, std::int64_t T) {
  double lambda = 1.0;
  double noise_sum = 0.0;  // sum_t m eta_t^2 / (Lambda_t (1 - L_phi eta_t))
  for (std::int64_t t = 1; t <= T; ++t) {
    const double eta = sgd_stepsize(m, t0, t);
    lambda *= 1.0 - m * eta;
    noise_sum += m * eta * eta / (lambda * (1.0 - L_phi * eta));
  }
  InexactnessCertificate c;
  c.eps = lambda / (1.0 - lambda);
  c.alpha = 1.0 / (1.0 - lambda);
  c.delta = lambda / (2.0 * (1.0 - lambda)) * noise_sum * sigma * sigma;
  return c;
}

SolverOutput sgd_prox(const ProxSubproblem& sub, const SgdOptions& opt, OracleStream& stream) {
  const SmoothObjective& f = sub.base;
  if (!(sub.beta > 0)) throw ParameterError("sgd_prox: beta must be positive");
  require_dim(sub.center.size(), f.dim(), "sgd_prox center");
  const double m = opt.modulus.value_or(sub.mu_phi());
  const double Lphi = sub.L_phi();
  if (!(m > 0) || m > sub.mu_phi() * (1 + 1e-12)) throw ParameterError("sgd_prox: modulus must lie in (0, mu_phi]");
  if (opt.t0 < 4 * Lphi / m * (1 - 1e-12)) throw RecipeViolation("sgd_prox: t0 < 4 L_phi / mu_phi");
  if (static_cast<double>(opt.T) < opt.t0) throw RecipeViolation("sgd_prox: T < t0");

  Vector u = sub.center;
  Vector avg = Vector::Zero(u.size());
  Vector g, next;
  double lambda = 1.0;
  for (std::int64_t t = 1; t <= opt.T; ++t) {
    g = sample_grad(f, u, stream);
    g.noalias() += sub.beta * (u - sub.center);
    const double eta = sgd_stepsize(m, opt.t0, t);
    prox_step_into(f.set, eta, u, g, {}, next);
    u.swap(next);
    lambda *= 1.0 - m * eta;
    avg += (m * eta / (1.0 - lambda)) * (u - avg);
  }

  SolverOutput out;
  out.ergodic = std::move(avg);
  out.last = std::move(u);
  out.sfo_calls = opt.T;
  out.certificate = sgd_certificate(m, Lphi, f.sigma, opt.t0, opt.T);
  return out;
}

}  // namespace ckit
