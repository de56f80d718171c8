#include <cmath>

#include "ckit/core/prox.hpp"
#include "ckit/subsolvers/subsolvers.hpp"

namespace ckit {

double pow1p_minus_one(double x, double T) { return std::expm1(T * std::log1p(x)); }

namespace {

struct EgRun {
  SaddleSolverOutput out;
  double log_lambda = 0.0;  // log Lambda_T
};

void sub_operator(const SaddleSubproblem& sub, const Vector& x, const Vector& y, OracleStream* stream, Vector& gx,
                  Vector& gy) {
  if (stream) {
    sample_operator_into(sub.base, x, y, *stream, gx, gy);
  } else {
    saddle_operator_into(sub.base, x, y, gx, gy);
  }
  if (sub.beta != 0) gx.noalias() += sub.beta * (x - sub.center);
}

// Shared loop. Second step anchors x at weight mu_x and y at mu_y; the ergodic
// weights are eta_t Lambda_t with Lambda_{t+1} = (1 + mu_w eta_t) Lambda_t.
EgRun run_extragradient(const SaddleSubproblem& sub, const Vector& x0, const Vector& y0, std::int64_t T,
                        const std::function<double(std::int64_t)>& eta_fn, double mu_x, double mu_y, double mu_w,
                        OracleStream* stream, const StepObserver& observer) {
  const SaddleObjective& F = sub.base;
  require_dim(x0.size(), F.dx(), "extragradient x0");
  require_dim(y0.size(), F.dy(), "extragradient y0");
  require_dim(sub.center.size(), F.dx(), "extragradient prox center");
  if (T < 1) throw ParameterError("extragradient: T must be >= 1");

  Vector x = F.setX.project(x0), y = F.setY.project(y0);
  Vector xh, yh, gx, gy, xn, yn;
  Vector ax = Vector::Zero(x.size()), ay = Vector::Zero(y.size());
  double inv_lambda = 1.0;
  double log_lambda = 0.0;
  if (observer) observer(0, x, y);
  for (std::int64_t t = 0; t < T; ++t) {
    const double eta = eta_fn(t);
    sub_operator(sub, x, y, stream, gx, gy);
    prox_step_into(F.setX, eta, x, gx, {}, xh);
    prox_step_into(F.setY, eta, y, gy, {}, yh);
    sub_operator(sub, xh, yh, stream, gx, gy);
    prox_step_into(F.setX, eta, x, gx, {{mu_x, xh}}, xn);
    prox_step_into(F.setY, eta, y, gy, {{mu_y, yh}}, yn);
    x.swap(xn);
    y.swap(yn);
    // weight share of step t: eta_t Lambda_t / sum_{s<=t} eta_s Lambda_s
    const double r = mu_w * eta / (1.0 + mu_w * eta - inv_lambda);
    ax += r * (xh - ax);
    ay += r * (yh - ay);
    inv_lambda /= 1.0 + mu_w * eta;
    log_lambda += std::log1p(mu_w * eta);
    if (observer) observer(t + 1, x, y);
  }
  EgRun run;
  run.out.ergodic = PrimalDualPoint(ax, ay);
  run.out.last = PrimalDualPoint(x, y);
  run.out.sfo_calls = 2 * T;
  run.log_lambda = log_lambda;
  return run;
}

InexactnessCertificate lambda_certificate(double log_lambda) {
  InexactnessCertificate c;
  c.eps_prime = 1.0 / std::expm1(log_lambda);
  c.alpha = 1.0 + c.eps_prime;
  c.eps = c.eps_prime;
  return c;
}

}  // namespace

SaddleSolverOutput reg(const SaddleSubproblem& sub, double mu, const Vector& x0, const Vector& y0, std::int64_t T,
                       const std::function<double(std::int64_t)>& eta, const StepObserver& observer) {
  if (!(mu > 0)) throw ParameterError("reg: mu must be positive");
  if (mu > std::min(sub.mu_X(), sub.mu_Y()) * (1 + 1e-12)) throw RecipeViolation("reg: mu exceeds the problem moduli");
  const double L = sub.L();
  for (std::int64_t t = 0; t < T; ++t) {
    const double e = eta(t);
    if (!(e > 0) || e * L > 1.0 + 1e-12) throw RecipeViolation("reg: stepsize must satisfy 0 < eta_t <= 1/L");
  }
  EgRun run = run_extragradient(sub, x0, y0, T, eta, mu, mu, mu, nullptr, observer);
  run.out.certificate = lambda_certificate(run.log_lambda);
  return std::move(run.out);
}

SregSchedule sreg_schedule(double L, double mu) {
  if (!(mu > 0) || !(L >= mu)) throw ParameterError("sreg: need 0 < mu <= L");
  return SregSchedule{4.0 * std::ceil(L / mu), mu};
}

SaddleSolverOutput sreg(const SaddleSubproblem& sub, double mu, const Vector& x0, const Vector& y0, std::int64_t T,
                        OracleStream& stream, const StepObserver& observer) {
  if (mu > std::min(sub.mu_X(), sub.mu_Y()) * (1 + 1e-12)) throw RecipeViolation("sreg: mu exceeds the problem moduli");
  const SregSchedule s = sreg_schedule(sub.L(), mu);
  if (sub.L() * s.eta(0) > 0.5 + 1e-12) throw RecipeViolation("sreg: L eta_t > 1/2");
  EgRun run = run_extragradient(
      sub, x0, y0, T, [&](std::int64_t t) { return s.eta(t); }, mu, mu, mu, &stream, observer);
  run.out.certificate = lambda_certificate(run.log_lambda);
  return std::move(run.out);
}

RestartPlan sreg_restart_plan(double L, double mu, double sigma, double eps, double R2) {
  if (!(eps > 0)) throw ParameterError("sreg_restarted: eps must be positive");
  if (!(R2 > 0)) throw ParameterError("sreg_restarted: R2 must be positive");
  RestartPlan plan;
  plan.t0 = sreg_schedule(L, mu).t0;
  plan.epochs = R2 > eps ? static_cast<std::int64_t>(std::ceil(std::log2(R2 / eps) - 1e-12)) : 0;
  for (std::int64_t e = 1; e <= plan.epochs; ++e) {
    // epoch e maps z_(e-1) to z_(e); its noise budget targets 2^{-(e-1)} R2 / 8
    const double noise = 768.0 * std::ldexp(1.0, static_cast<int>(e) + 2) * sigma * sigma / (mu * mu * R2);
    plan.steps.push_back(static_cast<std::int64_t>(std::ceil(6.0 * plan.t0 + noise)));
  }
  return plan;
}

SaddleSolverOutput sreg_restarted(const SaddleSubproblem& sub, double mu, const Vector& x0, const Vector& y0,
                                  double eps, double R2, OracleStream& stream, const EpochObserver& observer) {
  const RestartPlan plan = sreg_restart_plan(sub.L(), mu, sub.base.sigma, eps, R2);
  SaddleSolverOutput out;
  out.last = PrimalDualPoint(sub.base.setX.project(x0), sub.base.setY.project(y0));
  out.ergodic = out.last;
  if (observer) observer(0, out.last.x(), out.last.y(), 0);
  std::int64_t sfo = 0;
  for (std::int64_t e = 1; e <= plan.epochs; ++e) {
    OracleStream epoch_stream = stream.split({static_cast<std::uint64_t>(e)});
    SaddleSolverOutput r = sreg(sub, mu, out.last.x(), out.last.y(), plan.steps[e - 1], epoch_stream);
    sfo += r.sfo_calls;
    out = std::move(r);
    if (observer) observer(e, out.last.x(), out.last.y(), sfo);
  }
  out.sfo_calls = sfo;
  return out;
}

double asym_stepsize(const AsymOptions& opt, double sigma) {
  if (sigma == 0.0) return opt.eta_bar;
  const double T = static_cast<double>(opt.T);
  // q log T = max{2 [log(mu_bar^2 D_Y^2 / sigma^2) + log T], 1}
  const double qlogT =
      std::max(2.0 * (std::log(opt.mu_X_upper * opt.mu_X_upper * opt.D_Y * opt.D_Y / (sigma * sigma)) + std::log(T)), 1.0);
  return std::min(opt.eta_bar, qlogT / (opt.mu_X * T));
}

InexactnessCertificate asym_certificate(const AsymOptions& opt, double sigma) {
  const double T = static_cast<double>(opt.T);
  const double eta = asym_stepsize(opt, sigma);
  InexactnessCertificate c;
  c.eps_prime = 1.0 / pow1p_minus_one(opt.mu_X * eta, T);
  c.alpha = 1.0 + c.eps_prime;
  c.eps = 4.0 / pow1p_minus_one(opt.mu_X * opt.eta_bar, T);
  if (sigma > 0) {
    const double lg = std::log(opt.mu_X_upper * opt.mu_X_upper * opt.D_Y * opt.D_Y / (sigma * sigma));
    c.delta = std::max(0.0, 16.0 * sigma * sigma * (lg + std::log(T) + 2.0) / (opt.mu_X * T));
  }
  return c;
}

SaddleSolverOutput sreg_asym(const SaddleSubproblem& sub, const AsymOptions& opt, const Vector& x0, const Vector& y0,
                             OracleStream& stream, const StepObserver& observer) {
  if (!(opt.mu_X > 0) || !(opt.mu_Y > 0)) throw ParameterError("sreg_asym: moduli must be positive");
  if (4 * opt.mu_X > opt.mu_Y * (1 + 1e-12)) throw RecipeViolation("sreg_asym: need 4 mu_X <= mu_Y");
  if (opt.mu_X > sub.mu_X() * (1 + 1e-12) || opt.mu_Y > sub.mu_Y() * (1 + 1e-12)) {
    throw RecipeViolation("sreg_asym: anchor weights exceed the problem moduli");
  }
  if (!(opt.eta_bar > 0) || opt.eta_bar * 2 * sub.L() > 1.0 + 1e-12) throw RecipeViolation("sreg_asym: eta_bar > 1/(2L)");
  if (opt.T < 1) throw ParameterError("sreg_asym: T must be >= 1");
  const double sigma = sub.base.sigma;
  if (sigma > 0) {
    if (!(opt.D_Y > 0) || !(opt.mu_X_upper >= opt.mu_X * (1 - 1e-12))) {
      throw ParameterError("sreg_asym: need D_Y > 0 and mu_X_upper >= mu_X");
    }
  }
  const double eta = asym_stepsize(opt, sigma);
  EgRun run = run_extragradient(
      sub, x0, y0, opt.T, [eta](std::int64_t) { return eta; }, opt.mu_X, opt.mu_Y, opt.mu_X, &stream, observer);
  run.out.certificate = asym_certificate(opt, sigma);
  return std::move(run.out);
}

}  // namespace ckit
