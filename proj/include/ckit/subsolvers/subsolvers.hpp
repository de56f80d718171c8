#pragma once

#include <functional>
#include <optional>

#include "ckit/core/objective.hpp"
#include "ckit/core/oracle.hpp"

namespace ckit {

// Constants of the approximate-prox inequality. alpha, eps and eps_prime are
// relative to the solver's strong-convexity modulus (multiply by it for
// absolute values); delta is absolute.
struct InexactnessCertificate {
  double alpha = 1.0;
  double eps = 0.0;
  double eps_prime = 0.0;
  double delta = 0.0;
};

// phi(u) = f(u) + (beta/2) ||u - center||^2 over base.set.
struct ProxSubproblem {
  const SmoothObjective& base;
  double beta;
  Vector center;

  double mu_phi() const { return base.mu + beta; }
  double L_phi() const { return base.L + beta; }
  double value(const Vector& u) const { return base.value(u) + 0.5 * beta * (u - center).squaredNorm(); }
};

// Phi(x, y) = F(x, y) + (beta/2) ||x - center||^2 over setX x setY.
struct SaddleSubproblem {
  const SaddleObjective& base;
  double beta = 0.0;
  Vector center;  // empty means beta must be 0

  explicit SaddleSubproblem(const SaddleObjective& b) : base(b), center(Vector::Zero(b.dx())) {}
  SaddleSubproblem(const SaddleObjective& b, double beta_, Vector c) : base(b), beta(beta_), center(std::move(c)) {}

  double mu_X() const { return base.mu_p + beta; }
  // The regularizer only touches x, so concavity in y stays mu_d.
  double mu_Y() const { return base.mu_d; }
  double L() const { return base.L + beta; }
  double value(const Vector& x, const Vector& y) const {
    return base.value(x, y) + 0.5 * beta * (x - center).squaredNorm();
  }
};

struct SolverOutput {
  Vector ergodic;
  Vector last;
  std::int64_t sfo_calls = 0;
  InexactnessCertificate certificate;
};

struct SaddleSolverOutput {
  PrimalDualPoint ergodic;
  PrimalDualPoint last;
  std::int64_t sfo_calls = 0;
  InexactnessCertificate certificate;
};

// ---- prox-SGD -------------------------------------------------------------

struct SgdOptions {
  std::int64_t T = 0;
  double t0 = 0;
  // Strong-convexity modulus used for steps and certificate; defaults to
  // mu_phi. Any lower bound on mu_phi is admissible.
  std::optional<double> modulus;
};

// eta_t = 2 / (m (t + t0 + 2)), t = 1..T, which makes
// Lambda_t = prod_s (1 - m eta_s) = (t0+1)(t0+2) / ((t+t0+1)(t+t0+2)) exactly.
double sgd_stepsize(double modulus, double t0, std::int64_t t);
double sgd_lambda(double t0, std::int64_t t);

// Certificate of sgd_prox as a function of the schedule alone.
InexactnessCertificate sgd_certificate(double modulus, double L_phi, double sigma, double t0, std::int64_t T);

SolverOutput sgd_prox(const ProxSubproblem& sub, const SgdOptions& opt, OracleStream& stream);

// ---- extragradient family -------------------------------------------------

using StepObserver = std::function<void(std::int64_t t, const Vector& x, const Vector& y)>;

// Regularized extragradient with deterministic operator. eta(t) for t = 0..T-1.
SaddleSolverOutput reg(const SaddleSubproblem& sub, double mu, const Vector& x0, const Vector& y0, std::int64_t T,
                       const std::function<double(std::int64_t)>& eta, const StepObserver& observer = {});

struct SregSchedule {
  double t0;
  double mu;
  double eta(std::int64_t t) const { return 2.0 / (mu * (static_cast<double>(t) + t0 + 1.0)); }
  // Lambda_t = prod_{s<t} (1 + mu eta_s)
  double lambda(std::int64_t t) const {
    const double tt = static_cast<double>(t);
    return (tt + t0 + 1) * (tt + t0 + 2) / ((t0 + 1) * (t0 + 2));
  }
};
SregSchedule sreg_schedule(double L, double mu);

// Stochastic extragradient with the decaying schedule above; 2 SFO calls per step.
SaddleSolverOutput sreg(const SaddleSubproblem& sub, double mu, const Vector& x0, const Vector& y0, std::int64_t T,
                        OracleStream& stream, const StepObserver& observer = {});

struct RestartPlan {
  double t0 = 0;
  std::int64_t epochs = 0;
  std::vector<std::int64_t> steps;  // T_e for e = 1..E
};
// R2 is an overestimate of ||z0 - z*||^2.
RestartPlan sreg_restart_plan(double L, double mu, double sigma, double eps, double R2);

using EpochObserver = std::function<void(std::int64_t e, const Vector& x, const Vector& y, std::int64_t sfo)>;
SaddleSolverOutput sreg_restarted(const SaddleSubproblem& sub, double mu, const Vector& x0, const Vector& y0,
                                  double eps, double R2, OracleStream& stream, const EpochObserver& observer = {});

struct AsymOptions {
  double mu_X = 0;
  double mu_Y = 0;
  std::int64_t T = 0;
  double eta_bar = 0;
  double mu_X_upper = 0;  // overestimate of mu_X used inside the log term
  double mu_X_lower = 0;  // underestimate of mu_X
  double D_Y = 0;
};
double asym_stepsize(const AsymOptions& opt, double sigma);
InexactnessCertificate asym_certificate(const AsymOptions& opt, double sigma);

// Extragradient whose second step anchors x and y with different weights.
SaddleSolverOutput sreg_asym(const SaddleSubproblem& sub, const AsymOptions& opt, const Vector& x0, const Vector& y0,
                             OracleStream& stream, const StepObserver& observer = {});

// (1 + x)^T - 1 without overflow or cancellation.
double pow1p_minus_one(double x, double T);

}  // namespace ckit
