#include <gtest/gtest.h>

#include <cmath>

#include "ckit/core/prox.hpp"
#include "ckit/subsolvers/subsolvers.hpp"
#include "ckit/testbed/testbed.hpp"

using namespace ckit;

namespace {

Vector scalar(double v) { return Vector::Constant(1, v); }

SmoothObjective square(double sigma = 0.0) {
  SmoothObjective f;
  f.value = [](const Vector& u) { return u.squaredNorm(); };
  f.gradient = [](const Vector& u) { return Vector(2.0 * u); };
  f.L = 2.0;
  f.mu = 0.0;  // reported as merely convex, so mu_phi = beta
  f.set = FeasibleSet::ball(1, 10.0);
  f.sigma = sigma;
  return f;
}

// F(x, y) = x^2/2 + xy - y^2/2 on Ball(0,10)^2; G(x, y) = (x + y, y - x).
SaddleObjective toy_saddle(double sigma = 0.0) {
  SaddleObjective F;
  F.value = [](const Vector& x, const Vector& y) { return 0.5 * x(0) * x(0) + x(0) * y(0) - 0.5 * y(0) * y(0); };
  F.grad_x = [](const Vector& x, const Vector& y) { return Vector(x + y); };
  F.grad_y = [](const Vector& x, const Vector& y) { return Vector(x - y); };
  F.L = std::sqrt(2.0);
  F.mu_p = 1.0;
  F.mu_d = 1.0;
  F.setX = FeasibleSet::ball(1, 10.0);
  F.setY = FeasibleSet::ball(1, 10.0);
  F.sigma = sigma;
  F.D_Y = 20.0;
  return F;
}

}  // namespace

TEST(SgdProx, ConvergesToClosedFormProx) {
  const SmoothObjective f = square();
  const ProxSubproblem sub{f, 2.0, scalar(1.0)};
  EXPECT_EQ(sub.mu_phi(), 2.0);
  EXPECT_EQ(4 * sub.L_phi() / sub.mu_phi(), 8.0);
  OracleStream stream(1);
  const SolverOutput out = sgd_prox(sub, SgdOptions{500, 8.0, std::nullopt}, stream);
  // argmin u^2 + (u - 1)^2 = 0.5
  EXPECT_NEAR(out.last(0), 0.5, 1e-3);
  EXPECT_EQ(out.sfo_calls, 500);
}

TEST(SgdProx, LambdaClosedFormForT0Eight) {
  for (std::int64_t T : {1, 8, 50, 1000}) {
    const double Td = static_cast<double>(T);
    EXPECT_NEAR(sgd_lambda(8.0, T), 90.0 / ((Td + 9) * (Td + 10)), 1e-15);
  }
  EXPECT_NEAR(sgd_lambda(8.0, 8), 5.0 / 17.0, 1e-15);
}

TEST(SgdProx, ErgodicWeightsTelescopeToOne) {
  for (double t0 : {8.0, 13.5, 100.0}) {
    for (std::int64_t T : {1, 7, 300}) {
      const double m = 3.0;
      double sum = 0;
      for (std::int64_t t = 1; t <= T; ++t) sum += sgd_stepsize(m, t0, t) * m / sgd_lambda(t0, t);
      const double lam = sgd_lambda(t0, T);
      EXPECT_NEAR(lam / (1 - lam) * sum, 1.0, 1e-12);
    }
  }
}

TEST(SgdProx, CertificateShape) {
  const InexactnessCertificate c = sgd_certificate(1.0, 2.0, 0.5, 8.0, 100);
  EXPECT_DOUBLE_EQ(c.alpha, 1.0 + c.eps);
  EXPECT_GT(c.delta, 0.0);
  EXPECT_LE(c.delta, 32.0 * 0.25 / 100.0);
  EXPECT_EQ(sgd_certificate(1.0, 2.0, 0.0, 8.0, 100).delta, 0.0);
}

TEST(SgdProx, RejectsShortWarmup) {
  const SmoothObjective f = square();
  OracleStream s(1);
  EXPECT_THROW(sgd_prox(ProxSubproblem{f, 2.0, scalar(1.0)}, SgdOptions{100, 7.0, std::nullopt}, s), RecipeViolation);
  EXPECT_THROW(sgd_prox(ProxSubproblem{f, 2.0, scalar(1.0)}, SgdOptions{4, 8.0, std::nullopt}, s), RecipeViolation);
}

TEST(Reg, HandStep) {
  const SaddleObjective F = toy_saddle();
  std::vector<std::pair<double, double>> seen;
  reg(SaddleSubproblem(F), 1.0, scalar(1), scalar(1), 1, [](std::int64_t) { return 1.0 / std::sqrt(2.0); },
      [&](std::int64_t, const Vector& x, const Vector& y) { seen.emplace_back(x(0), y(0)); });
  ASSERT_EQ(seen.size(), 2u);
  // Oracle: evaluate both prox steps in closed form. With c = 1/eta + mu,
  // the anchored step is u+ = (u/eta - G(u^) + mu u^) / c coordinatewise.
  const double eta = 1.0 / std::sqrt(2.0), mu = 1.0;
  const double xh = 1 - eta * 2, yh = 1 - eta * 0;
  const double gx = xh + yh, gy = yh - xh;
  const double c = 1.0 / eta + mu;
  const double x1 = (1.0 / eta - gx + mu * xh) / c, y1 = (1.0 / eta - gy + mu * yh) / c;
  EXPECT_NEAR(seen[1].first, x1, 1e-14);
  EXPECT_NEAR(seen[1].second, y1, 1e-14);
  EXPECT_NEAR(seen[1].first, 0.1716, 1e-4);
  EXPECT_NEAR(seen[1].second, 0.4142, 1e-4);
}

TEST(Reg, LinearRateOnToySaddle) {
  const SaddleObjective F = toy_saddle();
  const double L = std::sqrt(2.0);
  reg(SaddleSubproblem(F), 1.0, scalar(1), scalar(1), 50, [L](std::int64_t) { return 1.0 / L; },
      [&](std::int64_t t, const Vector& x, const Vector& y) {
        const double d = x.squaredNorm() + y.squaredNorm();
        EXPECT_LE(d, std::pow(1.0 + 1.0 / L, -static_cast<double>(t)) * 2.0) << "t=" << t;
      });
}

TEST(Reg, FixedPointAtSaddle) {
  const SaddleInstance s = gen_saddle(3, 3, 4.0, 1.0, 1.0, 17);
  const SaddleSolverOutput out =
      reg(SaddleSubproblem(s.objective()), 1.0, s.x_star, s.y_star, 20, [](std::int64_t) { return 0.25; });
  EXPECT_NEAR((out.last.x() - s.x_star).norm(), 0.0, 1e-12);
  EXPECT_NEAR((out.last.y() - s.y_star).norm(), 0.0, 1e-12);
  EXPECT_EQ(out.sfo_calls, 40);
}

TEST(Reg, RejectsLongStep) {
  const SaddleObjective F = toy_saddle();
  EXPECT_THROW(reg(SaddleSubproblem(F), 1.0, scalar(1), scalar(1), 5, [](std::int64_t) { return 1.0; }),
               RecipeViolation);
}

TEST(Sreg, ZeroNoiseMatchesReg) {
  const SaddleInstance s = gen_saddle(4, 4, 5.0, 1.0, 1.0, 3);
  const SaddleObjective F = s.objective();
  const Vector x0 = random_feasible_point(F.setX, 3, 0), y0 = random_feasible_point(F.setY, 3, 1);
  const SregSchedule sch = sreg_schedule(F.L, 1.0);
  OracleStream stream(5);
  const SaddleSolverOutput a = sreg(SaddleSubproblem(F), 1.0, x0, y0, 120, stream);
  const SaddleSolverOutput b =
      reg(SaddleSubproblem(F), 1.0, x0, y0, 120, [&](std::int64_t t) { return sch.eta(t); });
  EXPECT_EQ(a.last.coords, b.last.coords);
  EXPECT_EQ(a.ergodic.coords, b.ergodic.coords);
  EXPECT_EQ(a.sfo_calls, 240);
}

TEST(Sreg, DeterministicBoundAtFourT0) {
  const SaddleInstance s = gen_saddle(5, 5, 8.0, 1.0, 1.0, 4);
  const SaddleObjective F = s.objective();
  const Vector x0 = random_feasible_point(F.setX, 4, 0), y0 = random_feasible_point(F.setY, 4, 1);
  const double t0 = sreg_schedule(F.L, 1.0).t0;
  EXPECT_EQ(t0, 32.0);
  OracleStream stream(1);
  const SaddleSolverOutput out = sreg(SaddleSubproblem(F), 1.0, x0, y0, static_cast<std::int64_t>(4 * t0), stream);
  EXPECT_LE(s.dist_sq(out.last.x(), out.last.y()), 6.0 / 16.0 * s.dist_sq(x0, y0));
}

TEST(SregRestarted, EpochCountAndZeroNoiseBudget) {
  const RestartPlan p = sreg_restart_plan(4.0, 1.0, 0.0, std::ldexp(1.0, -10), 1.0);
  EXPECT_EQ(p.epochs, 10);
  for (std::int64_t T : p.steps) EXPECT_EQ(T, static_cast<std::int64_t>(6 * p.t0));
}

TEST(SregRestarted, HalvesPerEpochWithoutNoise) {
  const SaddleInstance s = gen_saddle(4, 4, 6.0, 1.0, 1.0, 8);
  const SaddleObjective F = s.objective();
  const Vector x0 = random_feasible_point(F.setX, 8, 0), y0 = random_feasible_point(F.setY, 8, 1);
  const double R2 = s.dist_sq(x0, y0);
  OracleStream stream(2);
  std::vector<double> d;
  sreg_restarted(SaddleSubproblem(F), 1.0, x0, y0, R2 / 256, R2, stream,
                 [&](std::int64_t, const Vector& x, const Vector& y, std::int64_t) { d.push_back(s.dist_sq(x, y)); });
  ASSERT_EQ(d.size(), 9u);
  for (std::size_t e = 1; e < d.size(); ++e) EXPECT_LE(d[e], 0.5 * d[e - 1]) << "epoch " << e;
}

TEST(SregRestarted, SfoWithinComplexityEnvelope) {
  const double mu = 1.0, L = 3.0, sigma = 0.5;
  const SaddleInstance s = gen_saddle(2, 2, L, mu, mu, 9);
  const SaddleObjective F = s.objective(sigma);
  const Vector x0 = Vector::Zero(2), y0 = Vector::Zero(2);
  const double R2 = s.dist_sq(x0, y0);
  for (double eps : {R2 / 4, R2 / 16, R2 / 64}) {
    OracleStream stream(3);
    const SaddleSolverOutput out = sreg_restarted(SaddleSubproblem(F), mu, x0, y0, eps, R2, stream);
    const RestartPlan p = sreg_restart_plan(L, mu, sigma, eps, R2);
    std::int64_t planned = 0;
    for (std::int64_t T : p.steps) planned += 2 * T;
    EXPECT_EQ(out.sfo_calls, planned);
    const double envelope = p.t0 * static_cast<double>(p.epochs) + sigma * sigma / (mu * mu * eps);
    EXPECT_LE(static_cast<double>(out.sfo_calls), 1e5 * envelope);
  }
}

TEST(SregRestarted, RejectsNonpositiveTarget) {
  const SaddleObjective F = toy_saddle();
  OracleStream s(1);
  EXPECT_THROW(sreg_restarted(SaddleSubproblem(F), 1.0, scalar(1), scalar(1), 0.0, 1.0, s), ParameterError);
}

TEST(SregAsym, CertificateFormula) {
  AsymOptions o;
  o.mu_X = 1.0;
  o.mu_Y = 4.0;
  o.T = 8;
  o.eta_bar = 0.25;
  o.mu_X_upper = 1.0;
  o.mu_X_lower = 1.0;
  o.D_Y = 1.0;
  const InexactnessCertificate c = asym_certificate(o, 0.0);
  EXPECT_NEAR(c.eps, 4.0 / (std::pow(1.25, 8) - 1.0), 1e-14);
  EXPECT_NEAR(c.eps, 0.80638, 1e-5);
  EXPECT_DOUBLE_EQ(c.alpha - c.eps_prime, 1.0);
  EXPECT_EQ(c.delta, 0.0);
  const InexactnessCertificate n = asym_certificate(o, 0.3);
  EXPECT_DOUBLE_EQ(n.alpha - n.eps_prime, 1.0);
}

TEST(SregAsym, EqualModuliViolateThePrecondition) {
  const SaddleObjective F = toy_saddle();
  AsymOptions o;
  o.mu_X = 0.5;
  o.mu_Y = 0.5;
  o.T = 10;
  o.eta_bar = 0.1;
  o.mu_X_upper = 0.5;
  o.mu_X_lower = 0.5;
  o.D_Y = 20.0;
  OracleStream stream(1);
  EXPECT_THROW(sreg_asym(SaddleSubproblem(F), o, scalar(1), scalar(1), stream), RecipeViolation);
}

TEST(SregAsym, EqualAnchorsMergeIntoOneProx) {
  // Separate x and y anchors with a shared weight are the joint anchored step.
  const FeasibleSet X = FeasibleSet::ball(2, 1.0), Y = FeasibleSet::ball(3, 2.0);
  const Vector cx = Vector::LinSpaced(2, -0.3, 0.4), cy = Vector::LinSpaced(3, 0.1, 0.9);
  const Vector gx = Vector::LinSpaced(2, 1.0, -2.0), gy = Vector::LinSpaced(3, 0.5, 3.0);
  const Vector ax = Vector::LinSpaced(2, 0.2, 0.1), ay = Vector::LinSpaced(3, -0.4, 0.0);
  const double eta = 0.3, mu = 0.7;
  const Vector px = prox_step(X, eta, cx, gx, {Anchor{mu, ax}});
  const Vector py = prox_step(Y, eta, cy, gy, {Anchor{mu, ay}});
  Vector c(5), g(5), a(5);
  c << cx, cy;
  g << gx, gy;
  a << ax, ay;
  const Vector pz = prox_step(FeasibleSet::product(X, Y), eta, c, g, {Anchor{mu, a}});
  EXPECT_NEAR((pz.head(2) - px).norm(), 0.0, 1e-15);
  EXPECT_NEAR((pz.tail(3) - py).norm(), 0.0, 1e-15);
}

TEST(SregAsym, ZeroNoiseUsesCapAndIsReproducible) {
  const SaddleInstance s = gen_saddle(3, 3, 4.0, 0.2, 1.0, 21);
  const SaddleObjective F = s.objective();
  AsymOptions o;
  o.mu_X = 0.2;
  o.mu_Y = 1.0;
  o.T = 60;
  o.eta_bar = 0.1;
  o.mu_X_upper = 0.25;
  o.mu_X_lower = 0.2;
  o.D_Y = *F.D_Y;
  EXPECT_EQ(asym_stepsize(o, 0.0), 0.1);
  const Vector x0 = random_feasible_point(F.setX, 21, 0), y0 = random_feasible_point(F.setY, 21, 1);
  OracleStream a(1), b(1);
  const SaddleSolverOutput r1 = sreg_asym(SaddleSubproblem(F), o, x0, y0, a);
  const SaddleSolverOutput r2 = sreg_asym(SaddleSubproblem(F), o, x0, y0, b);
  EXPECT_EQ(r1.last.coords, r2.last.coords);
  EXPECT_EQ(r1.sfo_calls, 120);
  EXPECT_LT(s.dist_sq(r1.last.x(), r1.last.y()), s.dist_sq(x0, y0));
}

TEST(Pow1pMinusOne, MatchesDirectFormula) {
  EXPECT_NEAR(pow1p_minus_one(0.25, 8), std::pow(1.25, 8) - 1, 1e-13);
  // (1 + x)^3 - 1 = 3x + 3x^2 + x^3
  EXPECT_NEAR(pow1p_minus_one(1e-12, 3), 3e-12 + 3e-24, 1e-27);
}
