#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ckit/core/feasible_set.hpp"
#include "ckit/core/objective.hpp"
#include "ckit/core/oracle.hpp"
#include "ckit/core/prox.hpp"

using namespace ckit;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

// Projection of p onto {x >= 0, x1 + x2 = s} by enumerating the KKT cases:
// both coordinates free (on the line) or one of them pinned at zero.
Vector simplex2_kkt(const Vector& p, double s) {
  Vector best;
  double best_d = INFINITY;
  auto consider = [&](Vector c) {
    if (c(0) < -1e-15 || c(1) < -1e-15) return;
    const double d = (c - p).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  };
  const double shift = (s - p(0) - p(1)) / 2.0;
  consider(vec({p(0) + shift, p(1) + shift}));
  consider(vec({s, 0.0}));
  consider(vec({0.0, s}));
  return best;
}

SaddleObjective bilinear_xy() {
  SaddleObjective F;
  F.value = [](const Vector& x, const Vector& y) { return x(0) * y(0); };
  F.grad_x = [](const Vector&, const Vector& y) { return y; };
  F.grad_y = [](const Vector& x, const Vector&) { return x; };
  F.L = 1.0;
  F.mu_p = 0.0;
  F.mu_d = 0.0;
  F.setX = FeasibleSet::ball(1, 10.0);
  F.setY = FeasibleSet::ball(1, 10.0);
  return F;
}

}  // namespace

TEST(FeasibleSet, BallScalesRadially) {
  const Vector p = FeasibleSet::ball(2, 1.0).project(vec({3, 4}));
  EXPECT_NEAR(p(0), 0.6, 1e-15);
  EXPECT_NEAR(p(1), 0.8, 1e-15);
}

TEST(FeasibleSet, BoxClampsComponentwise) {
  const Vector p = FeasibleSet::box(vec({0, 0}), vec({1, 1})).project(vec({-1, 0.5}));
  EXPECT_EQ(p(0), 0.0);
  EXPECT_EQ(p(1), 0.5);
}

TEST(FeasibleSet, SimplexMatchesKktEnumeration) {
  const Vector p = FeasibleSet::simplex(2, 1.0).project(vec({2, 0}));
  EXPECT_NEAR(p(0), 1.0, 1e-15);
  EXPECT_NEAR(p(1), 0.0, 1e-15);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> n01;
  for (int i = 0; i < 500; ++i) {
    const Vector q = vec({3 * n01(rng), 3 * n01(rng)});
    const double s = 0.1 + std::abs(n01(rng));
    const Vector got = project_simplex(q, s);
    const Vector want = simplex2_kkt(q, s);
    EXPECT_NEAR((got - want).norm(), 0.0, 1e-12) << "case " << i;
  }
}

TEST(FeasibleSet, ProductProjectsBlocks) {
  const FeasibleSet set = FeasibleSet::product(FeasibleSet::ball(2, 1.0), FeasibleSet::box(vec({0}), vec({1})));
  const Vector p = set.project(vec({3, 4, 2}));
  EXPECT_NEAR(p(0), 0.6, 1e-15);
  EXPECT_NEAR(p(1), 0.8, 1e-15);
  EXPECT_EQ(p(2), 1.0);
  EXPECT_TRUE(set.contains(p));
}

TEST(FeasibleSet, DiameterOfBall) { EXPECT_DOUBLE_EQ(FeasibleSet::ball(3, 2.5).diameter(), 5.0); }

TEST(Prox, UnconstrainedGradientStep) {
  const Vector u = prox_step(FeasibleSet::ball(1, 10.0), 0.5, vec({0}), vec({1}));
  EXPECT_DOUBLE_EQ(u(0), -0.5);
}

TEST(Prox, AnchorAveragesWithCenter) {
  const Vector a = vec({2});
  const Vector u = prox_step(FeasibleSet::ball(1, 10.0), 1.0, vec({0}), vec({0}), {Anchor{1.0, a}});
  EXPECT_DOUBLE_EQ(u(0), 1.0);
}

TEST(Prox, ClipsToRadius) {
  const Vector u = prox_step(FeasibleSet::ball(1, 0.1), 0.5, vec({0}), vec({1}));
  EXPECT_NEAR(u(0), -0.1, 1e-15);
}

TEST(Prox, RejectsNonpositiveStep) {
  EXPECT_THROW(prox_step(FeasibleSet::ball(1, 1.0), 0.0, vec({0}), vec({1})), ParameterError);
}

TEST(SaddleOperator, Bilinear) {
  const Vector g = saddle_operator(bilinear_xy(), PrimalDualPoint(vec({1}), vec({2})));
  EXPECT_DOUBLE_EQ(g(0), 2.0);
  EXPECT_DOUBLE_EQ(g(1), -1.0);
}

TEST(SaddleOperator, StronglyConvexConcaveQuadratic) {
  const double mp = 0.3, md = 0.7;
  SaddleObjective F = bilinear_xy();
  F.mu_p = mp;
  F.mu_d = md;
  F.grad_x = [mp](const Vector& x, const Vector& y) { return Vector(mp * x + y); };
  F.grad_y = [md](const Vector& x, const Vector& y) { return Vector(x - md * y); };
  const Vector g = saddle_operator(F, PrimalDualPoint(vec({1.5}), vec({-2})));
  EXPECT_DOUBLE_EQ(g(0), mp * 1.5 - 2.0);
  EXPECT_DOUBLE_EQ(g(1), md * -2.0 - 1.5);
  const Vector g0 = saddle_operator(F, PrimalDualPoint(vec({0}), vec({0})));
  EXPECT_EQ(g0.norm(), 0.0);
}

TEST(Oracle, ZeroNoiseIsExactGradient) {
  SmoothObjective f;
  f.set = FeasibleSet::ball(3, 10.0);
  f.value = [](const Vector& x) { return 0.5 * x.squaredNorm(); };
  f.gradient = [](const Vector& x) { return Vector(1.7 * x); };
  const Vector x = vec({0.1, -0.2, 0.3});
  OracleStream s(9);
  const Vector g = sample_grad(f, x, s);
  for (Index i = 0; i < 3; ++i) EXPECT_EQ(g(i), 1.7 * x(i));
}

TEST(Oracle, MomentsWithinMonteCarloBands) {
  SmoothObjective f;
  f.set = FeasibleSet::ball(4, 10.0);
  f.value = [](const Vector& x) { return 0.5 * x.squaredNorm(); };
  f.gradient = [](const Vector& x) { return x; };
  f.sigma = 0.8;
  const Vector x = vec({0.5, -1, 2, 0});
  const int N = 100000;
  OracleStream s(11);
  Vector mean = Vector::Zero(4);
  double sq = 0;
  for (int i = 0; i < N; ++i) {
    const Vector n = sample_grad(f, x, s) - x;
    mean += n;
    sq += n.squaredNorm();
  }
  mean /= N;
  sq /= N;
  for (Index i = 0; i < 4; ++i) EXPECT_LE(std::abs(mean(i)), 4 * f.sigma / std::sqrt(double(N)));
  EXPECT_GE(sq, 0.95 * f.sigma * f.sigma);
  EXPECT_LE(sq, 1.05 * f.sigma * f.sigma);
}

TEST(Oracle, StreamsAreCounterBased) {
  OracleStream a(42), b(42);
  const Vector first = a.gaussian(5, 1.0);
  EXPECT_EQ(first, b.gaussian(5, 1.0));
  EXPECT_EQ(a.counter(), 1u);
  OracleStream c(42, 1);
  EXPECT_EQ(a.gaussian(5, 1.0), c.gaussian(5, 1.0));
  EXPECT_NE(a.split({1}).gaussian(5, 1.0), a.split({2}).gaussian(5, 1.0));
}

TEST(RandomFeasiblePoint, IsFeasibleAndDeterministic) {
  const FeasibleSet set = FeasibleSet::simplex(6, 2.0);
  const Vector p = random_feasible_point(set, 3, 7);
  EXPECT_TRUE(set.contains(p));
  EXPECT_EQ(p, random_feasible_point(set, 3, 7));
}
