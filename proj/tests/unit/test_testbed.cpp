#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ckit/subsolvers/subsolvers.hpp"
#include "ckit/testbed/testbed.hpp"

using namespace ckit;

namespace {

QuadraticInstance scalar_quadratic(double a, double radius) {
  QuadraticInstance q;
  q.A = Matrix::Constant(1, 1, a);
  q.b = Vector::Zero(1);
  q.L = a;
  q.mu = a;
  q.radius = radius;
  q.x_star = Vector::Zero(1);
  q.f_star = 0.0;
  q.eigenvalues = Vector::Constant(1, a);
  q.eigenvectors = Matrix::Identity(1, 1);
  return q;
}

// F(x, y) = xy - y^2/2 on [-10, 10]^2 (as balls).
SaddleInstance scalar_saddle() {
  SaddleInstance s;
  s.B = Matrix::Constant(1, 1, 1.0);
  s.c = Vector::Zero(1);
  s.d = Vector::Zero(1);
  s.L = std::sqrt(2.0);
  s.mu_p = 0.0;
  s.mu_d = 1.0;
  s.rx = s.ry = 10.0;
  s.x_star = Vector::Zero(1);
  s.y_star = Vector::Zero(1);
  s.H = Matrix::Constant(1, 1, 1.0);
  return s;
}

std::string temp_path(const char* name) { return (std::filesystem::temp_directory_path() / name).string(); }

}  // namespace

TEST(Quadratic, ScalarInstance) {
  const QuadraticInstance q = gen_quadratic(1, 2.0, 2.0, 1);
  EXPECT_NEAR(q.A(0, 0), 2.0, 1e-14);
  const Vector x = Vector::Constant(1, 0.3);
  // f(x) = x^2 - b x
  EXPECT_NEAR(q.value(x), 0.09 - q.b(0) * 0.3, 1e-14);
}

TEST(Quadratic, SpectrumEndpointsAndOptimum) {
  for (Index d : {2, 10, 50}) {
    const QuadraticInstance q = gen_quadratic(d, 7.0, 0.05, 10 + d, 2.0);
    const Eigen::SelfAdjointEigenSolver<Matrix> es(q.A);
    EXPECT_NEAR(es.eigenvalues()(0), 0.05, 1e-6);
    EXPECT_NEAR(es.eigenvalues()(d - 1), 7.0, 1e-6);
    EXPECT_NEAR(q.value(q.x_star), q.f_star, 1e-8);
    EXPECT_LE(q.gradient(q.x_star).norm(), 1e-8);
    EXPECT_NEAR(q.x_star.norm(), 2.0, 1e-12);
    EXPECT_NEAR(q.radius, 4.0, 1e-12);
    const Vector x = Vector::LinSpaced(d, -1, 1);
    EXPECT_NEAR(q.gap(x), q.value(x) - q.f_star, 1e-9 * (1 + std::abs(q.f_star)));
  }
  const QuadraticInstance flat = gen_quadratic(5, 1.0, 0.0, 3);
  EXPECT_EQ(flat.mu, 0.0);
  EXPECT_NEAR(flat.eigenvalues(0), 1e-6, 1e-15);
}

TEST(Quadratic, ExactProxScalar) {
  const QuadraticInstance q = scalar_quadratic(2.0, 10.0);
  EXPECT_NEAR(exact_prox(q, Vector::Constant(1, 1.0), 2.0)(0), 0.5, 1e-14);
  EXPECT_NEAR(exact_prox(q, Vector::Constant(1, 1.0), 1e12)(0), 1.0, 1e-11);
}

TEST(Quadratic, ExactProxMatchesLongSgd) {
  const QuadraticInstance q = gen_quadratic(8, 1.0, 0.0, 5);
  const SmoothObjective f = q.objective();
  const Vector center = random_feasible_point(f.set, 5, 0);
  const double beta = 1.0;
  OracleStream s(1);
  const SolverOutput out = sgd_prox(ProxSubproblem{f, beta, center}, SgdOptions{1000, 8.0, std::nullopt}, s);
  EXPECT_LE((out.last - exact_prox(q, center, beta)).norm(), 1e-4);
}

TEST(Quadratic, ExactProxOnBoundarySatisfiesFixedPoint) {
  const QuadraticInstance q = gen_quadratic(6, 4.0, 0.1, 6, 1.0);
  const SmoothObjective f = q.objective();
  const Vector center = 20.0 * Vector::Ones(6);  // pulls the solution onto the sphere
  const double beta = 3.0;
  const Vector u = exact_prox(q, center, beta);
  EXPECT_NEAR(u.norm(), q.radius, 1e-9);
  const Vector g = q.gradient(u) + beta * (u - center);
  const Vector fixed = f.set.project(u - 0.01 * g);
  EXPECT_LE((fixed - u).norm(), 1e-9);
}

TEST(Saddle, ScalarPrimalFunction) {
  const SaddleInstance s = scalar_saddle();
  for (double x : {-3.0, -0.5, 0.0, 1.25, 4.0}) {
    const Vector xv = Vector::Constant(1, x);
    EXPECT_NEAR(s.inner_argmax(xv)(0), x, 1e-15);
    EXPECT_NEAR(s.primal_value(xv), 0.5 * x * x, 1e-14);
    EXPECT_NEAR(s.gap(xv), 0.5 * x * x, 1e-14);
  }
}

TEST(Saddle, PrimalValueMatchesTernarySearch) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SaddleInstance s = gen_saddle(1, 1, 3.0, 0.5, 1.5, seed, 2.0);
    const Vector x = Vector::Constant(1, 0.7 * s.rx * std::cos(static_cast<double>(seed)));
    double lo = -s.ry, hi = s.ry;
    for (int it = 0; it < 10000 && hi - lo > 1e-13; ++it) {
      const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
      if (s.value(x, Vector::Constant(1, m1)) < s.value(x, Vector::Constant(1, m2))) {
        lo = m1;
      } else {
        hi = m2;
      }
    }
    const double oracle = s.value(x, Vector::Constant(1, 0.5 * (lo + hi)));
    EXPECT_NEAR(s.primal_value(x), oracle, 1e-6) << "seed " << seed;
  }
}

TEST(Saddle, OptimalityConditions) {
  for (Index d : {1, 4, 20}) {
    const SaddleInstance s = gen_saddle(d, d + 1, 5.0, 0.0, 1.0, 60 + d);
    Vector gx, gy;
    s.operator_into(s.x_star, s.y_star, gx, gy);
    EXPECT_LE(std::sqrt(gx.squaredNorm() + gy.squaredNorm()), 1e-8 * (1 + s.c.norm() + s.d.norm()));
    // Primal gradient at x*: mu_p x* + c + B y*(x*) = 0.
    const Vector grad_f = s.mu_p * s.x_star + s.c + s.B * s.inner_argmax(s.x_star);
    EXPECT_LE(grad_f.norm(), 1e-8 * (1 + s.c.norm()));
    EXPECT_NEAR(s.primal_value(s.x_star), s.f_star, 1e-9 * (1 + std::abs(s.f_star)));
    EXPECT_LT(s.x_star.norm(), s.rx);
    EXPECT_LT(s.y_star.norm(), s.ry);
  }
}

TEST(Saddle, UnitInstanceHasOriginSolution) {
  const SaddleInstance s = gen_saddle(1, 1, std::sqrt(2.0), 1.0, 1.0, 7, 0.0);
  EXPECT_NEAR(std::abs(s.B(0, 0)), 1.0, 1e-12);
  EXPECT_EQ(s.x_star.norm(), 0.0);
  EXPECT_EQ(s.y_star.norm(), 0.0);
}

TEST(Saddle, LipschitzConstantDominatesSampledRatios) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const SaddleInstance s = gen_saddle(4, 6, 3.0, 0.2, 1.0, seed);
    Matrix J(10, 10);
    J << s.mu_p * Matrix::Identity(4, 4), s.B, -s.B.transpose(), s.mu_d * Matrix::Identity(6, 6);
    const double jac = Eigen::JacobiSVD<Matrix>(J).singularValues()(0);
    EXPECT_LE(jac, s.L * (1 + 1e-12));
    const SaddleObjective F = s.objective();
    const ModuliAudit a = audit_moduli(F, 1000, seed);
    EXPECT_TRUE(a.ok);
    EXPECT_LE(a.max_lipschitz_ratio * s.L, jac * (1 + 1e-12));
  }
}

TEST(Saddle, RejectsUnsolvableShapes) {
  EXPECT_THROW(gen_saddle(5, 3, 2.0, 0.0, 1.0, 1), ParameterError);
  EXPECT_THROW(gen_saddle(2, 2, 0.5, 0.0, 1.0, 1), ParameterError);
}

TEST(Serialize, RoundTripIsExact) {
  const QuadraticInstance q = gen_quadratic(7, 3.0, 0.1, 70);
  const std::string qp = temp_path("ckit_q.bin");
  save_instance(qp, q);
  const QuadraticInstance q2 = load_quadratic(qp);
  EXPECT_EQ(q.A, q2.A);
  EXPECT_EQ(q.b, q2.b);
  EXPECT_EQ(q.x_star, q2.x_star);
  EXPECT_EQ(q.eigenvectors, q2.eigenvectors);
  EXPECT_EQ(q.f_star, q2.f_star);

  const SaddleInstance s = gen_saddle(3, 5, 4.0, 0.3, 1.0, 71);
  const std::string sp = temp_path("ckit_s.bin");
  save_instance(sp, s);
  const SaddleInstance s2 = load_saddle(sp);
  EXPECT_EQ(s.B, s2.B);
  EXPECT_EQ(s.H, s2.H);
  EXPECT_EQ(s.y_star, s2.y_star);
  EXPECT_EQ(s.ry, s2.ry);

  EXPECT_THROW(load_saddle(qp), ConfigError);
  EXPECT_THROW(load_quadratic(sp), ConfigError);
  {
    std::ofstream(temp_path("ckit_bad.bin")) << "not an instance";
  }
  EXPECT_THROW(load_quadratic(temp_path("ckit_bad.bin")), ConfigError);
  std::filesystem::resize_file(sp, 40);
  EXPECT_THROW(load_saddle(sp), ConfigError);
  std::remove(qp.c_str());
  std::remove(sp.c_str());
  std::remove(temp_path("ckit_bad.bin").c_str());
}
