#include "ckit/core/objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ckit/core/oracle.hpp"

namespace ckit {

void SmoothObjective::validate() const {
  if (!value || !gradient) throw ContractViolation("SmoothObjective: missing oracle");
  if (!(L > 0) || !(mu >= 0) || !(mu <= L)) throw ParameterError("SmoothObjective: need 0 <= mu <= L, L > 0");
  if (!(sigma >= 0)) throw ParameterError("SmoothObjective: sigma < 0");
}

void SaddleObjective::validate() const {
  if (!value || (!operator_into && (!grad_x || !grad_y))) throw ContractViolation("SaddleObjective: missing oracle");
  if (!(L > 0)) throw ParameterError("SaddleObjective: L must be positive");
  if (!(mu_d > 0)) throw ParameterError("SaddleObjective: mu_d must be positive");
  if (!(mu_p >= 0) || !(mu_p <= mu_d)) throw ParameterError("SaddleObjective: need 0 <= mu_p <= mu_d");
  if (!(sigma >= 0)) throw ParameterError("SaddleObjective: sigma < 0");
}

void saddle_operator_into(const SaddleObjective& prob, const Vector& x, const Vector& y, Vector& gx, Vector& gy) {
  require_dim(x.size(), prob.dx(), "saddle_operator x");
  require_dim(y.size(), prob.dy(), "saddle_operator y");
  if (prob.operator_into) {
    prob.operator_into(x, y, gx, gy);
  } else {
    gx = prob.grad_x(x, y);
    gy = -prob.grad_y(x, y);
  }
}

Vector saddle_operator(const SaddleObjective& prob, const PrimalDualPoint& z) {
  require(z.split == prob.dx(), "saddle_operator: split does not match problem");
  Vector x = z.x(), y = z.y(), gx, gy;
  saddle_operator_into(prob, x, y, gx, gy);
  Vector g(gx.size() + gy.size());
  g << gx, gy;
  return g;
}

namespace {

void fill_random(const FeasibleSet& set, SplitMix64& eng, Eigen::Ref<Vector> out) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, EuclideanBall>) {
          Vector dir(out.size());
          for (Index i = 0; i < dir.size(); ++i) dir[i] = normal(eng);
          const double r = s.radius * std::pow(unif(eng), 1.0 / static_cast<double>(out.size()));
          out = s.center + r * dir / std::max(dir.norm(), 1e-300);
        } else if constexpr (std::is_same_v<S, Box>) {
          for (Index i = 0; i < out.size(); ++i) out[i] = s.lower[i] + (s.upper[i] - s.lower[i]) * unif(eng);
        } else if constexpr (std::is_same_v<S, Simplex>) {
          std::exponential_distribution<double> expo(1.0);
          for (Index i = 0; i < out.size(); ++i) out[i] = expo(eng);
          out *= s.scale / out.sum();
        } else {
          const Index da = s.first->dim();
          fill_random(*s.first, eng, out.head(da));
          fill_random(*s.second, eng, out.tail(out.size() - da));
        }
      },
      set.shape());
}

}  // namespace

Vector random_feasible_point(const FeasibleSet& set, std::uint64_t seed, std::uint64_t index) {
  SplitMix64 eng(derive_seed(seed, {index, 0x5eedULL}));
  Vector out(set.dim());
  fill_random(set, eng, out);
  return set.project(out);
}

ModuliAudit audit_moduli(const SmoothObjective& prob, int pairs, std::uint64_t seed) {
  ModuliAudit a;
  a.min_convexity_slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < pairs; ++i) {
    const Vector u = random_feasible_point(prob.set, seed, 2 * i);
    const Vector v = random_feasible_point(prob.set, seed, 2 * i + 1);
    const double dist = (u - v).norm();
    if (dist == 0) continue;
    const Vector gu = prob.gradient(u);
    a.max_lipschitz_ratio = std::max(a.max_lipschitz_ratio, (gu - prob.gradient(v)).norm() / (prob.L * dist));
    const double lower = prob.value(u) + gu.dot(v - u) + 0.5 * prob.mu * dist * dist;
    const double scale = std::max({1.0, std::abs(prob.value(v)), prob.L * dist * dist});
    a.min_convexity_slack = std::min(a.min_convexity_slack, (prob.value(v) - lower) / scale);
  }
  a.ok = a.max_lipschitz_ratio <= 1 + 1e-9 && a.min_convexity_slack >= -1e-10;
  return a;
}

ModuliAudit audit_moduli(const SaddleObjective& prob, int pairs, std::uint64_t seed) {
  ModuliAudit a;
  a.min_convexity_slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < pairs; ++i) {
    const Vector x1 = random_feasible_point(prob.setX, seed, 4 * i);
    const Vector x2 = random_feasible_point(prob.setX, seed, 4 * i + 1);
    const Vector y1 = random_feasible_point(prob.setY, seed, 4 * i + 2);
    const Vector y2 = random_feasible_point(prob.setY, seed, 4 * i + 3);
    Vector g1x, g1y, g2x, g2y;
    saddle_operator_into(prob, x1, y1, g1x, g1y);
    saddle_operator_into(prob, x2, y2, g2x, g2y);
    const double dz = std::sqrt((x1 - x2).squaredNorm() + (y1 - y2).squaredNorm());
    if (dz > 0) {
      const double dg = std::sqrt((g1x - g2x).squaredNorm() + (g1y - g2y).squaredNorm());
      a.max_lipschitz_ratio = std::max(a.max_lipschitz_ratio, dg / (prob.L * dz));
    }
    // mu_p-convexity in x at fixed y1, mu_d-concavity in y at fixed x1
    const double dx2 = (x2 - x1).squaredNorm();
    const double dy2 = (y2 - y1).squaredNorm();
    const double f11 = prob.value(x1, y1);
    const double sx = prob.value(x2, y1) - (f11 + g1x.dot(x2 - x1) + 0.5 * prob.mu_p * dx2);
    // -grad_y F is g1y, so the concave upper model is F(x1,y1) - <g1y, y2-y1> - mu_d/2 |.|^2
    const double sy = (f11 - g1y.dot(y2 - y1) - 0.5 * prob.mu_d * dy2) - prob.value(x1, y2);
    const double scale = std::max({1.0, std::abs(f11), prob.L * (dx2 + dy2)});
    a.min_convexity_slack = std::min({a.min_convexity_slack, sx / scale, sy / scale});
  }
  a.ok = a.max_lipschitz_ratio <= 1 + 1e-9 && a.min_convexity_slack >= -1e-10;
  return a;
}

}  // namespace ckit
