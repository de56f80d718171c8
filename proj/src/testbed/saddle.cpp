#include <algorithm>
#include <cmath>
#include <random>

#include "ckit/core/oracle.hpp"
#include "ckit/testbed/testbed.hpp"

namespace ckit {

double SaddleInstance::value(const Vector& x, const Vector& y) const {
  return 0.5 * mu_p * x.squaredNorm() + x.dot(B * y) - 0.5 * mu_d * y.squaredNorm() + c.dot(x) + d.dot(y);
}

void SaddleInstance::operator_into(const Vector& x, const Vector& y, Vector& gx, Vector& gy) const {
  gx.noalias() = B * y;
  gx += mu_p * x + c;
  gy.noalias() = -(B.transpose() * x);
  gy += mu_d * y - d;
}

SaddleObjective SaddleInstance::objective(double sigma) const {
  SaddleObjective F;
  auto self = std::make_shared<const SaddleInstance>(*this);
  F.value = [self](const Vector& x, const Vector& y) { return self->value(x, y); };
  F.grad_x = [self](const Vector& x, const Vector& y) -> Vector { return self->mu_p * x + self->B * y + self->c; };
  F.grad_y = [self](const Vector& x, const Vector& y) -> Vector {
    return self->B.transpose() * x - self->mu_d * y + self->d;
  };
  F.operator_into = [self](const Vector& x, const Vector& y, Vector& gx, Vector& gy) {
    self->operator_into(x, y, gx, gy);
  };
  F.L = L;
  F.mu_p = mu_p;
  F.mu_d = mu_d;
  F.setX = FeasibleSet::ball(dx(), rx);
  F.setY = FeasibleSet::ball(dy(), ry);
  F.sigma = sigma;
  F.D_Y = 2.0 * ry;
  F.validate();
  return F;
}

Vector SaddleInstance::inner_argmax(const Vector& x) const {
  require_dim(x.size(), dx(), "inner_argmax x");
  Vector y = (B.transpose() * x + d) / mu_d;
  const double n = y.norm();
  if (n > ry) y *= ry / n;
  return y;
}

double SaddleInstance::primal_value(const Vector& x) const { return value(x, inner_argmax(x)); }

double SaddleInstance::gap(const Vector& x) const {
  const Vector v = (B.transpose() * x + d) / mu_d;
  if (v.norm() <= ry) {
    const Vector e = x - x_star;
    return std::max(0.0, 0.5 * e.dot(H * e));
  }
  return std::max(0.0, primal_value(x) - f_star);
}

double SaddleInstance::composite(const Vector& x_tilde, const Vector& y, double weight) const {
  return gap(x_tilde) + weight * (inner_argmax(x_tilde) - y).squaredNorm();
}

SaddleInstance gen_saddle(Index dx, Index dy, double L, double mu_p, double mu_d, std::uint64_t seed,
                          double offset_scale) {
  if (dx < 1 || dy < 1) throw ParameterError("gen_saddle: dimensions must be >= 1");
  if (!(mu_d > 0) || !(mu_p >= 0) || mu_p > mu_d) throw ParameterError("gen_saddle: need 0 <= mu_p <= mu_d, mu_d > 0");
  if (!(L >= mu_d)) throw ParameterError("gen_saddle: need L >= max(mu_p, mu_d)");
  if (mu_p == 0 && dx > dy) throw ParameterError("gen_saddle: mu_p = 0 needs dx <= dy");
  if (!(offset_scale >= 0)) throw ParameterError("gen_saddle: offset_scale must be >= 0");

  // Each singular value b of B gives a 2x2 Jacobian block [[mu_p, b], [-b, mu_d]]
  // whose top singular value is L exactly when b^2 = (L - mu_d)(L + mu_p).
  const double b_top = std::sqrt((L - mu_d) * (L + mu_p));

  for (int attempt = 0; attempt < 5; ++attempt) {
    SplitMix64 eng(derive_seed(seed, {0x5add1eULL, static_cast<std::uint64_t>(attempt)}));
    std::normal_distribution<double> normal(0.0, 1.0);
    SaddleInstance inst;
    inst.L = L;
    inst.mu_p = mu_p;
    inst.mu_d = mu_d;
    inst.B.resize(dx, dy);
    for (Index i = 0; i < dx; ++i)
      for (Index j = 0; j < dy; ++j) inst.B(i, j) = normal(eng);
    const double bn = Eigen::JacobiSVD<Matrix>(inst.B).singularValues()(0);
    inst.B *= bn > 0 ? b_top / bn : 0.0;
    inst.c.resize(dx);
    inst.d.resize(dy);
    for (Index i = 0; i < dx; ++i) inst.c[i] = offset_scale * normal(eng);
    for (Index j = 0; j < dy; ++j) inst.d[j] = offset_scale * normal(eng);

    inst.H = mu_p * Matrix::Identity(dx, dx) + inst.B * inst.B.transpose() / mu_d;
    Eigen::LDLT<Matrix> ldlt(inst.H);
    const Vector diag = ldlt.vectorD();
    if (ldlt.info() != Eigen::Success || diag.minCoeff() <= 1e-10 * std::max(1.0, diag.maxCoeff())) continue;
    inst.x_star = ldlt.solve(-inst.c - inst.B * inst.d / mu_d);
    inst.y_star = (inst.B.transpose() * inst.x_star + inst.d) / mu_d;
    inst.rx = std::max(2.0 * inst.x_star.norm(), 1.0);
    inst.ry = std::max(2.0 * inst.y_star.norm(), 1.0);
    inst.f_star = inst.value(inst.x_star, inst.y_star);
    return inst;
  }
  throw ParameterError("gen_saddle: reduced system singular after 5 attempts");
}

}  // namespace ckit
