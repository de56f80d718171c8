#include <algorithm>
#include <cmath>
#include <random>

#include "ckit/core/oracle.hpp"
#include "ckit/testbed/testbed.hpp"

namespace ckit {

double QuadraticInstance::value(const Vector& x) const { return 0.5 * x.dot(A * x) - b.dot(x); }

Vector QuadraticInstance::gradient(const Vector& x) const { return A * x - b; }

double QuadraticInstance::gap(const Vector& x) const {
  const Vector e = x - x_star;
  return std::max(0.0, 0.5 * e.dot(A * e));
}

SmoothObjective QuadraticInstance::objective(double sigma) const {
  SmoothObjective f;
  // The closures hold a copy so the objective can outlive the instance.
  auto self = std::make_shared<const QuadraticInstance>(*this);
  f.value = [self](const Vector& x) { return self->value(x); };
  f.gradient = [self](const Vector& x) { return self->gradient(x); };
  f.exact_prox = [self](const Vector& c, double beta) { return exact_prox(*self, c, beta); };
  f.L = L;
  f.mu = mu;
  f.set = FeasibleSet::ball(dim(), radius);
  f.sigma = sigma;
  f.validate();
  return f;
}

QuadraticInstance gen_quadratic(Index d, double L, double mu, std::uint64_t seed, double scale) {
  if (d < 1) throw ParameterError("gen_quadratic: d must be >= 1");
  if (!(L > 0) || !(mu >= 0) || mu > L) throw ParameterError("gen_quadratic: need 0 <= mu <= L, L > 0");
  if (!(scale > 0)) throw ParameterError("gen_quadratic: scale must be positive");
  SplitMix64 eng(derive_seed(seed, {0x9a11ULL}));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  const double lo = std::max(mu, 1e-6);
  Vector lam(d);
  for (Index i = 0; i < d; ++i) lam[i] = std::exp(std::log(lo) + (std::log(L) - std::log(lo)) * unif(eng));
  lam[0] = lo;
  lam[d - 1] = L;
  std::sort(lam.data(), lam.data() + d);

  Matrix G(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) G(i, j) = normal(eng);
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ();
  // Sign fix makes Q Haar-distributed.
  for (Index j = 0; j < d; ++j)
    if (qr.matrixQR()(j, j) < 0) Q.col(j) *= -1;

  QuadraticInstance inst;
  inst.A = Q * lam.asDiagonal() * Q.transpose();
  inst.A = 0.5 * (inst.A + inst.A.transpose());
  inst.eigenvalues = lam;
  inst.eigenvectors = Q;
  inst.L = L;
  inst.mu = mu;
  Vector x(d);
  for (Index i = 0; i < d; ++i) x[i] = normal(eng);
  inst.x_star = scale * x / x.norm();
  inst.b = inst.A * inst.x_star;
  inst.radius = 2.0 * scale;
  inst.f_star = inst.value(inst.x_star);
  return inst;
}

Vector exact_prox(const QuadraticInstance& inst, const Vector& center, double beta) {
  if (!(beta > 0)) throw ParameterError("exact_prox: beta must be positive");
  require_dim(center.size(), inst.dim(), "exact_prox center");
  const Matrix& Q = inst.eigenvectors;
  const Vector& lam = inst.eigenvalues;
  const Vector w = Q.transpose() * (inst.b + beta * center);
  auto norm_at = [&](double nu) { return (w.array() / (lam.array() + beta + nu)).matrix().norm(); };
  const double R = inst.radius;
  double nu = 0.0;
  if (norm_at(0.0) > R) {
    // ||x(nu)|| decreases in nu; bracket then bisect.
    double hi = 1.0;
    while (norm_at(hi) > R) hi *= 2.0;
    double lo = 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (norm_at(mid) > R ? lo : hi) = mid;
    }
    nu = hi;
  }
  Vector x = Q * (w.array() / (lam.array() + beta + nu)).matrix();
  const double n = x.norm();
  if (n > R) x *= R / n;
  return x;
}

}  // namespace ckit
