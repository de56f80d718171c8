#pragma once

#include <string>

#include "ckit/core/objective.hpp"

namespace ckit {

// f(x) = 1/2 x'Ax - b'x on Ball(0, R) with x* = A^{-1} b at half the radius.
struct QuadraticInstance {
  Matrix A;
  Vector b;
  double L = 0;
  double mu = 0;       // modulus reported to solvers
  double radius = 0;
  Vector x_star;
  double f_star = 0;
  Vector eigenvalues;  // ascending
  Matrix eigenvectors;

  Index dim() const { return b.size(); }
  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  // f(x) - f*, evaluated as 1/2 (x - x*)'A(x - x*) to avoid cancellation.
  double gap(const Vector& x) const;
  SmoothObjective objective(double sigma = 0.0) const;
};

// Spectrum: lambda_1 = mu (floored at 1e-6 when mu = 0), lambda_d = L, the rest
// log-uniform in between. ||x*|| = scale.
QuadraticInstance gen_quadratic(Index d, double L, double mu, std::uint64_t seed, double scale = 1.0);

// argmin over the ball of f(u) + (beta/2)||u - center||^2. When the
// unconstrained minimizer leaves the ball, the boundary multiplier is found
// from the secular equation in the eigenbasis.
Vector exact_prox(const QuadraticInstance& inst, const Vector& center, double beta);

// F(x,y) = (mu_p/2)|x|^2 + x'By - (mu_d/2)|y|^2 + c'x + d'y on Ball(0,rx) x Ball(0,ry).
struct SaddleInstance {
  Matrix B;
  Vector c, d;
  double L = 0;
  double mu_p = 0;
  double mu_d = 0;
  double rx = 0, ry = 0;
  Vector x_star, y_star;
  double f_star = 0;
  Matrix H;  // Hessian of the primal function f(x) = max_y F(x, y) where y*(x) is interior

  Index dx() const { return c.size(); }
  Index dy() const { return d.size(); }
  double value(const Vector& x, const Vector& y) const;
  void operator_into(const Vector& x, const Vector& y, Vector& gx, Vector& gy) const;
  SaddleObjective objective(double sigma = 0.0) const;

  // argmax_{y in Y} F(x, y). The y-part is an isotropic concave quadratic, so
  // this is the projection of (B'x + d)/mu_d onto Y.
  Vector inner_argmax(const Vector& x) const;
  double primal_value(const Vector& x) const;
  double gap(const Vector& x) const;
  // f(x~) - f* + weight ||y~*(x~) - y||^2
  double composite(const Vector& x_tilde, const Vector& y, double weight) const;
  double dist_sq(const Vector& x, const Vector& y) const {
    return (x - x_star).squaredNorm() + (y - y_star).squaredNorm();
  }
};

// B is scaled so the Jacobian of G has spectral norm exactly L (so ||B|| <= L).
// c and d are Gaussian times offset_scale. mu_p = 0 needs dx <= dy.
SaddleInstance gen_saddle(Index dx, Index dy, double L, double mu_p, double mu_d, std::uint64_t seed,
                          double offset_scale = 1.0);

// Flat binary form: "CKIT1", then little-endian f64 fields, matrices row-major.
void save_instance(const std::string& path, const QuadraticInstance& inst);
void save_instance(const std::string& path, const SaddleInstance& inst);
QuadraticInstance load_quadratic(const std::string& path);
SaddleInstance load_saddle(const std::string& path);

}  // namespace ckit
