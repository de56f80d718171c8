#pragma once

#include <functional>
#include <optional>

#include "ckit/core/feasible_set.hpp"

namespace ckit {

// f with smoothness L and strong-convexity modulus mu on `set`, observed
// through a gradient oracle with noise level sigma.
struct SmoothObjective {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  double L = 1.0;
  double mu = 0.0;
  FeasibleSet set = FeasibleSet::ball(1, 1.0);
  double sigma = 0.0;
  // Exact minimizer of f(u) + (beta/2)||u - center||^2 over set, when known.
  std::function<Vector(const Vector& center, double beta)> exact_prox;

  Index dim() const { return set.dim(); }
  void validate() const;
};

// F(x, y) convex (mu_p) in x and concave (mu_d) in y; G = [grad_x F; -grad_y F]
// is L-Lipschitz on setX x setY.
struct SaddleObjective {
  std::function<double(const Vector&, const Vector&)> value;
  std::function<Vector(const Vector&, const Vector&)> grad_x;
  std::function<Vector(const Vector&, const Vector&)> grad_y;
  double L = 1.0;
  double mu_p = 0.0;
  double mu_d = 1.0;
  FeasibleSet setX = FeasibleSet::ball(1, 1.0);
  FeasibleSet setY = FeasibleSet::ball(1, 1.0);
  double sigma = 0.0;
  std::optional<double> D_Y;
  // Fills out = G(x, y); optional fast path used instead of grad_x/grad_y.
  std::function<void(const Vector&, const Vector&, Vector& gx, Vector& gy)> operator_into;

  Index dx() const { return setX.dim(); }
  Index dy() const { return setY.dim(); }
  FeasibleSet joint_set() const { return FeasibleSet::product(setX, setY); }
  void validate() const;
};

// G(z) = [grad_x F(z); -grad_y F(z)].
Vector saddle_operator(const SaddleObjective& prob, const PrimalDualPoint& z);
void saddle_operator_into(const SaddleObjective& prob, const Vector& x, const Vector& y, Vector& gx,
                          Vector& gy);

struct ModuliAudit {
  double max_lipschitz_ratio = 0.0;   // max ||g(a)-g(b)|| / (L ||a-b||)
  double min_convexity_slack = 0.0;   // most negative violation of the lower model, scaled
  bool ok = true;
};

// Sampled checks of the declared L and mu on random feasible probe pairs.
ModuliAudit audit_moduli(const SmoothObjective& prob, int pairs, std::uint64_t seed);
ModuliAudit audit_moduli(const SaddleObjective& prob, int pairs, std::uint64_t seed);

// Uniform-ish random feasible point: a projected Gaussian around a set point.
Vector random_feasible_point(const FeasibleSet& set, std::uint64_t seed, std::uint64_t index);

}  // namespace ckit
