#pragma once

#include <initializer_list>

#include "ckit/core/feasible_set.hpp"

namespace ckit {

struct Anchor {
  double weight;
  const Vector& point;
};

// argmin_{u in set} <g, u> + ||u - c||^2 / (2 eta) + sum_i (mu_i / 2) ||u - a_i||^2.
// The objective is an isotropic quadratic, so the constrained minimizer is the
// projection of the unconstrained one.
Vector prox_step(const FeasibleSet& set, double eta, const Vector& center, const Vector& g,
                 std::initializer_list<Anchor> anchors = {});

// Same, writing into `out` (which may alias nothing but itself).
void prox_step_into(const FeasibleSet& set, double eta, const Vector& center, const Vector& g,
                    std::initializer_list<Anchor> anchors, Vector& out);

}  // namespace ckit
