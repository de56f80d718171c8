#include "ckit/core/prox.hpp"

#include <cmath>

namespace ckit {

void prox_step_into(const FeasibleSet& set, double eta, const Vector& center, const Vector& g,
                    std::initializer_list<Anchor> anchors, Vector& out) {
  if (!(eta > 0) || !std::isfinite(eta)) throw ParameterError("prox_step: eta must be positive");
  const Index d = set.dim();
  require_dim(center.size(), d, "prox_step center");
  require_dim(g.size(), d, "prox_step gradient");
  double denom = 1.0 / eta;
  out = center / eta - g;
  for (const Anchor& a : anchors) {
    if (!(a.weight >= 0)) throw ParameterError("prox_step: negative anchor weight");
    require_dim(a.point.size(), d, "prox_step anchor");
    if (a.weight == 0) continue;
    out += a.weight * a.point;
    denom += a.weight;
  }
  out /= denom;
  set.project_inplace(out);
}

Vector prox_step(const FeasibleSet& set, double eta, const Vector& center, const Vector& g,
                 std::initializer_list<Anchor> anchors) {
  Vector out;
  prox_step_into(set, eta, center, g, anchors, out);
  return out;
}

}  // namespace ckit
