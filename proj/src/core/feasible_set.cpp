#include "ckit/core/feasible_set.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace ckit {

void require(bool cond, const char* what) {
  if (!cond) throw ContractViolation(what);
}

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) throw ContractViolation(std::string(what) + ": non-finite entry");
}

void require_dim(Index got, Index want, const char* what) {
  if (got != want) {
    throw ContractViolation(std::string(what) + ": dimension " + std::to_string(got) + " != " +
                            std::to_string(want));
  }
}

PrimalDualPoint::PrimalDualPoint(const Vector& x, const Vector& y) : coords(x.size() + y.size()), split(x.size()) {
  require(x.size() >= 1 && y.size() >= 1, "PrimalDualPoint: empty block");
  coords << x, y;
}

FeasibleSet FeasibleSet::ball(Vector center, double radius) {
  if (!(radius > 0) || !std::isfinite(radius)) throw ParameterError("ball radius must be positive");
  require(center.size() >= 1, "ball: empty center");
  require_finite(center, "ball center");
  const Index d = center.size();
  return FeasibleSet(EuclideanBall{std::move(center), radius}, d);
}

FeasibleSet FeasibleSet::ball(Index dim, double radius) { return ball(Vector::Zero(dim), radius); }

FeasibleSet FeasibleSet::box(Vector lower, Vector upper) {
  require(lower.size() == upper.size() && lower.size() >= 1, "box: bound dimensions differ");
  if (!(lower.array() <= upper.array()).all()) throw ParameterError("box: lower > upper");
  const Index d = lower.size();
  return FeasibleSet(Box{std::move(lower), std::move(upper)}, d);
}

FeasibleSet FeasibleSet::simplex(Index dim, double scale) {
  require(dim >= 1, "simplex: dim < 1");
  if (!(scale > 0) || !std::isfinite(scale)) throw ParameterError("simplex scale must be positive");
  return FeasibleSet(Simplex{dim, scale}, dim);
}

FeasibleSet FeasibleSet::product(FeasibleSet a, FeasibleSet b) {
  const Index d = a.dim() + b.dim();
  return FeasibleSet(Product{std::make_shared<const FeasibleSet>(std::move(a)),
                             std::make_shared<const FeasibleSet>(std::move(b))},
                     d);
}

Vector project_simplex(const Vector& p, double scale) {
  const Index n = p.size();
  std::vector<double> u(p.data(), p.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (Index j = 0; j < n; ++j) {
    cumsum += u[j];
    const double t = (cumsum - scale) / static_cast<double>(j + 1);
    if (u[j] - t > 0) theta = t;
  }
  return (p.array() - theta).max(0.0).matrix();
}

void FeasibleSet::project_inplace(Eigen::Ref<Vector> p) const {
  require_dim(p.size(), dim_, "project");
  if (!p.allFinite()) throw ContractViolation("project: non-finite entry");
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, EuclideanBall>) {
          const double r = (p - s.center).norm();
          if (r > s.radius) p = s.center + (s.radius / r) * (p - s.center);
        } else if constexpr (std::is_same_v<S, Box>) {
          p = p.cwiseMax(s.lower).cwiseMin(s.upper);
        } else if constexpr (std::is_same_v<S, Simplex>) {
          p = project_simplex(p, s.scale);
        } else {
          const Index da = s.first->dim();
          s.first->project_inplace(p.head(da));
          s.second->project_inplace(p.tail(p.size() - da));
        }
      },
      shape_);
}

Vector FeasibleSet::project(const Vector& p) const {
  Vector out = p;
  project_inplace(out);
  return out;
}

bool FeasibleSet::contains(const Vector& p, double tol) const {
  if (p.size() != dim_) return false;
  return std::visit(
      [&](const auto& s) -> bool {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, EuclideanBall>) {
          return (p - s.center).norm() <= s.radius * (1 + tol) + tol;
        } else if constexpr (std::is_same_v<S, Box>) {
          return ((p - s.lower).array() >= -tol).all() && ((s.upper - p).array() >= -tol).all();
        } else if constexpr (std::is_same_v<S, Simplex>) {
          return (p.array() >= -tol).all() && std::abs(p.sum() - s.scale) <= tol * (1 + s.scale);
        } else {
          const Index da = s.first->dim();
          return s.first->contains(p.head(da), tol) && s.second->contains(p.tail(p.size() - da), tol);
        }
      },
      shape_);
}

double FeasibleSet::diameter() const {
  return std::visit(
      [&](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, EuclideanBall>) {
          return 2 * s.radius;
        } else if constexpr (std::is_same_v<S, Box>) {
          return (s.upper - s.lower).norm();
        } else if constexpr (std::is_same_v<S, Simplex>) {
          return s.dim > 1 ? std::sqrt(2.0) * s.scale : 0.0;
        } else {
          return std::hypot(s.first->diameter(), s.second->diameter());
        }
      },
      shape_);
}

}  // namespace ckit
