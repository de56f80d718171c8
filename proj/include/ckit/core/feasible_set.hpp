#pragma once

#include <memory>
#include <variant>

#include "ckit/core/types.hpp"

namespace ckit {

class FeasibleSet;

struct EuclideanBall {
  Vector center;
  double radius;
};

struct Box {
  Vector lower;
  Vector upper;
};

// { x >= 0, sum(x) = scale } in dimension dim.
struct Simplex {
  Index dim;
  double scale;
};

struct Product {
  std::shared_ptr<const FeasibleSet> first;
  std::shared_ptr<const FeasibleSet> second;
};

// Compact convex set with an exact Euclidean projection. Immutable.
class FeasibleSet {
 public:
  using Variant = std::variant<EuclideanBall, Box, Simplex, Product>;

  static FeasibleSet ball(Vector center, double radius);
  static FeasibleSet ball(Index dim, double radius);  // centered at 0
  static FeasibleSet box(Vector lower, Vector upper);
  static FeasibleSet simplex(Index dim, double scale);
  static FeasibleSet product(FeasibleSet a, FeasibleSet b);

  Index dim() const { return dim_; }
  const Variant& shape() const { return shape_; }

  Vector project(const Vector& p) const;
  void project_inplace(Eigen::Ref<Vector> p) const;
  bool contains(const Vector& p, double tol = 1e-10) const;
  double diameter() const;

 private:
  FeasibleSet(Variant v, Index dim) : shape_(std::move(v)), dim_(dim) {}
  Variant shape_;
  Index dim_;
};

inline Vector project(const FeasibleSet& set, const Vector& p) { return set.project(p); }

// Sort-and-threshold projection onto { x >= 0, sum(x) = scale }.
Vector project_simplex(const Vector& p, double scale);

}  // namespace ckit
