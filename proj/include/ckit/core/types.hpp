#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ckit {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Programmer errors: dimension mismatches, non-finite inputs, broken invariants.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A numeric argument outside its admissible range (eta <= 0, eps <= 0, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A solver schedule that violates the preconditions of its guarantee.
class RecipeViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Configuration problems detected before any oracle call.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require(bool cond, const char* what);
void require_finite(const Vector& v, const char* what);
void require_dim(Index got, Index want, const char* what);

// Stacked (x, y) iterate. The split index is the primal dimension.
struct PrimalDualPoint {
  Vector coords;
  Index split = 0;

  PrimalDualPoint() = default;
  PrimalDualPoint(const Vector& x, const Vector& y);

  Index dx() const { return split; }
  Index dy() const { return coords.size() - split; }
  auto x() { return coords.head(split); }
  auto y() { return coords.tail(coords.size() - split); }
  auto x() const { return coords.head(split); }
  auto y() const { return coords.tail(coords.size() - split); }
};

}  // namespace ckit
