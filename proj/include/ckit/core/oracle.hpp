#pragma once

#include <cstdint>
#include <initializer_list>

#include "ckit/core/objective.hpp"

namespace ckit {

// SplitMix64 used as a stateless mixer and as a small UniformRandomBitGenerator.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path);

class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();

 private:
  std::uint64_t state_;
};

// Counter-based noise source. Draw number c is a pure function of (seed, c),
// so a run's noise never depends on what other runs do.
class OracleStream {
 public:
  explicit OracleStream(std::uint64_t seed, std::uint64_t counter = 0) : seed_(seed), counter_(counter) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

  // Isotropic Gaussian with E||n||^2 = total_variance; consumes one draw.
  Vector gaussian(Index d, double total_variance);
  void add_gaussian(Eigen::Ref<Vector> out, double total_variance);

  // Engine for the next draw; advances the counter by one.
  SplitMix64 next_engine();

  // Independent stream for a sub-task, e.g. split({run, epoch, k}).
  OracleStream split(std::initializer_list<std::uint64_t> path) const;

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

// grad f(x) + n with n ~ N(0, (sigma^2/d) I). sigma = 0 returns the exact gradient.
Vector sample_grad(const SmoothObjective& prob, const Vector& x, OracleStream& stream);

// Stochastic G(z) for a saddle objective; noise has total variance sigma^2 over dx+dy coordinates.
void sample_operator_into(const SaddleObjective& prob, const Vector& x, const Vector& y, OracleStream& stream,
                          Vector& gx, Vector& gy);

}  // namespace ckit
