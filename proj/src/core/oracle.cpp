#include "ckit/core/oracle.hpp"

#include <cmath>
#include <random>

namespace ckit {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(base);
  for (std::uint64_t p : path) h = mix64(h ^ mix64(p + 0x632be59bd9b4e019ULL));
  return h;
}

SplitMix64::result_type SplitMix64::operator()() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SplitMix64 OracleStream::next_engine() { return SplitMix64(derive_seed(seed_, {counter_++})); }

void OracleStream::add_gaussian(Eigen::Ref<Vector> out, double total_variance) {
  const Index d = out.size();
  SplitMix64 engine = next_engine();
  if (total_variance == 0.0) return;
  std::normal_distribution<double> normal(0.0, std::sqrt(total_variance / static_cast<double>(d)));
  for (Index i = 0; i < d; ++i) out[i] += normal(engine);
}

Vector OracleStream::gaussian(Index d, double total_variance) {
  Vector n = Vector::Zero(d);
  add_gaussian(n, total_variance);
  return n;
}

OracleStream OracleStream::split(std::initializer_list<std::uint64_t> path) const {
  return OracleStream(derive_seed(seed_ ^ 0xa0761d6478bd642fULL, path));
}

Vector sample_grad(const SmoothObjective& prob, const Vector& x, OracleStream& stream) {
  Vector g = prob.gradient(x);
  stream.add_gaussian(g, prob.sigma * prob.sigma);
  return g;
}

void sample_operator_into(const SaddleObjective& prob, const Vector& x, const Vector& y, OracleStream& stream,
                          Vector& gx, Vector& gy) {
  saddle_operator_into(prob, x, y, gx, gy);
  const double var = prob.sigma * prob.sigma;
  // One draw covers both blocks so the noise is isotropic on the stacked operator.
  SplitMix64 engine = stream.next_engine();
  if (var == 0.0) return;
  const Index dx = gx.size(), dy = gy.size();
  std::normal_distribution<double> normal(0.0, std::sqrt(var / static_cast<double>(dx + dy)));
  for (Index i = 0; i < dx; ++i) gx[i] += normal(engine);
  for (Index i = 0; i < dy; ++i) gy[i] += normal(engine);
}

}  // namespace ckit
