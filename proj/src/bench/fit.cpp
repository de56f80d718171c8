#include "ckit/bench/fit.hpp"

#include <cmath>
#include <vector>

#include "ckit/core/types.hpp"

namespace ckit {

namespace {

double metric(const TraceRow& r, FitColumn c) {
  switch (c) {
    case FitColumn::primal_gap:
      return r.primal_gap;
    case FitColumn::composite_gap:
      return r.composite_gap;
    case FitColumn::dist_sq:
      return std::isnan(r.dist_dual_sq) ? r.dist_primal_sq : r.dist_primal_sq + r.dist_dual_sq;
    case FitColumn::automatic:
      break;
  }
  return kMissing;
}

FitColumn pick_column(const RunTrace& trace) {
  for (FitColumn c : {FitColumn::composite_gap, FitColumn::primal_gap, FitColumn::dist_sq}) {
    for (const TraceRow& r : trace)
      if (std::isfinite(metric(r, c))) return c;
  }
  return FitColumn::dist_sq;
}

}  // namespace

RateFit fit_rate(const RunTrace& trace, RateModel model, FitColumn column) {
  if (column == FitColumn::automatic) column = pick_column(trace);
  std::vector<double> xs, ys;
  for (const TraceRow& r : trace) {
    const double v = metric(r, column);
    if (r.k < 1 || !(v > 0) || !std::isfinite(v)) continue;
    const double k = static_cast<double>(r.k);
    xs.push_back(model == RateModel::power ? std::log(k) : k);
    ys.push_back(std::log(v));
  }
  const std::size_t n = xs.size();
  if (n < 10) throw InsufficientData("fit needs at least 10 rows with positive values, got " + std::to_string(n));

  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0)) throw InsufficientData("fit needs at least two distinct k values");

  RateFit fit;
  fit.model = model;
  fit.n = n;
  const double slope = sxy / sxx;
  fit.intercept = my - slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = ys[i] - (fit.intercept + slope * xs[i]);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(n));
  if (model == RateModel::power) {
    fit.exponent = slope;
  } else {
    fit.factor = std::exp(slope);
  }
  return fit;
}

RateModel parse_rate_model(const std::string& name) {
  if (name == "power") return RateModel::power;
  if (name == "geometric") return RateModel::geometric;
  throw ConfigError("model: expected \"power\" or \"geometric\", got \"" + name + "\"");
}

}  // namespace ckit
