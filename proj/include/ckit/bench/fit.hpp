#pragma once

#include <stdexcept>
#include <string>

#include "ckit/bench/trace.hpp"

namespace ckit {

enum class RateModel { power, geometric };

enum class FitColumn { automatic, primal_gap, dist_sq, composite_gap };

struct RateFit {
  RateModel model = RateModel::power;
  double exponent = 0;  // power: slope of log(gap) against log(k)
  double factor = 0;    // geometric: exp(slope of log(gap) against k)
  double intercept = 0;
  double residual = 0;  // RMS of the log-space residuals
  std::size_t n = 0;    // rows used
};

// Least squares in log space over rows with k >= 1 and a positive metric.
// automatic picks composite_gap, then primal_gap, then the summed distances,
// taking the first column with any finite entry. Throws InsufficientData
// when fewer than 10 rows survive.
RateFit fit_rate(const RunTrace& trace, RateModel model, FitColumn column = FitColumn::automatic);

RateModel parse_rate_model(const std::string& name);

struct InsufficientData : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ckit
