#pragma once

#include "ckit/bench/config.hpp"
#include "ckit/bench/trace.hpp"

namespace ckit {

// Worker count for a batch of `runs`: CKIT_THREADS if set, else the hardware
// concurrency, never more than `runs`.
int run_parallelism(std::int64_t runs);

// One run of the configured experiment with its own noise seed.
RunTrace run_single(const ExperimentConfig& config, std::int64_t run_id, std::uint64_t seed);

// All seeds, concatenated in run order; writes config.output when set. Noise
// for run i is seeded with base_seed + i, so results do not depend on scheduling.
RunTrace run_experiment(const ExperimentConfig& config);

}  // namespace ckit
