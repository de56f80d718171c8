#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace ckit {

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

// One record per outer iteration (or epoch, or inner step for bare solvers).
// Metrics that do not apply to a run are NaN.
struct TraceRow {
  std::int64_t run_id = 0;
  std::uint64_t seed = 0;
  std::int64_t k = 0;
  std::int64_t sfo_calls = 0;
  double primal_gap = kMissing;
  double dist_primal_sq = kMissing;
  double dist_dual_sq = kMissing;
  double composite_gap = kMissing;
  double wall_ms = 0;
};

using RunTrace = std::vector<TraceRow>;

inline constexpr const char* kTraceHeader =
    "run_id,seed,k,sfo_calls,primal_gap,dist_primal_sq,dist_dual_sq,composite_gap,wall_ms";

// Doubles use the shortest representation that parses back to the same bits.
void write_csv(std::ostream& out, const RunTrace& trace);
std::string to_csv(const RunTrace& trace);
RunTrace parse_csv(std::istream& in);
RunTrace parse_csv(const std::string& text);
RunTrace read_csv_file(const std::string& path);
void write_csv_file(const std::string& path, const RunTrace& trace);

// Bitwise comparison (NaN equals NaN); wall_ms is skipped when ignore_wall is set.
bool same_trace(const RunTrace& a, const RunTrace& b, bool ignore_wall);

}  // namespace ckit
