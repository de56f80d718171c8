#include "ckit/bench/trace.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ckit/core/types.hpp"

namespace ckit {

namespace {

void put_double(std::string& line, double v) {
  if (std::isnan(v)) {
    line += "nan";
    return;
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  line.append(buf, res.ptr);
}

template <class T>
void put_int(std::string& line, T v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  line.append(buf, res.ptr);
}

template <class T>
T parse_field(std::string_view s, int line_no) {
  T v{};
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ConfigError("trace line " + std::to_string(line_no) + ": bad field '" + std::string(s) + "'");
  }
  return v;
}

double parse_double(std::string_view s, int line_no) {
  if (s == "nan") return kMissing;
  return parse_field<double>(s, line_no);
}

bool same_bits(double a, double b) {
  if (std::isnan(a) && std::isnan(b)) return true;
  return std::memcmp(&a, &b, sizeof a) == 0;
}

}  // namespace

void write_csv(std::ostream& out, const RunTrace& trace) { out << to_csv(trace); }

std::string to_csv(const RunTrace& trace) {
  std::string s = kTraceHeader;
  s += '\n';
  for (const TraceRow& r : trace) {
    put_int(s, r.run_id);
    s += ',';
    put_int(s, r.seed);
    s += ',';
    put_int(s, r.k);
    s += ',';
    put_int(s, r.sfo_calls);
    for (double v : {r.primal_gap, r.dist_primal_sq, r.dist_dual_sq, r.composite_gap, r.wall_ms}) {
      s += ',';
      put_double(s, v);
    }
    s += '\n';
  }
  return s;
}

RunTrace parse_csv(std::istream& in) {
  RunTrace trace;
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader) throw ConfigError("trace: missing or unexpected header");
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest(line);
    for (;;) {
      const auto pos = rest.find(',');
      f.push_back(rest.substr(0, pos));
      if (pos == std::string_view::npos) break;
      rest.remove_prefix(pos + 1);
    }
    if (f.size() != 9) throw ConfigError("trace line " + std::to_string(line_no) + ": expected 9 fields");
    TraceRow r;
    r.run_id = parse_field<std::int64_t>(f[0], line_no);
    r.seed = parse_field<std::uint64_t>(f[1], line_no);
    r.k = parse_field<std::int64_t>(f[2], line_no);
    r.sfo_calls = parse_field<std::int64_t>(f[3], line_no);
    r.primal_gap = parse_double(f[4], line_no);
    r.dist_primal_sq = parse_double(f[5], line_no);
    r.dist_dual_sq = parse_double(f[6], line_no);
    r.composite_gap = parse_double(f[7], line_no);
    r.wall_ms = parse_double(f[8], line_no);
    trace.push_back(r);
  }
  return trace;
}

RunTrace parse_csv(const std::string& text) {
  std::istringstream in(text);
  return parse_csv(in);
}

RunTrace read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open trace " + path);
  return parse_csv(in);
}

void write_csv_file(const std::string& path, const RunTrace& trace) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path + " for writing");
  write_csv(out, trace);
  if (!out) throw ConfigError("failed writing " + path);
}

bool same_trace(const RunTrace& a, const RunTrace& b, bool ignore_wall) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const TraceRow &x = a[i], &y = b[i];
    if (x.run_id != y.run_id || x.seed != y.seed || x.k != y.k || x.sfo_calls != y.sfo_calls) return false;
    if (!same_bits(x.primal_gap, y.primal_gap) || !same_bits(x.dist_primal_sq, y.dist_primal_sq) ||
        !same_bits(x.dist_dual_sq, y.dist_dual_sq) || !same_bits(x.composite_gap, y.composite_gap)) {
      return false;
    }
    if (!ignore_wall && !same_bits(x.wall_ms, y.wall_ms)) return false;
  }
  return true;
}

}  // namespace ckit
