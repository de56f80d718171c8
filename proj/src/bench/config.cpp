#include "ckit/bench/config.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "ckit/core/types.hpp"
#include "json.hpp"

namespace ckit {

namespace {

using nlohmann::json;

constexpr std::array<std::pair<Algorithm, const char*>, 10> kAlgorithms{{
    {Algorithm::catalyst_sgd, "catalyst_sgd"},
    {Algorithm::r_catalyst_sgd, "r_catalyst_sgd"},
    {Algorithm::reg, "reg"},
    {Algorithm::sreg, "sreg"},
    {Algorithm::sreg_restarted, "sreg_restarted"},
    {Algorithm::catalyst_minimax_det, "catalyst_minimax_det"},
    {Algorithm::r_catalyst_minimax_det, "r_catalyst_minimax_det"},
    {Algorithm::catalyst_minimax_stoch, "catalyst_minimax_stoch"},
    {Algorithm::r_catalyst_minimax_stoch, "r_catalyst_minimax_stoch"},
    {Algorithm::exact_prox_baseline, "exact_prox_baseline"},
}};

[[noreturn]] void bad(const std::string& path, const std::string& what) { throw ConfigError(path + ": " + what); }

// Reads obj[key] into out when present; rejects wrong types with the field path.
class Fields {
 public:
  Fields(const json& obj, std::string prefix) : obj_(obj), prefix_(std::move(prefix)) {
    if (!obj_.is_object()) bad(prefix_.empty() ? "<root>" : prefix_, "expected an object");
  }

  std::string path(const char* key) const { return prefix_.empty() ? key : prefix_ + "." + key; }
  bool has(const char* key) const { return obj_.contains(key); }

  void number(const char* key, double& out, bool positive, bool nonneg) const {
    if (!has(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_number()) bad(path(key), "expected a number");
    out = v.get<double>();
    if (!std::isfinite(out)) bad(path(key), "must be finite");
    if (positive && !(out > 0)) bad(path(key), "must be positive");
    if (nonneg && !(out >= 0)) bad(path(key), "must be nonnegative");
  }
  void integer(const char* key, std::int64_t& out, std::int64_t min) const {
    if (!has(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_number_integer()) bad(path(key), "expected an integer");
    out = v.get<std::int64_t>();
    if (out < min) bad(path(key), "must be >= " + std::to_string(min));
  }
  void unsigned_int(const char* key, std::uint64_t& out) const {
    if (!has(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) bad(path(key), "expected a nonnegative integer");
    out = v.get<std::uint64_t>();
  }
  void boolean(const char* key, bool& out) const {
    if (!has(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_boolean()) bad(path(key), "expected true or false");
    out = v.get<bool>();
  }
  std::string string(const char* key) const {
    const json& v = obj_.at(key);
    if (!v.is_string()) bad(path(key), "expected a string");
    return v.get<std::string>();
  }
  void reject_unknown(std::initializer_list<const char*> known) const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      bool ok = false;
      for (const char* k : known) ok = ok || it.key() == k;
      if (!ok) bad(path(it.key().c_str()), "unknown field");
    }
  }

 private:
  const json& obj_;
  std::string prefix_;
};

ProblemSpec parse_problem(const json& j) {
  Fields f(j, "problem");
  f.reject_unknown({"kind", "d", "dx", "dy", "L", "mu", "mu_p", "mu_d", "sigma", "seed", "scale", "offset_scale",
                    "start"});
  ProblemSpec p;
  if (!f.has("kind")) bad("problem.kind", "missing");
  const std::string kind = f.string("kind");
  if (kind == "quadratic") {
    p.kind = ProblemKind::quadratic;
  } else if (kind == "saddle") {
    p.kind = ProblemKind::saddle;
  } else {
    bad("problem.kind", "expected \"quadratic\" or \"saddle\"");
  }
  f.integer("d", p.d, 1);
  f.integer("dx", p.dx, 1);
  f.integer("dy", p.dy, 1);
  if (!f.has("L")) bad("problem.L", "missing");
  f.number("L", p.L, true, false);
  f.number("mu", p.mu, false, true);
  f.number("mu_p", p.mu_p, false, true);
  f.number("mu_d", p.mu_d, false, true);
  f.number("sigma", p.sigma, false, true);
  f.unsigned_int("seed", p.seed);
  f.number("scale", p.scale, true, false);
  f.number("offset_scale", p.offset_scale, false, true);
  if (f.has("start")) {
    const std::string s = f.string("start");
    if (s != "random" && s != "zero") bad("problem.start", "expected \"random\" or \"zero\"");
    p.random_start = s == "random";
  }
  if (p.kind == ProblemKind::quadratic && p.mu > p.L) bad("problem.mu", "must not exceed L");
  if (p.kind == ProblemKind::saddle) {
    if (!(p.mu_d > 0)) bad("problem.mu_d", "must be positive");
    if (p.mu_p > p.mu_d) bad("problem.mu_p", "must not exceed mu_d");
    if (p.L < p.mu_d) bad("problem.L", "must be >= mu_d");
    if (p.mu_p == 0 && p.dx > p.dy) bad("problem.dx", "mu_p = 0 needs dx <= dy");
  }
  return p;
}

AlgorithmSpec parse_algorithm(const json& j, const ProblemSpec& prob) {
  Fields f(j, "algorithm");
  f.reject_unknown({"name", "eps", "K", "T", "epochs", "gap_ratio", "overestimate", "trace_every"});
  AlgorithmSpec a;
  if (!f.has("name")) bad("algorithm.name", "missing");
  const std::string name = f.string("name");
  bool found = false;
  for (const auto& [alg, n] : kAlgorithms) {
    if (name == n) {
      a.name = alg;
      found = true;
    }
  }
  if (!found) {
    std::string list;
    for (const auto& kv : kAlgorithms) list += std::string(list.empty() ? "" : ", ") + kv.second;
    bad("algorithm.name", "unknown algorithm \"" + name + "\" (expected one of " + list + ")");
  }
  if (f.has("eps")) {
    double e = 0;
    f.number("eps", e, true, false);
    a.eps = e;
  }
  std::int64_t v = 0;
  if (f.has("K")) {
    f.integer("K", v, 1);
    a.K = v;
  }
  if (f.has("T")) {
    f.integer("T", v, 1);
    a.T = v;
  }
  if (f.has("epochs")) {
    f.integer("epochs", v, 0);
    a.epochs = v;
  }
  f.number("gap_ratio", a.gap_ratio, true, false);
  f.number("overestimate", a.overestimate, true, false);
  f.integer("trace_every", a.trace_every, 1);

  const bool quad = prob.kind == ProblemKind::quadratic;
  switch (a.name) {
    case Algorithm::catalyst_sgd:
    case Algorithm::exact_prox_baseline:
      if (!quad) bad("algorithm.name", "needs a quadratic problem");
      if (!a.eps && !a.K) bad("algorithm.eps", "either eps or K is required");
      break;
    case Algorithm::r_catalyst_sgd:
      if (!quad) bad("algorithm.name", "needs a quadratic problem");
      if (!(prob.mu > 0)) bad("problem.mu", "r_catalyst_sgd needs mu > 0");
      if (!a.eps && !a.epochs) bad("algorithm.eps", "either eps or epochs is required");
      break;
    case Algorithm::reg:
    case Algorithm::sreg:
      if (quad) bad("algorithm.name", "needs a saddle problem");
      if (!(prob.mu_p > 0)) bad("problem.mu_p", "needs mu_p > 0");
      if (!a.T) bad("algorithm.T", "missing");
      if (a.name == Algorithm::reg && prob.sigma > 0) bad("problem.sigma", "reg uses the exact operator; set sigma = 0");
      break;
    case Algorithm::sreg_restarted:
      if (quad) bad("algorithm.name", "needs a saddle problem");
      if (!(prob.mu_p > 0)) bad("problem.mu_p", "needs mu_p > 0");
      if (!a.eps) bad("algorithm.eps", "missing");
      break;
    case Algorithm::catalyst_minimax_det:
      if (quad) bad("algorithm.name", "needs a saddle problem");
      if (prob.sigma > 0) bad("problem.sigma", "deterministic recipe needs sigma = 0");
      if (!a.K && !a.eps) bad("algorithm.K", "either K or eps is required");
      break;
    case Algorithm::r_catalyst_minimax_det:
      if (quad) bad("algorithm.name", "needs a saddle problem");
      if (prob.sigma > 0) bad("problem.sigma", "deterministic recipe needs sigma = 0");
      if (!(prob.mu_p > 0)) bad("problem.mu_p", "restarted recipe needs mu_p > 0");
      if (!a.epochs && !a.eps) bad("algorithm.epochs", "either epochs or eps is required");
      break;
    case Algorithm::catalyst_minimax_stoch:
      if (quad) bad("algorithm.name", "needs a saddle problem");
      if (!(prob.sigma > 0)) bad("problem.sigma", "stochastic recipe needs sigma > 0");
      if (!a.eps) bad("algorithm.eps", "missing");
      break;
    case Algorithm::r_catalyst_minimax_stoch:
      if (quad) bad("algorithm.name", "needs a saddle problem");
      if (!(prob.sigma > 0)) bad("problem.sigma", "stochastic recipe needs sigma > 0");
      if (!(prob.mu_p > 0)) bad("problem.mu_p", "restarted recipe needs mu_p > 0");
      if (!a.epochs && !a.eps) bad("algorithm.epochs", "either epochs or eps is required");
      break;
  }
  return a;
}

}  // namespace

std::string algorithm_name(Algorithm a) {
  for (const auto& [alg, n] : kAlgorithms)
    if (alg == a) return n;
  return "?";
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("<root>: invalid JSON: ") + e.what());
  }
  Fields f(j, "");
  f.reject_unknown({"problem", "algorithm", "seeds", "base_seed", "output"});
  if (!f.has("problem")) bad("problem", "missing");
  if (!f.has("algorithm")) bad("algorithm", "missing");
  ExperimentConfig c;
  c.problem = parse_problem(j.at("problem"));
  c.algorithm = parse_algorithm(j.at("algorithm"), c.problem);
  f.integer("seeds", c.seeds, 1);
  f.unsigned_int("base_seed", c.base_seed);
  if (f.has("output")) c.output = f.string("output");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace ckit
