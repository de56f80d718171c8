#include "ckit/bench/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "ckit/catalyst/min.hpp"
#include "ckit/catalyst/minimax.hpp"
#include "ckit/testbed/testbed.hpp"

namespace ckit {

namespace {

using Clock = std::chrono::steady_clock;

class RowSink {
 public:
  RowSink(std::int64_t run_id, std::uint64_t seed, RunTrace& out)
      : run_id_(run_id), seed_(seed), out_(out), start_(Clock::now()) {}

  TraceRow& add(std::int64_t k, std::int64_t sfo) {
    TraceRow r;
    r.run_id = run_id_;
    r.seed = seed_;
    r.k = k;
    r.sfo_calls = sfo;
    r.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    out_.push_back(r);
    return out_.back();
  }

 private:
  std::int64_t run_id_;
  std::uint64_t seed_;
  RunTrace& out_;
  Clock::time_point start_;
};

double epochs_to_eps(double Delta0, std::int64_t epochs) { return Delta0 * std::ldexp(1.0, -static_cast<int>(epochs)); }

void run_quadratic(const ExperimentConfig& cfg, RowSink& sink, OracleStream& stream) {
  const ProblemSpec& p = cfg.problem;
  const AlgorithmSpec& a = cfg.algorithm;
  const QuadraticInstance q = gen_quadratic(p.d, p.L, p.mu, p.seed, p.scale);
  const SmoothObjective f = q.objective(p.sigma);
  const Vector x0 = p.random_start ? random_feasible_point(f.set, p.seed, 0) : Vector::Zero(p.d);

  auto record = [&](std::int64_t k, std::int64_t sfo, const Vector& x) {
    TraceRow& r = sink.add(k, sfo);
    r.primal_gap = q.gap(x);
    r.dist_primal_sq = (x - q.x_star).squaredNorm();
  };
  record(0, 0, x0);

  if (a.name == Algorithm::r_catalyst_sgd) {
    const double Delta0 = std::max(q.gap(x0), 1e-300) * a.overestimate;
    const double eps = a.epochs ? epochs_to_eps(Delta0, *a.epochs) : *a.eps;
    MinRecipe r = recipe_restarted(p.L, p.mu, eps, p.sigma, Delta0);
    if (a.K) r.K = *a.K;
    r_catalyst_run(f, r, x0, stream, [&](const CatalystStep& s) {
      if (s.k == r.K) record(s.epoch, s.sfo_calls, s.x_tilde);
    });
    return;
  }

  const double D2 = std::max((q.x_star - x0).squaredNorm(), 1e-300) * a.overestimate;
  MinRecipe r;
  if (a.eps) {
    r = recipe_smooth(p.L, *a.eps, p.sigma, D2);
  } else {
    r.L = p.L;
    r.delta = std::numeric_limits<double>::infinity();
  }
  if (a.K) r.K = *a.K;
  if (a.T) r.T = *a.T;
  r.exact_prox = a.name == Algorithm::exact_prox_baseline;
  catalyst_run(f, r, x0, stream, [&](const CatalystStep& s) { record(s.k, s.sfo_calls, s.x_tilde); });
}

void run_saddle(const ExperimentConfig& cfg, RowSink& sink, OracleStream& stream) {
  const ProblemSpec& p = cfg.problem;
  const AlgorithmSpec& a = cfg.algorithm;
  const SaddleInstance s = gen_saddle(p.dx, p.dy, p.L, p.mu_p, p.mu_d, p.seed, p.offset_scale);
  const SaddleObjective F = s.objective(p.sigma);
  Vector x0 = Vector::Zero(p.dx), y0 = Vector::Zero(p.dy);
  if (p.random_start) {
    x0 = random_feasible_point(F.setX, p.seed, 0);
    y0 = random_feasible_point(F.setY, p.seed, 1);
  }

  auto record_point = [&](std::int64_t k, std::int64_t sfo, const Vector& x, const Vector& y) {
    TraceRow& r = sink.add(k, sfo);
    r.primal_gap = s.gap(x);
    r.dist_primal_sq = (x - s.x_star).squaredNorm();
    r.dist_dual_sq = (y - s.y_star).squaredNorm();
  };

  switch (a.name) {
    case Algorithm::reg:
    case Algorithm::sreg: {
      const double mu = std::min(p.mu_p, p.mu_d);
      const SaddleSubproblem sub(F);
      const std::int64_t every = a.trace_every;
      auto obs = [&](std::int64_t t, const Vector& x, const Vector& y) {
        if (t % every == 0 || t == *a.T) record_point(t, 2 * t, x, y);
      };
      if (a.name == Algorithm::reg) {
        const double eta = 1.0 / p.L;
        reg(sub, mu, x0, y0, *a.T, [eta](std::int64_t) { return eta; }, obs);
      } else {
        sreg(sub, mu, x0, y0, *a.T, stream, obs);
      }
      return;
    }
    case Algorithm::sreg_restarted: {
      const double mu = std::min(p.mu_p, p.mu_d);
      const double R2 = std::max(s.dist_sq(x0, y0), 1e-300) * a.overestimate;
      sreg_restarted(SaddleSubproblem(F), mu, x0, y0, *a.eps, R2, stream,
                     [&](std::int64_t e, const Vector& x, const Vector& y, std::int64_t sfo) { record_point(e, sfo, x, y); });
      return;
    }
    default:
      break;
  }

  const bool stoch = a.name == Algorithm::catalyst_minimax_stoch || a.name == Algorithm::r_catalyst_minimax_stoch;
  const bool restarted = a.name == Algorithm::r_catalyst_minimax_det || a.name == Algorithm::r_catalyst_minimax_stoch;
  const double weight = stoch ? p.mu_d / 12.0 : p.mu_d / 6.0;
  auto record = [&](std::int64_t k, std::int64_t sfo, const Vector& x_tilde, const Vector& y) {
    TraceRow& r = sink.add(k, sfo);
    r.primal_gap = s.gap(x_tilde);
    r.dist_primal_sq = (x_tilde - s.x_star).squaredNorm();
    r.dist_dual_sq = (y - s.y_star).squaredNorm();
    r.composite_gap = s.composite(x_tilde, y, weight);
  };
  record(0, 0, x0, y0);

  MinimaxRecipe r;
  if (restarted) {
    const double Delta0 = std::max(s.composite(x0, y0, weight), 1e-300) * a.overestimate;
    const std::int64_t epochs =
        a.epochs ? *a.epochs : static_cast<std::int64_t>(std::ceil(std::max(0.0, std::log2(Delta0 / *a.eps)) - 1e-12));
    r = stoch ? recipe_stoch_sc(F, Delta0, epochs) : recipe_det_sc(F, epochs);
  } else {
    const double init =
        (2.0 * p.mu_d * (s.x_star - x0).squaredNorm() + p.mu_d * (s.inner_argmax(x0) - y0).squaredNorm()) *
        a.overestimate;
    const std::int64_t K = a.K ? *a.K : minimax_K_for_target(*a.eps, init, stoch ? 24.0 : 4.0);
    r = stoch ? recipe_stoch(F, *a.eps, K, a.gap_ratio) : recipe_det(F, K, a.gap_ratio);
  }
  if (!restarted && a.T) r.T = *a.T;
  if (restarted) {
    r_catalyst_minimax_run(F, r, x0, y0, stream, [&](const MinimaxStep& st) {
      if (st.k == r.K) record(st.epoch, st.sfo_calls, st.x_tilde, st.y_last);
    });
  } else {
    catalyst_minimax_run(F, r, x0, y0, stream,
                         [&](const MinimaxStep& st) { record(st.k, st.sfo_calls, st.x_tilde, st.y_last); });
  }
}

}  // namespace

int run_parallelism(std::int64_t runs) {
  int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("CKIT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw ConfigError("CKIT_THREADS: expected a positive integer");
    n = static_cast<int>(std::min<long>(v, 1024));
  }
  return static_cast<int>(std::max<std::int64_t>(1, std::min<std::int64_t>(n, runs)));
}

RunTrace run_single(const ExperimentConfig& config, std::int64_t run_id, std::uint64_t seed) {
  RunTrace out;
  RowSink sink(run_id, seed, out);
  OracleStream stream(seed);
  if (config.problem.kind == ProblemKind::quadratic) {
    run_quadratic(config, sink, stream);
  } else {
    run_saddle(config, sink, stream);
  }
  return out;
}

RunTrace run_experiment(const ExperimentConfig& config) {
  const std::int64_t runs = config.seeds;
  std::vector<RunTrace> per_run(static_cast<std::size_t>(runs));
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= runs) return;
      try {
        per_run[static_cast<std::size_t>(i)] = run_single(config, i, config.base_seed + static_cast<std::uint64_t>(i));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = runs;
      }
    }
  };
  const int threads = run_parallelism(runs);
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);

  RunTrace all;
  for (auto& t : per_run) all.insert(all.end(), t.begin(), t.end());
  if (!config.output.empty()) write_csv_file(config.output, all);
  return all;
}

}  // namespace ckit
