#include "ckit/bench/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <limits>
#include <map>
#include <random>

#include "ckit/bench/config.hpp"
#include "ckit/bench/runner.hpp"
#include "ckit/bench/trace.hpp"
#include "ckit/catalyst/min.hpp"
#include "ckit/catalyst/minimax.hpp"
#include "ckit/core/prox.hpp"
#include "ckit/testbed/testbed.hpp"

namespace ckit {

namespace {

// Worst measured/bound ratio over many comparisons, plus whether every one held.
struct Tracker {
  double worst = 0;
  std::int64_t count = 0;
  std::int64_t failures = 0;
  double slack = 0;

  void add(double measured, double bound) {
    ++count;
    if (!(measured <= bound * (1.0 + slack))) ++failures;
    if (bound > 0) {
      worst = std::max(worst, measured / bound);
    } else if (measured > 0) {
      worst = std::numeric_limits<double>::infinity();
    }
  }
  CheckLine line(const std::string& label) const {
    return CheckLine{label + " (" + std::to_string(count) + " checks)", worst, 1.0 + slack, failures == 0 && count > 0};
  }
};

CheckLine compare(const std::string& label, double measured, double bound, double slack = 0) {
  return CheckLine{label, measured, bound * (1.0 + slack), measured <= bound * (1.0 + slack)};
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// ---------------------------------------------------------------------------

SuiteReport reg_linear_rate() {
  SuiteReport rep;
  rep.time_limit = 5;
  for (Index dim : {2, 10, 50}) {
    for (double cond : {10.0, 100.0}) {
      const std::uint64_t seed = 100 + static_cast<std::uint64_t>(dim) + static_cast<std::uint64_t>(cond);
      const SaddleInstance s = gen_saddle(dim, dim, cond, 1.0, 1.0, seed);
      const SaddleObjective F = s.objective();
      const Vector x0 = random_feasible_point(F.setX, seed, 0), y0 = random_feasible_point(F.setY, seed, 1);
      const double mu = 1.0, L = cond, d0 = s.dist_sq(x0, y0);
      Tracker tr;
      reg(SaddleSubproblem(F), mu, x0, y0, 200, [L](std::int64_t) { return 1.0 / L; },
          [&](std::int64_t t, const Vector& x, const Vector& y) {
            if (t == 0) return;
            tr.add(s.dist_sq(x, y), std::pow(1.0 + mu / L, -static_cast<double>(t)) * d0);
          });
      rep.lines.push_back(tr.line("d=" + std::to_string(dim) + " L/mu=" + num(cond) + " ||z_t-z*||^2 / bound, 1<=t<=200"));
    }
  }
  return rep;
}

SuiteReport catalyst_smooth_bound() {
  SuiteReport rep;
  rep.time_limit = 10;
  const std::int64_t K = 100;
  for (Index d : {10, 100}) {
    const std::uint64_t seed = 200 + static_cast<std::uint64_t>(d);
    const QuadraticInstance q = gen_quadratic(d, 1.0, 0.0, seed);
    const SmoothObjective f = q.objective();
    const Vector x0 = random_feasible_point(f.set, seed, 0);
    const double D2 = (q.x_star - x0).squaredNorm();
    auto bound = [&](std::int64_t k) { return 4.0 * q.L * D2 / static_cast<double>(k * k); };

    MinRecipe exact;
    exact.K = K;
    exact.L = q.L;
    exact.exact_prox = true;
    Tracker te;
    OracleStream stream(seed);
    catalyst_run(f, exact, x0, stream, [&](const CatalystStep& s) { te.add(q.gap(s.x_tilde), bound(s.k)); });
    rep.lines.push_back(te.line("d=" + std::to_string(d) + " exact prox, gap / (4L D^2/k^2), k<=100"));

    MinRecipe sgd = recipe_smooth(q.L, 16.0 * q.L * D2 / static_cast<double>(K * K), 0.0, D2);
    sgd.K = K;
    Tracker ts;
    std::int64_t sfo_mismatch = 0;
    catalyst_run(f, sgd, x0, stream, [&](const CatalystStep& s) {
      ts.add(q.gap(s.x_tilde), bound(s.k) + 2.0 * static_cast<double>(s.k) * sgd.delta);
      if (s.sfo_calls != 8 * s.k) ++sfo_mismatch;
    });
    rep.lines.push_back(ts.line("d=" + std::to_string(d) + " sgd_prox T=" + std::to_string(sgd.T) +
                                ", gap / (4L D^2/k^2 + 2k delta), k<=100"));
    rep.lines.push_back(compare("d=" + std::to_string(d) + " sfo_calls != 8k count", static_cast<double>(sfo_mismatch), 0));
  }
  return rep;
}

SuiteReport r_catalyst_halving() {
  SuiteReport rep;
  rep.time_limit = 10;
  const std::uint64_t seed = 300;
  const QuadraticInstance q = gen_quadratic(20, 1.0, 0.01, seed);
  const SmoothObjective f = q.objective();
  const Vector x0 = random_feasible_point(f.set, seed, 0);
  const double Delta0 = q.gap(x0);
  const MinRecipe r = recipe_restarted(q.L, q.mu, Delta0 / 4096.0, 0.0, Delta0);
  rep.lines.push_back(compare("epochs planned (= 12)", static_cast<double>(std::abs(r.epochs - 12)), 0));
  OracleStream stream(seed);
  r_catalyst_run(f, r, x0, stream, [&](const CatalystStep& s) {
    if (s.k != r.K) return;
    rep.lines.push_back(compare("epoch " + std::to_string(s.epoch) + " gap vs 2^-e Delta0", q.gap(s.x_tilde),
                                std::ldexp(Delta0, -static_cast<int>(s.epoch))));
  });
  return rep;
}

SuiteReport sgd_certificate_suite() {
  SuiteReport rep;
  rep.time_limit = 60;
  const std::uint64_t seed = 400;
  const QuadraticInstance q = gen_quadratic(10, 1.0, 0.0, seed);
  const double beta = 1.0, t0 = 8.0;
  const Vector center = random_feasible_point(q.objective().set, seed, 0);
  std::vector<Vector> us{exact_prox(q, center, beta)};
  for (std::uint64_t i = 1; i <= 5; ++i) us.push_back(random_feasible_point(q.objective().set, seed, i));

  for (double sigma : {0.1, 1.0}) {
    const SmoothObjective f = q.objective(sigma);
    const ProxSubproblem sub{f, beta, center};
    for (std::int64_t T : {100, 1000}) {
      const double m = sub.mu_phi();
      const InexactnessCertificate c = sgd_certificate(m, sub.L_phi(), sigma, t0, T);
      std::vector<double> lhs(us.size(), 0.0);
      const int seeds = 200;
      for (int s = 0; s < seeds; ++s) {
        OracleStream stream(derive_seed(seed, {static_cast<std::uint64_t>(T), static_cast<std::uint64_t>(s)}));
        const SolverOutput out = sgd_prox(sub, SgdOptions{T, t0, std::nullopt}, stream);
        const double phi_bar = sub.value(out.ergodic);
        for (std::size_t i = 0; i < us.size(); ++i) {
          lhs[i] += phi_bar - sub.value(us[i]) + 0.5 * c.alpha * m * (us[i] - out.last).squaredNorm();
        }
      }
      Tracker tr;
      tr.slack = 0.2;
      for (std::size_t i = 0; i < us.size(); ++i) {
        tr.add(lhs[i] / seeds, 0.5 * c.eps * m * (us[i] - center).squaredNorm() + c.delta);
      }
      rep.lines.push_back(tr.line("sigma=" + num(sigma) + " T=" + std::to_string(T) + " mean lhs / rhs over u"));
      rep.lines.push_back(compare("sigma=" + num(sigma) + " T=" + std::to_string(T) + " delta vs 32 sigma^2/(mu_phi T)",
                                  c.delta, 32.0 * sigma * sigma / (m * static_cast<double>(T))));
    }
  }
  return rep;
}

SuiteReport sreg_contraction() {
  SuiteReport rep;
  rep.time_limit = 120;
  const std::uint64_t seed = 500;
  const double mu = 1.0, L = 10.0;
  const SaddleInstance s = gen_saddle(10, 10, L, mu, mu, seed);
  const Vector x0 = random_feasible_point(s.objective().setX, seed, 0);
  const Vector y0 = random_feasible_point(s.objective().setY, seed, 1);
  const double d0 = s.dist_sq(x0, y0);
  const double t0 = sreg_schedule(L, mu).t0;

  const SaddleObjective exact = s.objective(0.0);
  for (int mult : {2, 4, 8}) {
    const auto T = static_cast<std::int64_t>(mult * t0);
    OracleStream stream(seed);
    const SaddleSolverOutput out = sreg(SaddleSubproblem(exact), mu, x0, y0, T, stream);
    const double Td = static_cast<double>(T);
    rep.lines.push_back(compare("sigma=0 T=" + std::to_string(T) + " ||z_T-z*||^2 vs 6 t0^2/T^2 ||z0-z*||^2",
                                s.dist_sq(out.last.x(), out.last.y()), 6.0 * t0 * t0 / (Td * Td) * d0));
  }

  const double sigma = 1.0;
  const SaddleObjective noisy = s.objective(sigma);
  for (int mult : {2, 4, 8}) {
    const auto T = static_cast<std::int64_t>(mult * t0);
    const double Td = static_cast<double>(T);
    double mean = 0;
    const int seeds = 200;
    for (int r = 0; r < seeds; ++r) {
      OracleStream stream(derive_seed(seed, {static_cast<std::uint64_t>(T), static_cast<std::uint64_t>(r)}));
      const SaddleSolverOutput out = sreg(SaddleSubproblem(noisy), mu, x0, y0, T, stream);
      mean += s.dist_sq(out.last.x(), out.last.y()) / seeds;
    }
    const double bound = 6.0 * t0 * t0 / (Td * Td) * d0 + 768.0 * sigma * sigma / (mu * mu * Td);
    rep.lines.push_back(compare("sigma=1 T=" + std::to_string(T) + " mean ||z_T-z*||^2 vs bound, 25% slack", mean,
                                bound, 0.25));
  }
  return rep;
}

SuiteReport minimax_det_composite() {
  SuiteReport rep;
  rep.time_limit = 120;
  const std::uint64_t seed = 600;
  const SaddleInstance s = gen_saddle(5, 8, 2.0, 0.0, 1.0, seed);
  const SaddleObjective F = s.objective();
  const Vector x0 = Vector::Zero(s.dx()), y0 = Vector::Zero(s.dy());
  const double D2 = (s.x_star - x0).squaredNorm();
  const double ratio = s.gap(x0) / D2;
  const double init = 2.0 * s.mu_d * D2 + s.mu_d * (s.inner_argmax(x0) - y0).squaredNorm();
  for (std::int64_t K : {20, 40, 80}) {
    const MinimaxRecipe r = recipe_det(F, K, ratio);
    OracleStream stream(seed);
    const MinimaxResult res = catalyst_minimax_run(F, r, x0, y0, stream);
    rep.lines.push_back(compare("K=" + std::to_string(K) + " T=" + std::to_string(r.T) +
                                    " composite vs 12/K^2 [2 mu_d ||x*-x0||^2 + mu_d ||y0*-y0||^2]",
                                s.composite(res.x_tilde, res.y, s.mu_d / 6.0),
                                12.0 / static_cast<double>(K * K) * init));
  }
  return rep;
}

SuiteReport minimax_restart_halving() {
  SuiteReport rep;
  rep.time_limit = 120;
  const std::uint64_t seed = 700;
  const SaddleInstance s = gen_saddle(20, 20, 20.0, 0.05, 1.0, seed);
  const SaddleObjective F = s.objective();
  const Vector x0 = random_feasible_point(F.setX, seed, 0), y0 = random_feasible_point(F.setY, seed, 1);
  const double w = s.mu_d / 6.0;
  const double m0 = s.composite(x0, y0, w);
  const MinimaxRecipe r = recipe_det_sc(F, 8);
  OracleStream stream(seed);
  r_catalyst_minimax_run(F, r, x0, y0, stream, [&](const MinimaxStep& st) {
    if (st.k != r.K) return;
    rep.lines.push_back(compare("epoch " + std::to_string(st.epoch) + " composite vs 2^-e composite_0",
                                s.composite(st.x_tilde, st.y_last, w), std::ldexp(m0, -static_cast<int>(st.epoch))));
  });
  return rep;
}

SuiteReport minimax_stoch_halving() {
  SuiteReport rep;
  rep.time_limit = 600;
  ExperimentConfig cfg;
  cfg.problem.kind = ProblemKind::saddle;
  cfg.problem.dx = 2;
  cfg.problem.dy = 2;
  cfg.problem.L = 1.5;
  cfg.problem.mu_p = 1.0;
  cfg.problem.mu_d = 1.0;
  cfg.problem.sigma = 0.5;
  cfg.problem.seed = 800;
  cfg.problem.offset_scale = 100.0;
  cfg.problem.random_start = false;
  cfg.algorithm.name = Algorithm::r_catalyst_minimax_stoch;
  const std::int64_t E = 4;
  cfg.algorithm.epochs = E;
  cfg.seeds = 50;
  cfg.base_seed = 8000;
  const RunTrace trace = run_experiment(cfg);

  std::vector<double> mean(E + 1, 0.0);
  std::vector<std::int64_t> sfo(E + 1, 0);
  std::vector<int> hits(E + 1, 0);
  for (const TraceRow& row : trace) {
    if (row.k < 0 || row.k > E) continue;
    mean[row.k] += row.composite_gap;
    sfo[row.k] = row.sfo_calls;
    ++hits[row.k];
  }
  for (std::int64_t e = 0; e <= E; ++e) mean[e] /= std::max(hits[e], 1);
  const double Delta0 = mean[0];
  rep.lines.push_back(compare("runs completed (of 50)", 50.0 - hits[E], 0));
  for (std::int64_t e = 1; e <= E; ++e) {
    rep.lines.push_back(compare("epoch " + std::to_string(e) + " mean composite vs 2^-e Delta0, 30% slack", mean[e],
                                std::ldexp(Delta0, -static_cast<int>(e)), 0.3));
  }

  // Doubling 1/eps adds one epoch; measured SFO growth must stay below 4.4x.
  rep.lines.push_back(compare("SFO(eps/2) / SFO(eps), eps = Delta0/8",
                              static_cast<double>(sfo[E]) / static_cast<double>(sfo[E - 1]), 4.4));

  // Regime check: the sigma-free part of the last epoch's budget is a minority.
  const SaddleInstance s =
      gen_saddle(cfg.problem.dx, cfg.problem.dy, cfg.problem.L, cfg.problem.mu_p, cfg.problem.mu_d, cfg.problem.seed,
                 cfg.problem.offset_scale);
  const MinimaxRecipe with_noise = recipe_stoch_sc(s.objective(cfg.problem.sigma), Delta0, E);
  const MinimaxRecipe quiet = recipe_stoch_sc(s.objective(cfg.problem.sigma * 1e-6), Delta0, E);
  rep.lines.push_back(compare("sigma-free share of T_E (sigma-dominated when < 0.5)",
                              static_cast<double>(quiet.epoch_T.back()) / static_cast<double>(with_noise.epoch_T.back()),
                              0.5));
  return rep;
}

// ---- properties -----------------------------------------------------------

CheckLine projection_properties() {
  std::mt19937_64 rng(900);
  std::normal_distribution<double> n01;
  std::uniform_int_distribution<int> dim_dist(1, 12);
  std::int64_t bad = 0;
  double worst = 0;
  for (int i = 0; i < 10000; ++i) {
    const Index d = dim_dist(rng);
    FeasibleSet set = FeasibleSet::ball(d, 1.0);
    switch (i % 4) {
      case 0:
        set = FeasibleSet::ball(Vector::NullaryExpr(d, [&] { return n01(rng); }), 0.1 + std::abs(n01(rng)));
        break;
      case 1: {
        const Vector lo = Vector::NullaryExpr(d, [&] { return n01(rng); });
        set = FeasibleSet::box(lo, lo + Vector::NullaryExpr(d, [&] { return std::abs(n01(rng)); }));
        break;
      }
      case 2:
        set = FeasibleSet::simplex(d, 0.5 + std::abs(n01(rng)));
        break;
      default:
        set = FeasibleSet::product(FeasibleSet::ball(d, 1.0), FeasibleSet::simplex(d, 1.0));
        break;
    }
    const Index n = set.dim();
    const Vector a = 3.0 * Vector::NullaryExpr(n, [&] { return n01(rng); });
    const Vector b = 3.0 * Vector::NullaryExpr(n, [&] { return n01(rng); });
    const Vector pa = set.project(a), pb = set.project(b);
    const double idem = (set.project(pa) - pa).norm();
    const double expand = (pa - pb).norm() - (a - b).norm();
    worst = std::max({worst, idem, expand});
    if (idem > 1e-12 * (1.0 + pa.norm()) || expand > 1e-12 * (1.0 + (a - b).norm()) || !set.contains(pa)) ++bad;
  }
  return CheckLine{"projection idempotence / nonexpansiveness, 10^4 cases: failures", static_cast<double>(bad), 0,
                   bad == 0};
}

CheckLine ergodic_normalization() {
  // Started at an interior solution every iterate is that solution, so the
  // ergodic mean reproduces it only if its weights sum to one.
  double worst = 0;
  const QuadraticInstance q = gen_quadratic(6, 1.0, 0.0, 901);
  const SmoothObjective f = q.objective();
  for (std::int64_t T : {8, 100, 10000}) {
    OracleStream stream(1);
    const SolverOutput out = sgd_prox(ProxSubproblem{f, 1.0, q.x_star}, SgdOptions{T, 8.0, std::nullopt}, stream);
    worst = std::max(worst, (out.ergodic - q.x_star).norm() / q.x_star.norm());
  }
  const SaddleInstance s = gen_saddle(4, 4, 5.0, 1.0, 1.0, 902);
  const SaddleObjective F = s.objective();
  for (std::int64_t T : {10, 1000}) {
    const SaddleSolverOutput out = reg(SaddleSubproblem(F), 1.0, s.x_star, s.y_star, T, [](std::int64_t) { return 0.2; });
    const double err = std::sqrt(s.dist_sq(out.ergodic.x(), out.ergodic.y()));
    worst = std::max(worst, err / std::sqrt(s.x_star.squaredNorm() + s.y_star.squaredNorm()));
  }
  return CheckLine{"ergodic weights sum to one: relative error", worst, 1e-12, worst <= 1e-12};
}

CheckLine closed_forms() {
  double worst = 0;
  MinRecipe r;
  r.K = 10000;
  r.L = 1.0;
  double prod = 1.0;
  for (std::int64_t k = 2; k <= r.K; ++k) {
    prod *= 1.0 - r.gamma(k);
    const double kd = static_cast<double>(k);
    worst = std::max(worst, std::abs(prod - 2.0 / (kd * (kd + 1.0))) / prod);
    if (k % 997 == 0) worst = std::max(worst, std::abs(min_gamma_product(r, k) - prod) / prod);
  }
  for (double t0 : {8.0, 40.0}) {
    double lam = 1.0;
    for (std::int64_t t = 1; t <= 10000; ++t) {
      lam *= 1.0 - 2.0 * sgd_stepsize(2.0, t0, t);
      worst = std::max(worst, std::abs(sgd_lambda(t0, t) - lam) / lam);
    }
  }
  const SregSchedule sch = sreg_schedule(10.0, 1.0);
  double up = 1.0;
  for (std::int64_t t = 0; t < 10000; ++t) {
    up *= 1.0 + sch.mu * sch.eta(t);
    worst = std::max(worst, std::abs(sch.lambda(t + 1) - up) / up);
  }
  return CheckLine{"Gamma_k and Lambda_t closed forms, k,t<=10^4: relative error", worst, 1e-10, worst <= 1e-10};
}

std::vector<CheckLine> oracle_moments() {
  std::vector<CheckLine> out;
  const QuadraticInstance q = gen_quadratic(5, 1.0, 0.1, 903);
  const double sigma = 0.7;
  const SmoothObjective f = q.objective(sigma);
  const Vector x = random_feasible_point(f.set, 903, 0);
  const Vector g = q.gradient(x);
  const int N = 40000;
  OracleStream stream(903);
  Vector mean = Vector::Zero(5);
  double var = 0;
  for (int i = 0; i < N; ++i) {
    const Vector e = sample_grad(f, x, stream) - g;
    mean += e / N;
    var += e.squaredNorm() / N;
  }
  out.push_back(compare("gradient oracle: ||mean noise|| / sigma", mean.norm() / sigma, 0.05));
  out.push_back(compare("gradient oracle: |E||noise||^2 / sigma^2 - 1|", std::abs(var / (sigma * sigma) - 1.0), 0.05));

  const SaddleInstance s = gen_saddle(3, 4, 2.0, 0.5, 1.0, 904);
  const SaddleObjective F = s.objective(sigma);
  const Vector xs = random_feasible_point(F.setX, 904, 0), ys = random_feasible_point(F.setY, 904, 1);
  Vector gx0, gy0, gx, gy;
  F.operator_into(xs, ys, gx0, gy0);
  Vector mz = Vector::Zero(7);
  double vz = 0;
  for (int i = 0; i < N; ++i) {
    sample_operator_into(F, xs, ys, stream, gx, gy);
    Vector e(7);
    e << gx - gx0, gy - gy0;
    mz += e / N;
    vz += e.squaredNorm() / N;
  }
  out.push_back(compare("saddle oracle: ||mean noise|| / sigma", mz.norm() / sigma, 0.05));
  out.push_back(compare("saddle oracle: |E||noise||^2 / sigma^2 - 1|", std::abs(vz / (sigma * sigma) - 1.0), 0.05));
  return out;
}

CheckLine csv_round_trip() {
  std::mt19937_64 rng(905);
  std::uniform_int_distribution<std::uint64_t> bits;
  RunTrace t;
  const double specials[] = {0.0, -0.0, 1e-310, std::numeric_limits<double>::max(), std::numeric_limits<double>::min(),
                             0.1, 1.0 / 3.0, kMissing};
  for (int i = 0; i < 2000; ++i) {
    TraceRow r;
    r.run_id = i;
    r.seed = bits(rng);
    r.k = static_cast<std::int64_t>(bits(rng) % 100000);
    r.sfo_calls = static_cast<std::int64_t>(bits(rng) >> 2);
    auto pick = [&]() {
      if (bits(rng) % 4 == 0) return specials[bits(rng) % std::size(specials)];
      double v;
      do {
        const std::uint64_t b = bits(rng);
        std::memcpy(&v, &b, sizeof v);
      } while (!std::isfinite(v));
      return v;
    };
    r.primal_gap = pick();
    r.dist_primal_sq = pick();
    r.dist_dual_sq = pick();
    r.composite_gap = pick();
    r.wall_ms = pick();
    t.push_back(r);
  }
  const bool ok = same_trace(parse_csv(to_csv(t)), t, false);
  return CheckLine{"CSV round-trip of 2000 random rows: mismatches", ok ? 0.0 : 1.0, 0, ok};
}

CheckLine determinism() {
  ExperimentConfig cfg;
  cfg.problem.kind = ProblemKind::quadratic;
  cfg.problem.d = 8;
  cfg.problem.sigma = 0.3;
  cfg.problem.seed = 906;
  cfg.algorithm.name = Algorithm::catalyst_sgd;
  cfg.algorithm.K = 20;
  cfg.algorithm.T = 50;
  cfg.seeds = 4;
  cfg.base_seed = 77;
  const RunTrace a = run_experiment(cfg);
  const RunTrace b = run_experiment(cfg);
  bool ok = same_trace(a, b, true);
  // Each run in isolation must reproduce its slice of the batch.
  RunTrace serial;
  for (std::int64_t i = 0; i < cfg.seeds; ++i) {
    const RunTrace one = run_single(cfg, i, cfg.base_seed + static_cast<std::uint64_t>(i));
    serial.insert(serial.end(), one.begin(), one.end());
  }
  ok = ok && same_trace(a, serial, true);

  ExperimentConfig sad;
  sad.problem.kind = ProblemKind::saddle;
  sad.problem.dx = 3;
  sad.problem.dy = 3;
  sad.problem.L = 4;
  sad.problem.mu_p = 1;
  sad.problem.mu_d = 1;
  sad.problem.sigma = 0.5;
  sad.problem.seed = 907;
  sad.algorithm.name = Algorithm::sreg;
  sad.algorithm.T = 200;
  sad.algorithm.trace_every = 10;
  sad.seeds = 3;
  ok = ok && same_trace(run_experiment(sad), run_experiment(sad), true);
  return CheckLine{"bitwise determinism under fixed seeds: mismatches", ok ? 0.0 : 1.0, 0, ok};
}

SuiteReport properties() {
  SuiteReport rep;
  rep.time_limit = 60;
  rep.lines.push_back(projection_properties());
  rep.lines.push_back(ergodic_normalization());
  rep.lines.push_back(closed_forms());
  for (CheckLine& l : oracle_moments()) rep.lines.push_back(std::move(l));
  rep.lines.push_back(csv_round_trip());
  rep.lines.push_back(determinism());
  return rep;
}

using SuiteFn = SuiteReport (*)();

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"reg-linear-rate", reg_linear_rate},
      {"catalyst-smooth-bound", catalyst_smooth_bound},
      {"r-catalyst-halving", r_catalyst_halving},
      {"sgd-certificate", sgd_certificate_suite},
      {"sreg-contraction", sreg_contraction},
      {"minimax-det-composite", minimax_det_composite},
      {"minimax-restart-halving", minimax_restart_halving},
      {"minimax-stoch-halving", minimax_stoch_halving},
      {"properties", properties},
  };
  return r;
}

}  // namespace

bool SuiteReport::pass() const {
  if (lines.empty()) return false;
  for (const CheckLine& l : lines)
    if (!l.pass) return false;
  return time_limit <= 0 || seconds <= time_limit;
}

double SuiteReport::worst_ratio() const {
  double w = 0;
  for (const CheckLine& l : lines)
    if (l.bound > 0) w = std::max(w, l.measured / l.bound);
  return w;
}

const std::vector<std::string>& acceptance_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& kv : registry()) n.push_back(kv.first);
    return n;
  }();
  return names;
}

SuiteReport check_acceptance(const std::string& suite) {
  for (const auto& [name, fn] : registry()) {
    if (name != suite) continue;
    const auto start = std::chrono::steady_clock::now();
    SuiteReport rep = fn();
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep.name = name;
    return rep;
  }
  std::string list;
  for (const std::string& n : acceptance_suites()) list += (list.empty() ? "" : ", ") + n;
  throw ConfigError("unknown suite \"" + suite + "\"; expected one of: " + list);
}

std::string format_report(const SuiteReport& r, bool verbose) {
  std::string s;
  char buf[512];
  if (verbose) {
    for (const CheckLine& l : r.lines) {
      std::snprintf(buf, sizeof buf, "  [%s] %s: measured %.6g, bound %.6g, margin %.3g\n", l.pass ? "ok" : "FAIL",
                    l.label.c_str(), l.measured, l.bound, l.margin());
      s += buf;
    }
    std::snprintf(buf, sizeof buf, "  [%s] runtime: %.2f s, limit %.0f s\n",
                  r.time_limit <= 0 || r.seconds <= r.time_limit ? "ok" : "FAIL", r.seconds, r.time_limit);
    s += buf;
  }
  std::snprintf(buf, sizeof buf, "%s %s: %zu checks, worst measured/bound %.4g, %.2f s\n", r.pass() ? "PASS" : "FAIL",
                r.name.c_str(), r.lines.size(), r.worst_ratio(), r.seconds);
  s += buf;
  return s;
}

}  // namespace ckit
