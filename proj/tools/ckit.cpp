#include <cstdio>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "ckit/bench/acceptance.hpp"
#include "ckit/bench/config.hpp"
#include "ckit/bench/fit.hpp"
#include "ckit/bench/runner.hpp"
#include "ckit/core/types.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kConfig = 2;

int cmd_run(const std::string& config_path, const std::string& out_dir, std::int64_t seeds) {
  ckit::ExperimentConfig cfg = ckit::load_config(config_path);
  if (seeds > 0) cfg.seeds = seeds;
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    cfg.output = (std::filesystem::path(out_dir) / "trace.csv").string();
  }
  const ckit::RunTrace trace = ckit::run_experiment(cfg);
  if (cfg.output.empty()) {
    ckit::write_csv(std::cout, trace);
  } else {
    std::printf("%s: %zu rows from %lld runs\n", cfg.output.c_str(), trace.size(), static_cast<long long>(cfg.seeds));
  }
  return kOk;
}

int cmd_fit(const std::string& path, const std::string& model_name) {
  const ckit::RateModel model = ckit::parse_rate_model(model_name);
  const ckit::RateFit fit = ckit::fit_rate(ckit::read_csv_file(path), model);
  if (model == ckit::RateModel::power) {
    std::printf("model power exponent %.6g residual %.3g rows %zu\n", fit.exponent, fit.residual, fit.n);
  } else {
    std::printf("model geometric factor %.6g residual %.3g rows %zu\n", fit.factor, fit.residual, fit.n);
  }
  return kOk;
}

int cmd_accept(const std::string& suite) {
  const ckit::SuiteReport rep = ckit::check_acceptance(suite);
  std::fputs(ckit::format_report(rep, true).c_str(), stdout);
  return rep.pass() ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ckit: catalyst solvers and benchmark harness"};
  app.require_subcommand(1);

  std::string config_path, out_dir, trace_path, model = "power", suite;
  std::int64_t seeds = 0;

  CLI::App* run = app.add_subcommand("run", "Run an experiment from a JSON config");
  run->add_option("--config", config_path, "Config file")->required();
  run->add_option("--out", out_dir, "Output directory (trace.csv is written there)");
  run->add_option("--seeds", seeds, "Override the seed count")->check(CLI::PositiveNumber);

  CLI::App* fit = app.add_subcommand("fit", "Fit a convergence rate to a trace");
  fit->add_option("--trace", trace_path, "Trace CSV")->required();
  fit->add_option("--model", model, "power or geometric")->check(CLI::IsMember({"power", "geometric"}));

  CLI::App* accept = app.add_subcommand("accept", "Run an acceptance suite");
  std::string suites;
  for (const std::string& s : ckit::acceptance_suites()) suites += (suites.empty() ? "" : ", ") + s;
  accept->add_option("--suite", suite, "One of: " + suites)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run) return cmd_run(config_path, out_dir, seeds);
    if (*fit) return cmd_fit(trace_path, model);
    return cmd_accept(suite);
  } catch (const ckit::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfig;
  } catch (const ckit::InsufficientData& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFail;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfig;
  }
}
