#include "deltahedge/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "deltahedge/config.hpp"
#include "deltahedge/coordinator.hpp"
#include "deltahedge/errors.hpp"
#include "deltahedge/report.hpp"
#include "deltahedge/svg.hpp"

namespace deltahedge {

void cmd_synth(const SynthParams& params, const std::string& out_dir) {
  const SynthDataset data = synth_generate(params);
  std::filesystem::create_directories(out_dir);
  write_bars(out_dir + "/bars.csv", data.bars);
  write_option_chain(out_dir + "/options.csv", data.chain);
  write_sentiment(out_dir + "/sentiment.csv", data.sentiment);
  write_vix(out_dir + "/vix.csv", data.vix);
}

namespace {

RunConfig load_config(const std::string& path, std::uint64_t* seed_override,
                      const std::string* out_override) {
  RunConfig cfg = parse_config_file(path);
  if (seed_override) cfg.seed = *seed_override;
  if (out_override) cfg.out_dir = *out_override;
  return cfg;
}

}  // namespace

void cmd_train(const std::string& config_path, std::uint64_t* seed_override,
               const std::string* out_override) {
  RunConfig cfg = load_config(config_path, seed_override, out_override);
  const Dataset data = load_dataset(cfg);
  const std::string out =
      !cfg.policy_dir.empty() ? cfg.policy_dir : cfg.out_dir + "/policies";
  const auto written = run_train(cfg, data, out);
  std::cout << "wrote " << written.size() << " checkpoints to " << out << "\n";
}

void cmd_backtest(const std::string& config_path, std::uint64_t* seed_override,
                  const std::string* out_override) {
  RunConfig cfg = load_config(config_path, seed_override, out_override);
  const Dataset data = load_dataset(cfg);
  const BacktestReport report = run_backtest(cfg, data);
  write_report(report, cfg.out_dir, cfg.svg);
  std::cout << report.strategy << ": " << report.dates.size() << " days";
  if (report.has_metrics) {
    std::cout << "\n" << format_metric_row(report.strategy, report.metrics);
  }
  std::cout << "\nreport written to " << cfg.out_dir << "\n";
}

void cmd_compare(const std::vector<std::string>& inputs, const std::string& out_dir,
                 std::uint64_t seed, int resamples, bool svg) {
  if (inputs.size() < 2) throw ConfigError("compare needs at least two inputs");
  std::vector<LoadedReport> reports;
  for (const auto& input : inputs) {
    if (std::filesystem::is_directory(input)) {
      reports.push_back(load_report(input));
      continue;
    }
    // Config file: run the backtest in-process.
    RunConfig cfg = parse_config_file(input);
    const Dataset data = load_dataset(cfg);
    const BacktestReport report = run_backtest(cfg, data);
    LoadedReport loaded;
    loaded.strategy = report.strategy;
    loaded.seed = report.seed;
    loaded.dates = report.dates;
    loaded.equity = report.equity;
    loaded.returns = report.returns;
    reports.push_back(std::move(loaded));
  }
  CompareOptions opts;
  opts.resamples = resamples;
  opts.seed = seed;
  opts.svg = svg;
  write_comparison(reports, out_dir, opts);

  for (const auto& r : reports) {
    std::cout << format_metric_row(r.strategy, compute_metrics(r.equity)) << "\n";
  }
  std::cout << "comparison written to " << out_dir << "\n";
}

void cmd_report(const std::vector<std::string>& dirs, bool svg) {
  for (const auto& dir : dirs) {
    const LoadedReport r = load_report(dir);
    if (r.equity.size() >= 2) {
      std::cout << format_metric_row(r.strategy, compute_metrics(r.equity)) << "\n";
    } else {
      std::cout << r.strategy << ": " << r.equity.size() << " data point(s)\n";
    }
    for (const auto& window : regime_presets()) {
      if (auto sliced = regime_slice(r.dates, r.equity, window)) {
        std::cout << format_metric_row("  [" + window.label + "]", *sliced) << "\n";
      }
    }
    if (svg) {
      write_line_chart(dir + "/equity.svg", "Equity curve: " + r.strategy,
                       {{r.strategy, r.dates, r.equity}});
    }
  }
}

}  // namespace deltahedge
