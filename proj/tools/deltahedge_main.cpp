#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "deltahedge/commands.hpp"
#include "deltahedge/errors.hpp"

using namespace deltahedge;

int main(int argc, char** argv) {
  CLI::App app{"deltahedge: daily options-hedged portfolio backtesting engine"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  app.add_option("--config", config_path, "configuration file (INI)");
  app.add_option("--seed", seed, "override run.seed");
  app.add_option("--out", out_dir, "override the output directory");

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic four-feed dataset");
  SynthParams params;
  std::string synth_start = "2020-01-02";
  int crash_start = -1, crash_days = 0;
  double crash_mu = -1.5, crash_sigma = 0.45;
  synth->add_option("--days", params.n_days, "trading days (>= 2)")->required();
  synth->add_option("--s0", params.s0, "initial price");
  synth->add_option("--mu", params.mu, "annualized drift");
  synth->add_option("--sigma", params.sigma, "annualized volatility");
  synth->add_option("--rate", params.rate, "pricing rate for the option chain");
  synth->add_option("--start", synth_start, "first calendar date (ISO)");
  synth->add_option("--crash-start", crash_start, "trading day index where a crash regime begins");
  synth->add_option("--crash-days", crash_days, "length of the crash regime in trading days");
  synth->add_option("--crash-mu", crash_mu, "crash regime drift");
  synth->add_option("--crash-sigma", crash_sigma, "crash regime volatility");

  // train / backtest
  auto* train = app.add_subcommand("train", "train and checkpoint the policies");
  auto* backtest = app.add_subcommand("backtest", "run one strategy over the test range");

  // compare
  auto* compare = app.add_subcommand("compare", "metric table + bootstrap tests across runs");
  std::vector<std::string> compare_inputs;
  int resamples = 10000;
  bool compare_svg = false;
  compare->add_option("inputs", compare_inputs,
                      "report directories or config files (first = reference)")
      ->expected(-2);
  compare->add_option("--resamples", resamples, "bootstrap resamples");
  compare->add_flag("--svg", compare_svg, "emit compare.svg");

  // report
  auto* report = app.add_subcommand("report", "print metric tables of written reports");
  std::vector<std::string> report_dirs;
  bool report_svg = false;
  report->add_option("dirs", report_dirs, "report directories")->expected(-1);
  report->add_flag("--svg", report_svg, "render equity.svg");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) {
      params.seed = seed.value_or(7);
      params.start = Date::parse(synth_start);
      if (crash_start >= 0 && crash_days > 0) {
        params.regimes.push_back({crash_start, crash_mu, crash_sigma});
        params.regimes.push_back({crash_start + crash_days, params.mu, params.sigma});
      }
      cmd_synth(params, out_dir.value_or("data"));
    } else if (train->parsed()) {
      if (config_path.empty()) throw ConfigError("train requires --config");
      cmd_train(config_path, seed ? &*seed : nullptr, out_dir ? &*out_dir : nullptr);
    } else if (backtest->parsed()) {
      if (config_path.empty()) throw ConfigError("backtest requires --config");
      cmd_backtest(config_path, seed ? &*seed : nullptr, out_dir ? &*out_dir : nullptr);
    } else if (compare->parsed()) {
      cmd_compare(compare_inputs, out_dir.value_or("compare"), seed.value_or(7), resamples,
                  compare_svg);
    } else if (report->parsed()) {
      cmd_report(report_dirs, report_svg);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
