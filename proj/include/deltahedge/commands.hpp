#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "deltahedge/market_data.hpp"

namespace deltahedge {

/// Exit codes: 0 success, 1 usage/config error, 2 data error, 3 runtime.
enum ExitCode { kExitOk = 0, kExitConfig = 1, kExitData = 2, kExitRuntime = 3 };

/// Writes bars.csv, options.csv, sentiment.csv, vix.csv under out_dir.
void cmd_synth(const SynthParams& params, const std::string& out_dir);

/// Trains and checkpoints the trading policy and the hedging candidates.
/// Output goes to out_dir (or run.policy_dir, or "<out>/policies").
void cmd_train(const std::string& config_path, std::uint64_t* seed_override,
               const std::string* out_override);

/// Runs one backtest and writes the report files.
void cmd_backtest(const std::string& config_path, std::uint64_t* seed_override,
                  const std::string* out_override);

/// Inputs are report directories (containing report.json) or config files
/// (backtests run in-process); the first is the reference strategy.
void cmd_compare(const std::vector<std::string>& inputs, const std::string& out_dir,
                 std::uint64_t seed, int resamples, bool svg);

/// Prints the metric tables of one or more written reports; optionally
/// re-renders equity.svg.
void cmd_report(const std::vector<std::string>& dirs, bool svg);

}  // namespace deltahedge
