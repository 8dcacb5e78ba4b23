#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "deltahedge/config.hpp"
#include "deltahedge/engine.hpp"
#include "deltahedge/ensemble.hpp"
#include "deltahedge/metrics.hpp"

namespace deltahedge {

struct SelectionRow {
  Date cycle_start;
  std::string candidate;
  std::optional<double> metric;
  bool selected = false;
};

/// Everything one backtest produces.
struct BacktestReport {
  std::string strategy;
  std::uint64_t seed = 0;
  std::vector<Date> dates;      // one entry per test day
  std::vector<double> equity;   // end-of-day marked values, parallel to dates
  std::vector<double> returns;  // equity[t]/equity[t-1] - 1, length dates-1
  std::vector<TradeRecord> trades;
  bool has_metrics = false;     // false for single-day runs
  MetricTable metrics;
  std::vector<std::pair<std::string, MetricTable>> regime_tables;
  std::vector<SelectionRow> selections;
  std::vector<std::string> events;
  std::string config_echo;
};

/// Slice-index range [first, last) covered by the configured test dates.
std::pair<int, int> resolve_range(const Dataset& data, const std::optional<Date>& start,
                                  const std::optional<Date>& end);

/// Runs the configured strategy over the test range. Strategies with
/// learned policies read checkpoints from cfg.policy_dir; the ensemble
/// strategies retrain hedging candidates at every cycle boundary.
BacktestReport run_backtest(const RunConfig& cfg, const Dataset& data);

/// Initial training: joint alternating trading/hedging training on the
/// train range, then the three hedging candidates against the frozen
/// trading policy. Writes checkpoint pairs and per-policy training logs
/// under `out_dir`; returns the written checkpoint base names.
std::vector<std::string> run_train(const RunConfig& cfg, const Dataset& data,
                                   const std::string& out_dir);

}  // namespace deltahedge
