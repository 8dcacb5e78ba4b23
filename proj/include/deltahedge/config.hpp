#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "deltahedge/baselines.hpp"
#include "deltahedge/engine.hpp"
#include "deltahedge/ensemble.hpp"
#include "deltahedge/learners.hpp"

namespace deltahedge {

/// Full run configuration: file values over documented defaults, CLI
/// --seed/--out over file values. Unknown sections or keys are rejected.
struct RunConfig {
  // [data]
  std::string bars_path;
  std::string options_path;
  std::string sentiment_path;
  std::string vix_path;
  bool require_sentiment = false;
  bool require_vix = false;
  int multiplier = 100;

  // [costs]
  CostModel costs;

  // [signals]
  SignalConfig signals;

  // [rl]
  int timesteps = 20000;
  TrainConfig train;
  int d_msg = 8;
  int inbox_window = 5;
  int sharpe_window = 60;
  double rf_annual = 0.0;
  int phase_steps = 2500;
  bool train_standalone = false;

  // [ensemble]
  RetrainSchedule schedule;
  bool validation_costs = true;

  // [run]
  StrategySpec strategy;
  std::uint64_t seed = 7;
  double initial_cash = 100000.0;
  double rate = 0.02;
  std::optional<Date> train_start;
  std::optional<Date> train_end;
  std::optional<Date> test_start;
  std::optional<Date> test_end;
  std::string policy_dir;
  std::string out_dir = "out";
  bool svg = false;
  int annualization = 252;

  [[nodiscard]] double rf_daily() const { return rf_annual / annualization; }

  /// Engine view of this config with the given observation layout.
  [[nodiscard]] EngineConfig engine(bool include_options, bool allow_hedging) const;

  /// Canonical key=value dump embedded in reports.
  [[nodiscard]] std::string echo() const;
};

RunConfig parse_config_file(const std::string& path);

/// Loads the four feeds named in `cfg` and aligns them. Paths may be empty
/// for the optional feeds.
Dataset load_dataset(const RunConfig& cfg);

}  // namespace deltahedge
