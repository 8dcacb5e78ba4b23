#pragma once

#include <string>
#include <vector>

#include "deltahedge/agents.hpp"
#include "deltahedge/market_data.hpp"
#include "deltahedge/policy.hpp"
#include "deltahedge/portfolio.hpp"
#include "deltahedge/sharpe.hpp"
#include "deltahedge/signals.hpp"

namespace deltahedge {

/// Aligned inputs for one run; slices[i] corresponds to bars[i].
struct Dataset {
  std::vector<Bar> bars;
  std::vector<MarketSlice> slices;
};

struct EngineConfig {
  CostModel costs;
  MarkParams mark;
  int multiplier = 100;
  SignalConfig signals;
  double initial_cash = 100000.0;
  int sharpe_window = 60;
  double rf_daily = 0.0;
  ObservationLayout layout;
  int inbox_window = 5;
  bool allow_hedging = true;
  bool exchange_messages = true;
};

/// Everything the engine recorded about one processed day.
struct DayRecord {
  Date date;
  double value = 0.0;   // end-of-day marked portfolio value
  double ret = 0.0;     // vs previous end-of-day value
  double sr = 0.0;
  double reward = 0.0;  // shared reward delivered to both agents
  double action = 0.0;  // trading action a
  double alpha = 0.0;   // hedge ratio
  double settlement = 0.0;
  SignalValues sig;
  double regime = 0.0;
};

SignalValues compute_signal_values(const Dataset& data, int idx, const SignalConfig& cfg);

/// Today's hedging candidate: among puts with volume >= 1, the expiry
/// closest to 30 calendar days, then the strike closest to spot. Delta
/// comes from the quote when present; otherwise the model via implied vol
/// of the mid (VIX vol if the mid is unusable).
TargetPutView select_target_put(const MarketSlice& slice, const MarkParams& mark);

/// Observation statistics over slice range [begin, end), from market data
/// only; portfolio-dependent features keep identity stats.
Normalizer fit_window_normalizer(const Dataset& data, const EngineConfig& cfg, int begin,
                                 int end);

/// The daily seven-step loop over a slice range, split at the two
/// decision points so callers can inject either agent's action:
///
///   begin_day()               retrieve, settle expiries, signals, pick put
///   trading_observation()/apply_trading(a)
///   hedging_observation()/apply_hedging(alpha)
///   finish_day()              value, shared reward, store messages, advance
///
/// A sub-operation failure throws and leaves the day unapplied (the state
/// rolls back to the day's start).
class DayLoop {
 public:
  DayLoop(const Dataset& data, EngineConfig cfg, int begin, int end);

  void reset();
  [[nodiscard]] bool done() const { return day_ >= end_; }
  [[nodiscard]] int day_index() const { return day_; }
  [[nodiscard]] const MarketSlice& slice() const { return data_->slices[day_]; }

  void begin_day();

  [[nodiscard]] const SignalValues& signal_values() const { return sig_; }
  [[nodiscard]] const RegimeIndicator& regime() const { return regime_; }
  [[nodiscard]] const TargetPutView& target_put() const { return put_; }

  [[nodiscard]] std::vector<double> trading_observation(const PolicyParams& policy) const;
  [[nodiscard]] std::vector<double> hedging_observation(const PolicyParams& policy) const;

  void apply_trading(double a, std::vector<double> message = {});
  void apply_hedging(double alpha, std::vector<double> message = {});

  /// Returns the shared reward R_t.
  double finish_day();

  [[nodiscard]] const PortfolioState& state() const { return state_; }
  [[nodiscard]] double last_value() const { return prev_value_; }
  [[nodiscard]] const std::vector<TradeRecord>& trades() const { return trades_; }
  [[nodiscard]] const std::vector<DayRecord>& records() const { return records_; }
  [[nodiscard]] const std::vector<std::string>& events() const { return events_; }
  [[nodiscard]] const EngineConfig& config() const { return cfg_; }

 private:
  const Dataset* data_;
  EngineConfig cfg_;
  int begin_;
  int end_;

  int day_ = 0;
  PortfolioState state_;
  PortfolioState day_start_state_;
  SharpeTracker tracker_;
  double prev_sr_ = 0.0;
  double prev_value_ = 0.0;

  SignalValues sig_;
  RegimeIndicator regime_;
  TargetPutView put_;
  DayRecord current_;
  bool day_open_ = false;
  bool traded_ = false;

  std::vector<AgentMessage> trading_inbox_;  // messages from the hedging agent
  std::vector<AgentMessage> hedging_inbox_;  // messages from the trading agent
  std::vector<double> pending_trading_msg_;
  std::vector<double> pending_hedging_msg_;

  std::vector<TradeRecord> trades_;
  std::vector<DayRecord> records_;
  std::vector<std::string> events_;
  bool forecast_gap_logged_ = false;
};

}  // namespace deltahedge
