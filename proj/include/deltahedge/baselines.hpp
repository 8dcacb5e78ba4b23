#pragma once

#include <optional>
#include <span>
#include <string>

#include "deltahedge/indicators.hpp"
#include "deltahedge/policy.hpp"
#include "deltahedge/signals.hpp"

namespace deltahedge {

enum class StrategyKind {
  kBuyAndHold,
  kKdjRsi,
  kStandaloneRl,
  kClassicDelta,
  kNoHedge,
  kSingleHedger,
  kDeltaHedge,
};

struct StrategySpec {
  StrategyKind kind = StrategyKind::kDeltaHedge;
  LearnerKind single_hedger_kind = LearnerKind::kClippedPG;  // kSingleHedger only
};

/// Parses run.strategy values: buy_and_hold, kdj_rsi, standalone_rl,
/// classic_delta, no_hedge, deltahedge, single_hedger:<learner>.
StrategySpec parse_strategy(const std::string& name);
std::string strategy_name(const StrategySpec& spec);

/// Full investment on the first day, hold forever, never hedge.
inline double buy_and_hold_rule(bool first_day) { return first_day ? 1.0 : 0.0; }

/// K/D crossing with an RSI filter. Buy (a = 1) on an upcross with
/// RSI < rsi_buy_max; sell (a = -1) on a downcross with RSI > rsi_sell_min;
/// hold otherwise, including through the indicator warm-up.
double kdj_rsi_rule(std::span<const std::optional<KdjPoint>> kdj,
                    std::span<const std::optional<double>> rsi, std::size_t idx,
                    double rsi_buy_max = 70.0, double rsi_sell_min = 30.0);

/// Full delta-neutral hedge while the regime indicator is strictly
/// bearish; otherwise no new protection (positions run off at expiry).
inline double classic_delta_rule(const RegimeIndicator& regime) {
  return regime.score < 0.0 ? 1.0 : 0.0;
}

}  // namespace deltahedge
