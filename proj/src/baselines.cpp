#include "deltahedge/baselines.hpp"

#include "deltahedge/errors.hpp"
#include "deltahedge/policy.hpp"

namespace deltahedge {

StrategySpec parse_strategy(const std::string& name) {
  StrategySpec spec;
  if (name == "buy_and_hold") {
    spec.kind = StrategyKind::kBuyAndHold;
  } else if (name == "kdj_rsi") {
    spec.kind = StrategyKind::kKdjRsi;
  } else if (name == "standalone_rl") {
    spec.kind = StrategyKind::kStandaloneRl;
  } else if (name == "classic_delta") {
    spec.kind = StrategyKind::kClassicDelta;
  } else if (name == "no_hedge") {
    spec.kind = StrategyKind::kNoHedge;
  } else if (name == "deltahedge") {
    spec.kind = StrategyKind::kDeltaHedge;
  } else if (name.rfind("single_hedger:", 0) == 0) {
    spec.kind = StrategyKind::kSingleHedger;
    spec.single_hedger_kind = learner_kind_from_name(name.substr(14));
  } else {
    throw ConfigError("unknown strategy '" + name + "'");
  }
  return spec;
}

std::string strategy_name(const StrategySpec& spec) {
  switch (spec.kind) {
    case StrategyKind::kBuyAndHold: return "buy_and_hold";
    case StrategyKind::kKdjRsi: return "kdj_rsi";
    case StrategyKind::kStandaloneRl: return "standalone_rl";
    case StrategyKind::kClassicDelta: return "classic_delta";
    case StrategyKind::kNoHedge: return "no_hedge";
    case StrategyKind::kSingleHedger:
      return "single_hedger:" + learner_kind_name(spec.single_hedger_kind);
    case StrategyKind::kDeltaHedge: return "deltahedge";
  }
  return "unknown";
}

double kdj_rsi_rule(std::span<const std::optional<KdjPoint>> kdj,
                    std::span<const std::optional<double>> rsi, std::size_t idx,
                    double rsi_buy_max, double rsi_sell_min) {
  if (idx == 0 || idx >= kdj.size()) return 0.0;
  const auto& cur = kdj[idx];
  const auto& prev = kdj[idx - 1];
  const auto& filter = rsi[idx];
  if (!cur || !prev || !filter) return 0.0;

  const bool upcross = prev->k <= prev->d && cur->k > cur->d;
  const bool downcross = prev->k >= prev->d && cur->k < cur->d;
  if (upcross && *filter < rsi_buy_max) return 1.0;
  if (downcross && *filter > rsi_sell_min) return -1.0;
  return 0.0;
}

}  // namespace deltahedge
