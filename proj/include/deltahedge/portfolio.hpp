#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "deltahedge/market_data.hpp"
#include "deltahedge/options_pricing.hpp"

namespace deltahedge {

/// One open protective-put position.
struct PutPosition {
  PutSpec spec;
  std::int64_t contracts = 0;    // >= 1 while open
  double entry_premium = 0.0;    // per share, at acquisition
};

/// The mutable ledger. Long-only by construction: cash, shares, and
/// contracts never go negative.
struct PortfolioState {
  Date date;
  double cash = 0.0;
  std::int64_t shares = 0;
  std::vector<PutPosition> positions;

  [[nodiscard]] std::int64_t total_contracts() const {
    std::int64_t n = 0;
    for (const auto& p : positions) n += p.contracts;
    return n;
  }
};

struct CostModel {
  double equity_rate = 0.002;           // proportional, on traded notional
  double option_fixed_per_contract = 0.70;
  double option_prop_rate = 0.005;      // proportional, on contract premium
};

struct TradeRecord {
  Date date;
  enum class Kind { kEquity, kOption } kind = Kind::kEquity;
  std::int64_t quantity = 0;  // signed; shares or contracts
  double price = 0.0;         // execution price per share
  double cost = 0.0;
  std::string note;           // clamp/scale events, empty when untouched
};

/// Marking context for valuation: quotes win, the model fills gaps using
/// the day's VIX as the volatility input.
struct MarkParams {
  double rate = 0.02;
};

/// Per-share mark of one put: bid of the exact-match quote if present,
/// otherwise the model price at sigma = vix / 100.
double mark_put(const PutSpec& spec, const MarketSlice& slice, const MarkParams& mark);

/// V = cash + close * shares + sum(mark * multiplier * contracts).
double portfolio_value(const PortfolioState& state, const MarketSlice& slice,
                       const MarkParams& mark);

/// Applies the continuous allocation action a in [-1, 1] at price p.
/// Buys spend at most the allocated budget a * cash including costs (the
/// share count is scaled down to the largest affordable integer); sells
/// liquidate the fraction -a of current shares, rounding toward holding.
std::pair<PortfolioState, TradeRecord> apply_equity_trade(const PortfolioState& state, double a,
                                                          double price,
                                                          const CostModel& costs);

/// Trades `delta_contracts` of `spec` against `quote` (ask on buys, bid on
/// sells). Order size is gated by min(volume, open_interest), buys are
/// scaled down to affordability, sells clamp to contracts held. All
/// adjustments resolve by clamping and are noted on the TradeRecord.
std::pair<PortfolioState, TradeRecord> apply_option_trade(const PortfolioState& state,
                                                          const PutSpec& spec,
                                                          std::int64_t delta_contracts,
                                                          const OptionQuote& quote,
                                                          const CostModel& costs);

/// Cash-settles every position expiring on the slice date at
/// contracts * multiplier * max(0, K - close) and removes it.
std::pair<PortfolioState, double> settle_expiries(const PortfolioState& state,
                                                  const MarketSlice& slice);

}  // namespace deltahedge
