#include "deltahedge/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace deltahedge {

namespace {

bool same_contract(const PutSpec& spec, const OptionQuote& q) {
  return q.is_put && q.expiry == spec.expiry && std::abs(q.strike - spec.strike) < 1e-9;
}

std::int64_t ceil_with_nudge(double x) {
  // Guards against 35.000000000000004-style noise in N * (1 + a).
  return static_cast<std::int64_t>(std::ceil(x - 1e-9));
}

}  // namespace

double mark_put(const PutSpec& spec, const MarketSlice& slice, const MarkParams& mark) {
  for (const auto& q : slice.puts) {
    if (same_contract(spec, q)) return q.bid;
  }
  const double t = static_cast<double>(slice.date.days_until(spec.expiry)) / 365.0;
  const PricingInputs in{slice.bar.close, spec.strike, std::max(t, 0.0), mark.rate,
                         slice.vix / 100.0};
  return bs_put_price(in);
}

double portfolio_value(const PortfolioState& state, const MarketSlice& slice,
                       const MarkParams& mark) {
  double v = state.cash + slice.bar.close * static_cast<double>(state.shares);
  for (const auto& pos : state.positions) {
    v += mark_put(pos.spec, slice, mark) * pos.spec.multiplier *
         static_cast<double>(pos.contracts);
  }
  return v;
}

std::pair<PortfolioState, TradeRecord> apply_equity_trade(const PortfolioState& state, double a,
                                                          double price, const CostModel& costs) {
  if (price <= 0.0) throw std::invalid_argument("apply_equity_trade: price must be positive");
  a = std::clamp(a, -1.0, 1.0);

  PortfolioState next = state;
  TradeRecord rec;
  rec.date = state.date;
  rec.kind = TradeRecord::Kind::kEquity;
  rec.price = price;

  if (a > 0.0) {
    // Spend at most the allocated budget, costs included.
    const double budget = a * state.cash;
    std::int64_t k = static_cast<std::int64_t>(std::floor(budget / price));
    auto outlay = [&](std::int64_t n) {
      return price * static_cast<double>(n) +
             costs.equity_rate * price * static_cast<double>(n);
    };
    while (k > 0 && outlay(k) > budget) --k;
    if (k > 0) {
      const std::int64_t desired = static_cast<std::int64_t>(std::floor(budget / price));
      if (k < desired) rec.note = "affordability-scaled";
      next.cash = state.cash - outlay(k);
      next.shares = state.shares + k;
      rec.quantity = k;
      rec.cost = costs.equity_rate * price * static_cast<double>(k);
    }
  } else if (a < 0.0) {
    const double frac = static_cast<double>(state.shares) * (1.0 + a);
    const std::int64_t desired = std::max<std::int64_t>(0, ceil_with_nudge(frac));
    const std::int64_t sold = state.shares - desired;
    if (sold > 0) {
      const double gross = price * static_cast<double>(sold);
      const double cost = costs.equity_rate * gross;
      next.cash = state.cash + gross - cost;
      next.shares = desired;
      rec.quantity = -sold;
      rec.cost = cost;
    }
  }
  return {next, rec};
}

std::pair<PortfolioState, TradeRecord> apply_option_trade(const PortfolioState& state,
                                                          const PutSpec& spec,
                                                          std::int64_t delta_contracts,
                                                          const OptionQuote& quote,
                                                          const CostModel& costs) {
  if (!same_contract(spec, quote)) {
    throw std::invalid_argument("apply_option_trade: quote does not match contract spec");
  }
  if (quote.date != state.date) {
    throw std::invalid_argument("apply_option_trade: quote date does not match state date");
  }

  PortfolioState next = state;
  TradeRecord rec;
  rec.date = state.date;
  rec.kind = TradeRecord::Kind::kOption;

  if (delta_contracts == 0) return {next, rec};

  const std::int64_t gate = std::min(quote.volume, quote.open_interest);
  std::int64_t want = std::abs(delta_contracts);
  if (want > gate) {
    want = gate;
    rec.note = "volume-gated";
  }

  auto pos_it = std::find_if(next.positions.begin(), next.positions.end(),
                             [&](const PutPosition& p) { return p.spec == spec; });

  if (delta_contracts > 0) {
    const double exec = quote.ask;
    rec.price = exec;
    const double contract_premium = exec * spec.multiplier;
    auto total = [&](std::int64_t n) {
      const double premium = contract_premium * static_cast<double>(n);
      const double cost = costs.option_fixed_per_contract * static_cast<double>(n) +
                          costs.option_prop_rate * premium;
      return std::pair{premium, cost};
    };
    std::int64_t k = want;
    while (k > 0) {
      const auto [premium, cost] = total(k);
      if (premium + cost <= state.cash) break;
      --k;
    }
    if (k < want && rec.note.empty()) rec.note = "affordability-scaled";
    if (k > 0) {
      const auto [premium, cost] = total(k);
      next.cash = state.cash - (premium + cost);
      if (pos_it != next.positions.end()) {
        const double blended =
            (pos_it->entry_premium * static_cast<double>(pos_it->contracts) +
             exec * static_cast<double>(k)) /
            static_cast<double>(pos_it->contracts + k);
        pos_it->entry_premium = blended;
        pos_it->contracts += k;
      } else {
        next.positions.push_back({spec, k, exec});
      }
      rec.quantity = k;
      rec.cost = total(k).second;
    }
  } else {
    const double exec = quote.bid;
    rec.price = exec;
    const std::int64_t held = pos_it == next.positions.end() ? 0 : pos_it->contracts;
    std::int64_t k = std::min(want, held);
    if (k < want && rec.note.empty()) rec.note = "clamped-to-held";
    const double contract_premium = exec * spec.multiplier;
    auto net = [&](std::int64_t n) {
      const double premium = contract_premium * static_cast<double>(n);
      const double cost = costs.option_fixed_per_contract * static_cast<double>(n) +
                          costs.option_prop_rate * premium;
      return std::pair{premium, cost};
    };
    // A near-zero bid can make fees exceed proceeds; never let cash go negative.
    while (k > 0) {
      const auto [premium, cost] = net(k);
      if (state.cash + premium - cost >= 0.0) break;
      --k;
    }
    if (k > 0) {
      const auto [premium, cost] = net(k);
      next.cash = state.cash + premium - cost;
      pos_it->contracts -= k;
      if (pos_it->contracts == 0) next.positions.erase(pos_it);
      rec.quantity = -k;
      rec.cost = cost;
    }
  }
  return {next, rec};
}

std::pair<PortfolioState, double> settle_expiries(const PortfolioState& state,
                                                  const MarketSlice& slice) {
  PortfolioState next = state;
  double credited = 0.0;
  std::vector<PutPosition> remaining;
  remaining.reserve(next.positions.size());
  for (const auto& pos : next.positions) {
    // Expiries landing on non-trading days settle on the next trading day.
    if (pos.spec.expiry <= slice.date) {
      credited += static_cast<double>(pos.contracts) * pos.spec.multiplier *
                  std::max(0.0, pos.spec.strike - slice.bar.close);
    } else {
      remaining.push_back(pos);
    }
  }
  next.positions = std::move(remaining);
  next.cash += credited;
  return {next, credited};
}

}  // namespace deltahedge
