#include "deltahedge/engine.hpp"

#include <cmath>
#include <stdexcept>

#include "deltahedge/options_pricing.hpp"

namespace deltahedge {

SignalValues compute_signal_values(const Dataset& data, int idx, const SignalConfig& cfg) {
  (void)cfg;
  SignalValues sig;
  const MarketSlice& slice = data.slices[idx];
  sig.sentiment = slice.sentiment;
  sig.vix = slice.vix;
  if (idx + 1 >= kForecastWindow) {
    const std::span<const Bar> window(data.bars.data() + idx + 1 - kForecastWindow,
                                      kForecastWindow);
    sig.f = momentum_forecaster(window).f;
  } else {
    sig.f = 0.0;
    sig.f_missing = true;
  }
  return sig;
}

TargetPutView select_target_put(const MarketSlice& slice, const MarkParams& mark) {
  TargetPutView view;
  const double spot = slice.bar.close;
  const OptionQuote* best = nullptr;
  for (const auto& q : slice.puts) {
    if (q.volume < 1) continue;
    if (!best) {
      best = &q;
      continue;
    }
    const auto dte_gap = [&](const OptionQuote& x) {
      return std::abs(slice.date.days_until(x.expiry) - 30);
    };
    const auto strike_gap = [&](const OptionQuote& x) { return std::abs(x.strike - spot); };
    if (dte_gap(q) < dte_gap(*best) ||
        (dte_gap(q) == dte_gap(*best) && strike_gap(q) < strike_gap(*best)) ||
        (dte_gap(q) == dte_gap(*best) && strike_gap(q) == strike_gap(*best) &&
         q.strike < best->strike)) {
      best = &q;
    }
  }
  if (!best) return view;

  view.present = true;
  view.quote = *best;
  view.spec = PutSpec{best->strike, best->expiry, 100};
  if (best->delta) {
    view.delta = *best->delta;
  } else {
    const double t = static_cast<double>(slice.date.days_until(best->expiry)) / 365.0;
    PricingInputs in{spot, best->strike, t, mark.rate, slice.vix / 100.0};
    try {
      const double mid = 0.5 * (best->bid + best->ask);
      in.sigma = implied_vol(mid, in, OptionRight::kPut);
    } catch (const std::exception&) {
      // keep the VIX-based vol when the mid violates arbitrage bounds
    }
    view.delta = bs_put_delta(in);
  }
  return view;
}

Normalizer fit_window_normalizer(const Dataset& data, const EngineConfig& cfg, int begin,
                                 int end) {
  std::vector<std::vector<double>> rows;
  rows.reserve(end - begin);
  PortfolioState nominal;
  nominal.cash = cfg.initial_cash;
  for (int idx = begin; idx < end; ++idx) {
    const MarketSlice& slice = data.slices[idx];
    nominal.date = slice.date;
    const SignalValues sig = compute_signal_values(data, idx, cfg.signals);
    const TargetPutView put = select_target_put(slice, cfg.mark);
    rows.push_back(
        raw_observation_features(nominal, slice, sig, put, cfg.initial_cash, cfg.layout));
  }
  return fit_normalizer(rows, cfg.layout);
}

DayLoop::DayLoop(const Dataset& data, EngineConfig cfg, int begin, int end)
    : data_(&data),
      cfg_(std::move(cfg)),
      begin_(begin),
      end_(end),
      tracker_(cfg_.sharpe_window, cfg_.rf_daily) {
  if (begin_ < 0 || end_ > static_cast<int>(data.slices.size()) || begin_ >= end_) {
    throw std::invalid_argument("DayLoop: bad slice range");
  }
  reset();
}

void DayLoop::reset() {
  state_ = PortfolioState{};
  state_.cash = cfg_.initial_cash;
  state_.date = begin_ > 0 ? data_->slices[begin_ - 1].date
                           : data_->slices[begin_].date.plus_days(-1);
  prev_value_ = cfg_.initial_cash;
  prev_sr_ = 0.0;
  tracker_.clear();
  day_ = begin_;
  day_open_ = false;
  traded_ = false;
  trading_inbox_.clear();
  hedging_inbox_.clear();
  pending_trading_msg_.clear();
  pending_hedging_msg_.clear();
  trades_.clear();
  records_.clear();
  events_.clear();
  forecast_gap_logged_ = false;
}

void DayLoop::begin_day() {
  if (done()) throw std::logic_error("DayLoop: begin_day past the end of the range");
  if (day_open_) throw std::logic_error("DayLoop: day already open");
  const MarketSlice& s = slice();
  if (s.date <= state_.date) throw std::logic_error("DayLoop: slice date not after state date");

  day_start_state_ = state_;
  state_.date = s.date;

  current_ = DayRecord{};
  current_.date = s.date;

  auto [settled, credited] = settle_expiries(state_, s);
  state_ = std::move(settled);
  current_.settlement = credited;

  sig_ = compute_signal_values(*data_, day_, cfg_.signals);
  if (sig_.f_missing && !forecast_gap_logged_) {
    events_.push_back(s.date.to_string() + ": forecast warm-up, substituting f=0");
    forecast_gap_logged_ = true;
  }
  regime_ = regime_score(Forecast{s.date, sig_.f}, sig_.sentiment, sig_.vix, cfg_.signals);
  put_ = cfg_.allow_hedging ? select_target_put(s, cfg_.mark) : TargetPutView{};
  if (put_.present) put_.spec.multiplier = cfg_.multiplier;

  current_.sig = sig_;
  current_.regime = regime_.score;
  day_open_ = true;
  traded_ = false;
}

std::vector<double> DayLoop::trading_observation(const PolicyParams& policy) const {
  if (!day_open_) throw std::logic_error("DayLoop: day not open");
  return build_observation(state_, slice(), sig_, put_, trading_inbox_, policy,
                           cfg_.initial_cash, cfg_.layout);
}

std::vector<double> DayLoop::hedging_observation(const PolicyParams& policy) const {
  if (!day_open_ || !traded_) throw std::logic_error("DayLoop: hedging precedes trading");
  return build_observation(state_, slice(), sig_, put_, hedging_inbox_, policy,
                           cfg_.initial_cash, cfg_.layout);
}

void DayLoop::apply_trading(double a, std::vector<double> message) {
  if (!day_open_ || traded_) throw std::logic_error("DayLoop: trading out of order");
  try {
    auto [next, rec] = apply_equity_trade(state_, a, slice().bar.close, cfg_.costs);
    state_ = std::move(next);
    if (rec.quantity != 0) trades_.push_back(rec);
  } catch (...) {
    state_ = day_start_state_;  // atomic-day failure semantics
    day_open_ = false;
    throw;
  }
  current_.action = a;
  pending_trading_msg_ = std::move(message);
  traded_ = true;
}

void DayLoop::apply_hedging(double alpha, std::vector<double> message) {
  if (!day_open_ || !traded_) throw std::logic_error("DayLoop: hedging out of order");
  current_.alpha = alpha;
  pending_hedging_msg_ = std::move(message);
  if (!cfg_.allow_hedging || !put_.present || alpha <= 0.0 || put_.delta >= 0.0) return;

  try {
    const std::int64_t target =
        target_put_contracts(alpha, state_.shares, put_.delta, cfg_.multiplier);
    const std::int64_t delta_n = target - state_.total_contracts();
    // Existing positions are held to expiry; only positive increments trade.
    if (delta_n > 0) {
      auto [next, rec] = apply_option_trade(state_, put_.spec, delta_n, put_.quote, cfg_.costs);
      state_ = std::move(next);
      if (rec.quantity != 0) trades_.push_back(rec);
    }
  } catch (...) {
    state_ = day_start_state_;
    day_open_ = false;
    throw;
  }
}

double DayLoop::finish_day() {
  if (!day_open_ || !traded_) throw std::logic_error("DayLoop: finish_day out of order");
  const MarketSlice& s = slice();

  const double value = portfolio_value(state_, s, cfg_.mark);
  current_.value = value;
  current_.ret = value / prev_value_ - 1.0;
  tracker_.push(current_.ret);
  current_.sr = tracker_.sharpe_or_zero();
  current_.reward = reward_step(prev_sr_, current_.sr);
  prev_sr_ = current_.sr;
  prev_value_ = value;

  if (cfg_.exchange_messages && cfg_.layout.include_options && cfg_.layout.d_msg > 0) {
    if (!pending_trading_msg_.empty()) {
      hedging_inbox_.push_back({s.date, AgentMessage::Sender::kTrading,
                                std::move(pending_trading_msg_)});
      while (static_cast<int>(hedging_inbox_.size()) > cfg_.inbox_window) {
        hedging_inbox_.erase(hedging_inbox_.begin());
      }
    }
    if (!pending_hedging_msg_.empty()) {
      trading_inbox_.push_back({s.date, AgentMessage::Sender::kHedging,
                                std::move(pending_hedging_msg_)});
      while (static_cast<int>(trading_inbox_.size()) > cfg_.inbox_window) {
        trading_inbox_.erase(trading_inbox_.begin());
      }
    }
  }
  pending_trading_msg_.clear();
  pending_hedging_msg_.clear();

  records_.push_back(current_);
  day_open_ = false;
  ++day_;
  return current_.reward;
}

}  // namespace deltahedge
