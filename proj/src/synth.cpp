#include <algorithm>
#include <cmath>

#include "deltahedge/errors.hpp"
#include "deltahedge/market_data.hpp"
#include "deltahedge/options_pricing.hpp"
#include "deltahedge/rng.hpp"

namespace deltahedge {

namespace {

constexpr int kLadderStrikes = 11;       // ATM +/- 5 steps of 1% of spot
constexpr int kExpiryCalendarDays = 30;  // regenerated daily
constexpr double kDt = 1.0 / 252.0;

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

}  // namespace

SynthDataset synth_generate(const SynthParams& params) {
  if (params.n_days < 2) throw ConfigError("synth_generate: n_days must be >= 2");
  if (params.sigma <= 0.0) throw ConfigError("synth_generate: sigma must be positive");
  if (params.s0 <= 0.0) throw ConfigError("synth_generate: s0 must be positive");

  // Active (mu, sigma) per trading day; base regime plus optional segments.
  std::vector<SynthRegime> regimes = params.regimes;
  std::sort(regimes.begin(), regimes.end(),
            [](const SynthRegime& a, const SynthRegime& b) { return a.start_day < b.start_day; });
  auto active = [&](int day) {
    SynthRegime r{0, params.mu, params.sigma};
    for (const auto& seg : regimes) {
      if (seg.start_day <= day) r = seg;
    }
    return r;
  };

  Rng rng(derive_seed(params.seed, 0x73796e7468ull));  // "synth"

  SynthDataset data;
  data.bars.reserve(params.n_days);

  Date date = params.start;
  while (date.is_weekend()) date = date.plus_days(1);

  double close = params.s0;
  double prev_close = params.s0;
  std::vector<double> log_returns;

  for (int day = 0; day < params.n_days; ++day) {
    const SynthRegime regime = active(day);

    if (day > 0) {
      const double z = rng.normal();
      const double step =
          (regime.mu - 0.5 * regime.sigma * regime.sigma) * kDt + regime.sigma * std::sqrt(kDt) * z;
      prev_close = close;
      close *= std::exp(step);
      log_returns.push_back(step);
    }

    Bar bar;
    bar.date = date;
    bar.open = day == 0 ? params.s0 : prev_close;
    bar.close = close;
    const double wick = 0.3 * regime.sigma * std::sqrt(kDt);
    bar.high = std::max(bar.open, bar.close) * (1.0 + wick * std::abs(rng.normal()));
    bar.low = std::min(bar.open, bar.close) * (1.0 - wick * std::abs(rng.normal()));
    bar.volume = static_cast<std::int64_t>(1e6 * (0.5 + rng.uniform01()));
    data.bars.push_back(bar);

    // Daily ATM-centered put ladder expiring in 30 calendar days.
    const Date expiry = date.plus_days(kExpiryCalendarDays);
    const double t = kExpiryCalendarDays / 365.0;
    for (int i = 0; i < kLadderStrikes; ++i) {
      OptionQuote q;
      q.date = date;
      q.expiry = expiry;
      q.strike = close * (1.0 + 0.01 * (i - kLadderStrikes / 2));
      q.is_put = true;
      const PricingInputs in{close, q.strike, t, params.rate, regime.sigma};
      const double theo = bs_put_price(in);
      const double spread = std::max(0.02, 0.01 * theo);
      q.bid = std::max(0.0, theo - 0.5 * spread);
      q.ask = theo + 0.5 * spread;
      q.delta = bs_put_delta(in);
      q.volume = 1000;
      q.open_interest = 5000;
      data.chain.push_back(q);
    }

    // Sentiment leans with recent momentum; VIX tracks the active sigma.
    double momentum = 0.0;
    const size_t lookback = std::min<size_t>(5, log_returns.size());
    for (size_t k = log_returns.size() - lookback; k < log_returns.size(); ++k) {
      momentum += log_returns[k];
    }
    if (lookback > 0) momentum /= static_cast<double>(lookback);
    data.sentiment.push_back({date, clamp(50.0 + 800.0 * momentum + 6.0 * rng.normal(), 0.0, 100.0)});
    data.vix.push_back({date, std::max(1.0, regime.sigma * 100.0 + 1.5 * rng.normal())});

    date = date.plus_days(1);
    while (date.is_weekend()) date = date.plus_days(1);
  }
  return data;
}

}  // namespace deltahedge
