#pragma once

#include <span>
#include <vector>

#include "deltahedge/market_data.hpp"

namespace deltahedge {

/// Fractional expected price change over the next 30 trading days,
/// summarized to a scalar.
struct Forecast {
  Date date;
  double f = 0.0;
};

/// Continuous market-regime score: negative = bearish, positive = bullish.
struct RegimeIndicator {
  Date date;
  double score = 0.0;

  [[nodiscard]] bool bearish() const { return score < 0.0; }
};

struct SignalConfig {
  double w_f = 0.5;
  double w_s = 0.5;
  double tanh_scale = 0.05;
  bool use_vix = false;
  double w_v = 0.5;
};

inline constexpr int kForecastWindow = 60;

/// Default forecaster: f = clamp(30 * mean(daily log returns), -0.5, 0.5)
/// over an exactly-60-bar window ending at t. Any replacement must stay a
/// pure function of the window. Throws std::invalid_argument if the
/// window is not exactly 60 bars; callers with shorter history substitute
/// f = 0 instead of calling.
Forecast momentum_forecaster(std::span<const Bar> history);

/// Mean of same-date scores; empty set yields the neutral 50.
double aggregate_sentiment(std::span<const double> scores);

RegimeIndicator regime_score(const Forecast& forecast, double sentiment, double vix,
                             const SignalConfig& cfg = {});

}  // namespace deltahedge
