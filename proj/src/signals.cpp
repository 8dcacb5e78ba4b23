#include "deltahedge/signals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace deltahedge {

Forecast momentum_forecaster(std::span<const Bar> history) {
  if (history.size() != static_cast<size_t>(kForecastWindow)) {
    throw std::invalid_argument("momentum_forecaster: window must be exactly 60 bars");
  }
  double sum = 0.0;
  for (size_t i = 1; i < history.size(); ++i) {
    sum += std::log(history[i].close / history[i - 1].close);
  }
  const double mean = sum / static_cast<double>(history.size() - 1);
  const double f = std::clamp(30.0 * mean, -0.5, 0.5);
  return {history.back().date, f};
}

double aggregate_sentiment(std::span<const double> scores) {
  if (scores.empty()) return 50.0;
  double sum = 0.0;
  for (double s : scores) sum += s;
  return sum / static_cast<double>(scores.size());
}

RegimeIndicator regime_score(const Forecast& forecast, double sentiment, double vix,
                             const SignalConfig& cfg) {
  double score = cfg.w_f * std::tanh(forecast.f / cfg.tanh_scale) +
                 cfg.w_s * (sentiment - 50.0) / 50.0;
  if (cfg.use_vix) score -= cfg.w_v * (vix - 20.0) / 20.0;
  return {forecast.date, score};
}

}  // namespace deltahedge
