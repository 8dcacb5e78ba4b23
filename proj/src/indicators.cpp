#include "deltahedge/indicators.hpp"

#include <algorithm>

namespace deltahedge {

std::vector<std::optional<KdjPoint>> kdj_series(std::span<const Bar> bars, int period,
                                                int k_smooth, int d_smooth) {
  std::vector<std::optional<KdjPoint>> out(bars.size());
  double k_prev = 50.0, d_prev = 50.0;
  for (size_t i = 0; i < bars.size(); ++i) {
    if (i + 1 < static_cast<size_t>(period)) continue;
    double lo = bars[i].low, hi = bars[i].high;
    for (size_t j = i + 1 - period; j <= i; ++j) {
      lo = std::min(lo, bars[j].low);
      hi = std::max(hi, bars[j].high);
    }
    const double rsv = hi > lo ? 100.0 * (bars[i].close - lo) / (hi - lo) : 50.0;
    const double k = ((k_smooth - 1.0) * k_prev + rsv) / k_smooth;
    const double d = ((d_smooth - 1.0) * d_prev + k) / d_smooth;
    out[i] = KdjPoint{k, d, 3.0 * k - 2.0 * d};
    k_prev = k;
    d_prev = d;
  }
  return out;
}

std::vector<std::optional<double>> rsi_series(std::span<const Bar> bars, int period) {
  std::vector<std::optional<double>> out(bars.size());
  if (bars.size() <= static_cast<size_t>(period)) return out;

  double avg_gain = 0.0, avg_loss = 0.0;
  for (int i = 1; i <= period; ++i) {
    const double change = bars[i].close - bars[i - 1].close;
    if (change > 0) {
      avg_gain += change;
    } else {
      avg_loss -= change;
    }
  }
  avg_gain /= period;
  avg_loss /= period;

  auto rsi_of = [](double gain, double loss) {
    if (gain + loss <= 0.0) return 50.0;
    return 100.0 * gain / (gain + loss);
  };

  out[period] = rsi_of(avg_gain, avg_loss);
  for (size_t i = period + 1; i < bars.size(); ++i) {
    const double change = bars[i].close - bars[i - 1].close;
    const double gain = change > 0 ? change : 0.0;
    const double loss = change < 0 ? -change : 0.0;
    avg_gain = (avg_gain * (period - 1) + gain) / period;  // Wilder smoothing
    avg_loss = (avg_loss * (period - 1) + loss) / period;
    out[i] = rsi_of(avg_gain, avg_loss);
  }
  return out;
}

}  // namespace deltahedge
