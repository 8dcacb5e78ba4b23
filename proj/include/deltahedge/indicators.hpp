#pragma once

#include <optional>
#include <span>
#include <vector>

#include "deltahedge/market_data.hpp"

namespace deltahedge {

/// KDJ stochastic oscillator values for one bar.
struct KdjPoint {
  double k = 50.0;
  double d = 50.0;
  double j = 50.0;
};

/// KDJ(period, k_smooth, d_smooth) over the whole series. Entries before
/// the warm-up period are absent. RSV of a zero-range window is taken as
/// 50, so a flat series keeps K = D = 50 throughout.
std::vector<std::optional<KdjPoint>> kdj_series(std::span<const Bar> bars, int period = 9,
                                                int k_smooth = 3, int d_smooth = 3);

/// Wilder RSI over closes; absent for the first `period` deltas. A series
/// with zero average gain and loss reads as RSI 50.
std::vector<std::optional<double>> rsi_series(std::span<const Bar> bars, int period = 14);

}  // namespace deltahedge
