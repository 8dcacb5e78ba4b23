#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "deltahedge/dates.hpp"

namespace deltahedge {

/// The six performance figures. Fractions, not percents; sortino and
/// calmar use +infinity as the degenerate-denominator sentinel.
struct MetricTable {
  double sharpe = 0.0;
  double sortino = 0.0;
  double calmar = 0.0;
  double total_return = 0.0;
  double max_drawdown = 0.0;
  double volatility = 0.0;
  double annualized_return = 0.0;
  int n_days = 0;  // number of return observations
};

/// Metrics from an equity curve of daily values (length >= 2, all > 0).
/// Annualization convention: 252 periods, sqrt-time scaling for SR/SoR.
MetricTable compute_metrics(std::span<const double> curve, double rf_daily = 0.0,
                            int periods_per_year = 252);

struct RegimeWindow {
  std::string label;
  Date start;
  Date end;
};

/// The three named evaluation regimes.
std::vector<RegimeWindow> regime_presets();

/// Metrics over the sub-curve falling inside [start, end]; nullopt when
/// fewer than two points land in the window.
std::optional<MetricTable> regime_slice(std::span<const Date> dates,
                                        std::span<const double> curve,
                                        const RegimeWindow& window, double rf_daily = 0.0);

}  // namespace deltahedge
