#include "deltahedge/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace deltahedge {

MetricTable compute_metrics(std::span<const double> curve, double rf_daily,
                            int periods_per_year) {
  if (curve.size() < 2) throw std::invalid_argument("compute_metrics: need >= 2 curve points");
  for (double v : curve) {
    if (!(v > 0.0)) throw std::invalid_argument("compute_metrics: curve values must be positive");
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();

  const std::size_t n = curve.size() - 1;
  std::vector<double> rets(n);
  for (std::size_t i = 1; i < curve.size(); ++i) rets[i - 1] = curve[i] / curve[i - 1] - 1.0;

  MetricTable m;
  m.n_days = static_cast<int>(n);
  m.total_return = curve.back() / curve.front() - 1.0;
  m.annualized_return =
      std::pow(1.0 + m.total_return, static_cast<double>(periods_per_year) / n) - 1.0;

  double mean = 0.0;
  for (double r : rets) mean += r;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double r : rets) var += (r - mean) * (r - mean);
  var = n > 1 ? var / static_cast<double>(n - 1) : 0.0;
  const double sd = std::sqrt(var);
  const double ann = std::sqrt(static_cast<double>(periods_per_year));

  m.volatility = sd * ann;
  m.sharpe = sd < 1e-12 ? 0.0 : (mean - rf_daily) / sd * ann;

  double downside_sq = 0.0;
  for (double r : rets) {
    const double d = std::min(r - rf_daily, 0.0);
    downside_sq += d * d;
  }
  const double downside = std::sqrt(downside_sq / static_cast<double>(n));
  m.sortino = downside < 1e-12 ? kInf : (mean - rf_daily) / downside * ann;

  double peak = curve.front();
  double mdd = 0.0;
  for (double v : curve) {
    peak = std::max(peak, v);
    mdd = std::max(mdd, (peak - v) / peak);
  }
  m.max_drawdown = mdd;
  m.calmar = mdd < 1e-15 ? kInf : m.annualized_return / mdd;
  return m;
}

std::vector<RegimeWindow> regime_presets() {
  return {
      {"rising", Date(2020, 4, 1), Date(2021, 8, 31)},
      {"falling", Date(2022, 1, 1), Date(2022, 6, 30)},
      {"volatile", Date(2022, 5, 1), Date(2023, 1, 31)},
  };
}

std::optional<MetricTable> regime_slice(std::span<const Date> dates,
                                        std::span<const double> curve,
                                        const RegimeWindow& window, double rf_daily) {
  if (dates.size() != curve.size()) {
    throw std::invalid_argument("regime_slice: dates/curve length mismatch");
  }
  std::vector<double> sub;
  for (std::size_t i = 0; i < dates.size(); ++i) {
    if (dates[i] >= window.start && dates[i] <= window.end) sub.push_back(curve[i]);
  }
  if (sub.size() < 2) return std::nullopt;
  return compute_metrics(sub, rf_daily);
}

}  // namespace deltahedge
