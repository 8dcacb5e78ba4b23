#include "deltahedge/sharpe.hpp"

#include <cmath>
#include <stdexcept>

namespace deltahedge {

std::optional<double> SharpeTracker::sharpe() const {
  const int n = static_cast<int>(returns_.size());
  if (n < 2) return std::nullopt;
  double mean = 0.0;
  for (double r : returns_) mean += r;
  mean /= n;
  double var = 0.0;
  for (double r : returns_) var += (r - mean) * (r - mean);
  var /= n - 1;
  const double sd = std::sqrt(var);
  if (sd < 1e-12) return 0.0;
  return (mean - rf_daily_) / sd;
}

double rolling_sharpe(const SharpeTracker& tracker) {
  const auto sr = tracker.sharpe();
  if (!sr) throw std::logic_error("rolling_sharpe: fewer than 2 returns in window");
  return *sr;
}

}  // namespace deltahedge
