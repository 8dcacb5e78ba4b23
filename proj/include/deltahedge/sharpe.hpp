#pragma once

#include <deque>
#include <optional>

namespace deltahedge {

/// Rolling window of daily portfolio returns backing the shared reward.
/// SR is undefined with fewer than two returns and 0 by convention when
/// the window standard deviation degenerates.
class SharpeTracker {
 public:
  SharpeTracker(int window, double rf_daily) : window_(window), rf_daily_(rf_daily) {}

  void push(double daily_return) {
    returns_.push_back(daily_return);
    if (static_cast<int>(returns_.size()) > window_) returns_.pop_front();
  }

  void clear() { returns_.clear(); }

  [[nodiscard]] std::optional<double> sharpe() const;

  /// Undefined SR reads as 0 for reward purposes.
  [[nodiscard]] double sharpe_or_zero() const { return sharpe().value_or(0.0); }

  [[nodiscard]] int size() const { return static_cast<int>(returns_.size()); }

 private:
  int window_;
  double rf_daily_;
  std::deque<double> returns_;
};

double rolling_sharpe(const SharpeTracker& tracker);

/// R_t = SR_t - SR_{t-1}.
inline double reward_step(double prev_sr, double new_sr) { return new_sr - prev_sr; }

}  // namespace deltahedge
