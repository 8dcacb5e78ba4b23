#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace deltahedge {

/// Calendar date stored as days since 1970-01-01. Daily resolution only;
/// the engine never deals in intraday timestamps.
class Date {
 public:
  Date() = default;
  explicit Date(std::int64_t serial) : serial_(serial) {}
  Date(int year, int month, int day);

  /// Parses "YYYY-MM-DD". Throws std::invalid_argument on malformed input
  /// or an impossible calendar date.
  static Date parse(const std::string& iso);

  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] std::int64_t serial() const { return serial_; }

  [[nodiscard]] Date plus_days(std::int64_t n) const { return Date(serial_ + n); }
  [[nodiscard]] std::int64_t days_until(Date other) const { return other.serial_ - serial_; }

  /// 0 = Monday ... 6 = Sunday.
  [[nodiscard]] int weekday() const;
  [[nodiscard]] bool is_weekend() const { return weekday() >= 5; }

  auto operator<=>(const Date&) const = default;

 private:
  std::int64_t serial_ = 0;
};

}  // namespace deltahedge
