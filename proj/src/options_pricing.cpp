#include "deltahedge/options_pricing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace deltahedge {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

struct D1D2 {
  double d1;
  double d2;
};

D1D2 d_terms(const PricingInputs& in) {
  const double vol_sqrt_t = in.sigma * std::sqrt(in.t);
  const double d1 =
      (std::log(in.spot / in.strike) + (in.rate + 0.5 * in.sigma * in.sigma) * in.t) / vol_sqrt_t;
  return {d1, d1 - vol_sqrt_t};
}

bool degenerate(const PricingInputs& in) { return in.t <= 0.0 || in.sigma <= 0.0; }

}  // namespace

double norm_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double bs_put_price(const PricingInputs& in) {
  if (in.t <= 0.0) return std::max(in.strike - in.spot, 0.0);
  const double disc_k = in.strike * std::exp(-in.rate * in.t);
  if (in.sigma <= 0.0) return std::max(disc_k - in.spot, 0.0);
  const auto [d1, d2] = d_terms(in);
  return disc_k * norm_cdf(-d2) - in.spot * norm_cdf(-d1);
}

double bs_call_price(const PricingInputs& in) {
  if (in.t <= 0.0) return std::max(in.spot - in.strike, 0.0);
  const double disc_k = in.strike * std::exp(-in.rate * in.t);
  if (in.sigma <= 0.0) return std::max(in.spot - disc_k, 0.0);
  const auto [d1, d2] = d_terms(in);
  return in.spot * norm_cdf(d1) - disc_k * norm_cdf(d2);
}

double bs_put_delta(const PricingInputs& in) {
  if (degenerate(in)) {
    const double disc_k = in.strike * std::exp(-in.rate * std::max(in.t, 0.0));
    return in.spot < disc_k ? -1.0 : 0.0;
  }
  const auto [d1, d2] = d_terms(in);
  (void)d2;
  return norm_cdf(d1) - 1.0;
}

double implied_vol(double price, const PricingInputs& in_minus_sigma, OptionRight right) {
  const PricingInputs& in = in_minus_sigma;
  const double disc_k = in.strike * std::exp(-in.rate * in.t);
  // No-arbitrage bounds for a European option on a non-dividend asset.
  const double lower = right == OptionRight::kPut ? std::max(disc_k - in.spot, 0.0)
                                                  : std::max(in.spot - disc_k, 0.0);
  const double upper = right == OptionRight::kPut ? disc_k : in.spot;
  if (price < lower || price > upper) {
    throw std::domain_error("implied_vol: price outside no-arbitrage bounds");
  }

  auto model = [&](double sigma) {
    PricingInputs p = in;
    p.sigma = sigma;
    return right == OptionRight::kPut ? bs_put_price(p) : bs_call_price(p);
  };

  double lo = 1e-4, hi = 5.0;
  // Price is monotone increasing in sigma; bisect even if the target sits
  // at an end of the bracket.
  if (price <= model(lo)) return lo;
  if (price >= model(hi)) return hi;
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double v = model(mid);
    if (std::abs(v - price) < 1e-8) return mid;
    if (v < price) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

double crr_binomial_put(const PricingInputs& in, int steps) {
  if (steps < 1) throw std::invalid_argument("crr_binomial_put: steps must be >= 1");
  if (in.t <= 0.0) return std::max(in.strike - in.spot, 0.0);
  if (in.sigma <= 0.0) {
    return std::max(in.strike * std::exp(-in.rate * in.t) - in.spot, 0.0);
  }

  const double dt = in.t / steps;
  const double up = std::exp(in.sigma * std::sqrt(dt));
  const double down = 1.0 / up;
  const double growth = std::exp(in.rate * dt);
  const double p = (growth - down) / (up - down);
  const double disc = 1.0 / growth;

  std::vector<double> value(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    const double terminal_spot = in.spot * std::pow(up, 2 * i - steps);
    value[i] = std::max(in.strike - terminal_spot, 0.0);
  }
  for (int step = steps - 1; step >= 0; --step) {
    for (int i = 0; i <= step; ++i) {
      value[i] = disc * ((1.0 - p) * value[i] + p * value[i + 1]);
    }
  }
  return value[0];
}

}  // namespace deltahedge
