#pragma once

#include "deltahedge/dates.hpp"

namespace deltahedge {

/// Inputs for European option valuation under constant-parameter
/// Black-Scholes with zero dividend yield.
struct PricingInputs {
  double spot;    // S > 0
  double strike;  // K > 0
  double t;       // time to expiry in years, >= 0
  double rate;    // annualized continuously-compounded rate
  double sigma;   // annualized volatility, >= 0
};

/// Identity of one put contract.
struct PutSpec {
  double strike = 0.0;
  Date expiry;
  int multiplier = 100;  // shares per contract

  bool operator==(const PutSpec&) const = default;
};

/// Standard normal CDF.
double norm_cdf(double x);

/// European put value per share. T = 0 collapses to intrinsic value;
/// sigma = 0 collapses to the deterministic forward payoff
/// max(K e^{-rT} - S, 0).
double bs_put_price(const PricingInputs& in);

/// European call value per share, same degenerate-limit conventions.
double bs_call_price(const PricingInputs& in);

/// Put delta in [-1, 0]. Degenerate inputs (T = 0 or sigma = 0) use the
/// limit: -1 if the deterministic payoff is in the money, else 0.
double bs_put_delta(const PricingInputs& in);

enum class OptionRight { kPut, kCall };

/// Inverts the Black-Scholes price by bisection on sigma in [1e-4, 5].
/// Stops at |model - price| < 1e-8 or 200 iterations. Throws
/// std::domain_error when `price` violates the no-arbitrage bounds for
/// the given right.
double implied_vol(double price, const PricingInputs& in_minus_sigma, OptionRight right);

/// Cox-Ross-Rubinstein binomial value of a European put; testing oracle
/// and fallback route. Converges to bs_put_price as steps grows.
double crr_binomial_put(const PricingInputs& in, int steps);

}  // namespace deltahedge
