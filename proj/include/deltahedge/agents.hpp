#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "deltahedge/market_data.hpp"
#include "deltahedge/policy.hpp"
#include "deltahedge/portfolio.hpp"

namespace deltahedge {

/// Compact decision summary shared between the two agents; consumed via
/// cross-attention on the following day.
struct AgentMessage {
  Date date;
  enum class Sender { kTrading, kHedging } sender = Sender::kTrading;
  std::vector<double> summary;  // length d_msg
};

struct AttentionResult {
  std::vector<double> context;  // length d_msg; zeros for an empty inbox
  std::vector<double> weights;  // one per inbox message, sums to 1
};

/// Single-head scaled dot-product attention over the inbox summaries
/// (keys = values = summaries). The query is p_q * query_features, p_q
/// row-major d_msg x query_features.size().
AttentionResult exchange_context(std::span<const AgentMessage> inbox,
                                 std::span<const double> query_features,
                                 std::span<const double> p_q, int d_msg);

/// n = round(alpha * h / (|delta_put| * M)). Throws std::invalid_argument
/// when delta_put >= 0 (contract violation upstream).
std::int64_t target_put_contracts(double alpha, std::int64_t shares, double delta_put,
                                  int multiplier);

/// Fractional-contract test mode (effective multiplier 1): the exact
/// real-valued size that makes h + n * delta_put vanish at alpha = 1.
double target_put_fraction(double alpha, std::int64_t shares, double delta_put);

/// Signal inputs for one day; missing inputs carry the neutral
/// substitution and a flag so the run log can record it.
struct SignalValues {
  double f = 0.0;
  double sentiment = 50.0;
  double vix = 20.0;
  bool f_missing = false;
};

/// The put contract the hedger would trade today, when one exists.
struct TargetPutView {
  bool present = false;
  PutSpec spec;
  OptionQuote quote;
  double delta = 0.0;  // quote delta, or the model fallback
};

/// Feature layout. The full layout is
///   [p, h, b, n, strike_dist, dte, mid, delta, f, sent, vix, context...]
/// and the reduced layout (no options, no context) is
///   [p, h, b, n, f, sent, vix].
struct ObservationLayout {
  bool include_options = true;
  int d_msg = 8;

  [[nodiscard]] int base_dim() const { return include_options ? 11 : 7; }
  [[nodiscard]] int dim() const { return base_dim() + (include_options ? d_msg : 0); }
};

/// Raw (pre-normalization) base features, context excluded.
std::vector<double> raw_observation_features(const PortfolioState& state,
                                             const MarketSlice& slice, const SignalValues& sig,
                                             const TargetPutView& put, double v0,
                                             const ObservationLayout& layout);

/// Indices of features normalized with fitted statistics; the remaining
/// entries are structurally scaled and keep identity stats.
std::vector<int> zscored_feature_indices(const ObservationLayout& layout);

/// Fits mean/std at the z-scored indices from raw feature rows; identity
/// elsewhere (including the context block).
Normalizer fit_normalizer(std::span<const std::vector<double>> raw_rows,
                          const ObservationLayout& layout);

/// Normalized base features plus the attention context from `inbox`
/// (zeros when empty or when the layout has no context block).
std::vector<double> build_observation(const PortfolioState& state, const MarketSlice& slice,
                                      const SignalValues& sig, const TargetPutView& put,
                                      std::span<const AgentMessage> inbox,
                                      const PolicyParams& policy, double v0,
                                      const ObservationLayout& layout);

/// One act() output: the raw net value, the squashed action, and the
/// outgoing message summary (empty when the policy has no message head).
struct PolicyDecision {
  double raw = 0.0;
  double action = 0.0;
  std::vector<double> message;
};

/// Deterministic evaluation-mode action in [-1, 1].
PolicyDecision trading_policy_act(std::span<const double> obs, const PolicyParams& policy);

/// Deterministic evaluation-mode hedge ratio in [0, 1].
PolicyDecision hedging_policy_act(std::span<const double> obs, const PolicyParams& policy);

}  // namespace deltahedge
