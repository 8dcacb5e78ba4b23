#include "deltahedge/agents.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace deltahedge {

AttentionResult exchange_context(std::span<const AgentMessage> inbox,
                                 std::span<const double> query_features,
                                 std::span<const double> p_q, int d_msg) {
  AttentionResult out;
  out.context.assign(d_msg, 0.0);
  if (inbox.empty() || d_msg == 0) return out;

  if (p_q.size() != static_cast<std::size_t>(d_msg) * query_features.size()) {
    throw std::invalid_argument("exchange_context: query projection dimension mismatch");
  }
  std::vector<double> query(d_msg, 0.0);
  for (int i = 0; i < d_msg; ++i) {
    const double* row = p_q.data() + static_cast<std::size_t>(i) * query_features.size();
    for (std::size_t j = 0; j < query_features.size(); ++j) query[i] += row[j] * query_features[j];
  }

  const double scale = 1.0 / std::sqrt(static_cast<double>(d_msg));
  std::vector<double> scores(inbox.size());
  double max_score = -1e300;
  for (std::size_t m = 0; m < inbox.size(); ++m) {
    if (inbox[m].summary.size() != static_cast<std::size_t>(d_msg)) {
      throw std::invalid_argument("exchange_context: message length " + std::to_string(inbox[m].summary.size()) + " != d_msg " + std::to_string(d_msg));
    }
    double dot = 0.0;
    for (int i = 0; i < d_msg; ++i) dot += query[i] * inbox[m].summary[i];
    scores[m] = dot * scale;
    max_score = std::max(max_score, scores[m]);
  }

  double denom = 0.0;
  out.weights.resize(inbox.size());
  for (std::size_t m = 0; m < inbox.size(); ++m) {
    out.weights[m] = std::exp(scores[m] - max_score);
    denom += out.weights[m];
  }
  for (std::size_t m = 0; m < inbox.size(); ++m) {
    out.weights[m] /= denom;
    for (int i = 0; i < d_msg; ++i) out.context[i] += out.weights[m] * inbox[m].summary[i];
  }
  return out;
}

std::int64_t target_put_contracts(double alpha, std::int64_t shares, double delta_put,
                                  int multiplier) {
  if (delta_put >= 0.0) {
    throw std::invalid_argument("target_put_contracts: put delta must be negative");
  }
  if (shares <= 0 || alpha <= 0.0) return 0;
  const double n = alpha * static_cast<double>(shares) / (std::abs(delta_put) * multiplier);
  return static_cast<std::int64_t>(std::llround(n));
}

double target_put_fraction(double alpha, std::int64_t shares, double delta_put) {
  if (delta_put >= 0.0) {
    throw std::invalid_argument("target_put_fraction: put delta must be negative");
  }
  return alpha * static_cast<double>(shares) / std::abs(delta_put);
}

std::vector<double> raw_observation_features(const PortfolioState& state,
                                             const MarketSlice& slice, const SignalValues& sig,
                                             const TargetPutView& put, double v0,
                                             const ObservationLayout& layout) {
  const double p = slice.bar.close;
  std::vector<double> f;
  f.reserve(layout.base_dim());
  f.push_back(p);
  f.push_back(static_cast<double>(state.shares) * p / v0);
  f.push_back(state.cash / v0);
  const int multiplier = put.present ? put.spec.multiplier : 100;
  f.push_back(static_cast<double>(state.total_contracts()) * multiplier * p / v0);
  if (layout.include_options) {
    if (put.present) {
      f.push_back((put.spec.strike - p) / p);
      f.push_back(static_cast<double>(slice.date.days_until(put.spec.expiry)) / 30.0 - 1.0);
      f.push_back(0.5 * (put.quote.bid + put.quote.ask));
      f.push_back(put.delta);
    } else {
      f.insert(f.end(), {0.0, 0.0, 0.0, 0.0});
    }
  }
  f.push_back(sig.f);
  f.push_back((sig.sentiment - 50.0) / 50.0);
  f.push_back(sig.vix);
  return f;
}

std::vector<int> zscored_feature_indices(const ObservationLayout& layout) {
  if (layout.include_options) return {0, 6, 8, 10};  // p, mid, f, vix
  return {0, 4, 6};                                  // p, f, vix
}

Normalizer fit_normalizer(std::span<const std::vector<double>> raw_rows,
                          const ObservationLayout& layout) {
  Normalizer norm;
  norm.mean.assign(layout.dim(), 0.0);
  norm.std.assign(layout.dim(), 1.0);
  if (raw_rows.empty()) return norm;

  const auto n = static_cast<double>(raw_rows.size());
  for (int idx : zscored_feature_indices(layout)) {
    double mean = 0.0;
    for (const auto& row : raw_rows) mean += row[idx];
    mean /= n;
    double var = 0.0;
    for (const auto& row : raw_rows) var += (row[idx] - mean) * (row[idx] - mean);
    var = raw_rows.size() > 1 ? var / (n - 1.0) : 0.0;
    norm.mean[idx] = mean;
    norm.std[idx] = std::max(std::sqrt(var), 1e-8);
  }
  return norm;
}

std::vector<double> build_observation(const PortfolioState& state, const MarketSlice& slice,
                                      const SignalValues& sig, const TargetPutView& put,
                                      std::span<const AgentMessage> inbox,
                                      const PolicyParams& policy, double v0,
                                      const ObservationLayout& layout) {
  std::vector<double> obs = raw_observation_features(state, slice, sig, put, v0, layout);
  for (std::size_t i = 0; i < obs.size(); ++i) {
    obs[i] = (obs[i] - policy.normalizer.mean[i]) / policy.normalizer.std[i];
  }
  if (layout.include_options && layout.d_msg > 0) {
    const auto attn = exchange_context(inbox, obs, policy.p_q(), layout.d_msg);
    obs.insert(obs.end(), attn.context.begin(), attn.context.end());
  }
  return obs;
}

namespace {

PolicyDecision policy_act(std::span<const double> obs, const PolicyParams& policy) {
  if (obs.size() != static_cast<std::size_t>(policy.net.input_dim())) {
    throw std::invalid_argument("policy act: observation dimension mismatch");
  }
  NetCache cache;
  PolicyDecision d;
  d.raw = net_forward_cached(policy.net, policy.net_params(), obs, cache)[0];
  d.action = apply_squash(policy.squash, d.raw);
  if (policy.d_msg > 0) {
    const auto& hidden = cache.acts[cache.acts.size() - 2];
    d.message.assign(policy.d_msg, 0.0);
    const auto w = policy.w_msg();
    for (int i = 0; i < policy.d_msg; ++i) {
      const double* row = w.data() + static_cast<std::size_t>(i) * hidden.size();
      for (std::size_t j = 0; j < hidden.size(); ++j) d.message[i] += row[j] * hidden[j];
    }
  }
  return d;
}

}  // namespace

PolicyDecision trading_policy_act(std::span<const double> obs, const PolicyParams& policy) {
  if (policy.squash != ActionSquash::kTanh) {
    throw std::invalid_argument("trading_policy_act: policy is not a trading policy");
  }
  return policy_act(obs, policy);
}

PolicyDecision hedging_policy_act(std::span<const double> obs, const PolicyParams& policy) {
  if (policy.squash != ActionSquash::kSigmoid) {
    throw std::invalid_argument("hedging_policy_act: policy is not a hedging policy");
  }
  return policy_act(obs, policy);
}

}  // namespace deltahedge
