#include "deltahedge/env.hpp"

#include <stdexcept>

namespace deltahedge {

WindowEnv::WindowEnv(const Dataset& data, EngineConfig cfg, int begin, int end, AgentRole role,
                     const PolicyParams* other)
    : cfg_(cfg), loop_(data, cfg, begin, end), role_(role), other_(other) {
  norm_ = fit_window_normalizer(data, cfg_, begin, end);
}

std::vector<double> WindowEnv::advance_to_decision_point() {
  loop_.begin_day();
  if (role_ == AgentRole::kTrading) {
    return loop_.trading_observation(*learner_);
  }
  // Hedging learner: the frozen trading side acts first.
  double a = 0.0;
  std::vector<double> msg;
  if (other_) {
    const auto obs = loop_.trading_observation(*other_);
    auto decision = trading_policy_act(obs, *other_);
    a = decision.action;
    msg = std::move(decision.message);
  }
  loop_.apply_trading(a, std::move(msg));
  return loop_.hedging_observation(*learner_);
}

std::vector<double> WindowEnv::reset() {
  if (!learner_) throw std::logic_error("WindowEnv: no learner policy attached");
  loop_.reset();
  pending_obs_ = advance_to_decision_point();
  return pending_obs_;
}

Env::StepResult WindowEnv::step(double action) {
  if (!learner_) throw std::logic_error("WindowEnv: no learner policy attached");
  StepResult out;

  // The learner's outgoing message comes from the same forward pass a
  // deterministic act would produce on the decision-point observation.
  std::vector<double> msg;
  if (d_msg() > 0) {
    NetCache cache;
    net_forward_cached(learner_->net, learner_->net_params(), pending_obs_, cache);
    const auto& hidden = cache.acts[cache.acts.size() - 2];
    msg.assign(learner_->d_msg, 0.0);
    const auto w = learner_->w_msg();
    for (int i = 0; i < learner_->d_msg; ++i) {
      const double* row = w.data() + static_cast<std::size_t>(i) * hidden.size();
      for (std::size_t j = 0; j < hidden.size(); ++j) msg[i] += row[j] * hidden[j];
    }
  }

  if (role_ == AgentRole::kTrading) {
    loop_.apply_trading(action, std::move(msg));
    double alpha = 0.0;
    std::vector<double> hedge_msg;
    if (other_ && cfg_.allow_hedging) {
      const auto obs = loop_.hedging_observation(*other_);
      auto decision = hedging_policy_act(obs, *other_);
      alpha = decision.action;
      hedge_msg = std::move(decision.message);
    }
    loop_.apply_hedging(alpha, std::move(hedge_msg));
  } else {
    loop_.apply_hedging(action, std::move(msg));
  }

  out.reward = loop_.finish_day();
  out.done = loop_.done();
  if (!out.done) {
    pending_obs_ = advance_to_decision_point();
    out.obs = pending_obs_;
  } else {
    out.obs.assign(obs_dim(), 0.0);
  }
  return out;
}

}  // namespace deltahedge
