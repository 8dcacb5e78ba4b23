#include "deltahedge/learners.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "deltahedge/rng.hpp"

namespace deltahedge {

void Adam::step(std::span<double> params, std::span<const double> grad) {
  if (params.size() != m_.size() || grad.size() != m_.size()) {
    throw std::invalid_argument("Adam: size mismatch");
  }
  ++t_;
  const double b1 = 0.9, b2 = 0.999, eps = 1e-8;
  const double corr1 = 1.0 - std::pow(b1, t_);
  const double corr2 = 1.0 - std::pow(b2, t_);
  for (std::size_t i = 0; i < params.size(); ++i) {
    m_[i] = b1 * m_[i] + (1.0 - b1) * grad[i];
    v_[i] = b2 * v_[i] + (1.0 - b2) * grad[i] * grad[i];
    params[i] -= lr_ * (m_[i] / corr1) / (std::sqrt(v_[i] / corr2) + eps);
  }
}

namespace {

constexpr double kLog2Pi = 1.8378770664093453;

double gauss_logp(double u, double mu, double log_std) {
  const double z = (u - mu) / std::exp(log_std);
  return -0.5 * z * z - log_std - 0.5 * kLog2Pi;
}

struct LogpGrad {
  double d_mu;
  double d_log_std;
};

LogpGrad gauss_logp_grad(double u, double mu, double log_std) {
  const double sigma = std::exp(log_std);
  const double z = (u - mu) / sigma;
  return {z / sigma, z * z - 1.0};
}

double squash_derivative(ActionSquash squash, double squashed) {
  if (squash == ActionSquash::kTanh) return 1.0 - squashed * squashed;
  return squashed * (1.0 - squashed);
}

/// Shared core of the two stochastic-policy losses. `use_ratio` selects
/// the clipped surrogate; otherwise plain -logp * advantage.
template <bool kUseRatio, bool kWantGrad>
double gaussian_policy_core(const NetSpec& net, std::span<const double> actor,
                            const GaussianBatch& batch, double clip,
                            std::vector<double>* grad_out) {
  const std::size_t n = batch.obs.size();
  if (n == 0) throw std::invalid_argument("policy loss: empty batch");
  const std::span<const double> net_params(actor.data(), net.param_count());
  const double log_std = actor[net.param_count()];

  if (kWantGrad) grad_out->assign(actor.size(), 0.0);
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    NetCache cache;
    const double mu = net_forward_cached(net, net_params, batch.obs[i], cache)[0];
    const double logp = gauss_logp(batch.actions_raw[i], mu, log_std);
    const double adv = batch.advantages[i];

    double sample_loss;
    double dloss_dlogp;
    if (kUseRatio) {
      const double ratio = std::exp(logp - batch.old_logp[i]);
      const double clipped = std::clamp(ratio, 1.0 - clip, 1.0 + clip);
      const double surr1 = ratio * adv;
      const double surr2 = clipped * adv;
      sample_loss = -std::min(surr1, surr2);
      dloss_dlogp = surr1 <= surr2 ? -ratio * adv : 0.0;
    } else {
      sample_loss = -logp * adv;
      dloss_dlogp = -adv;
    }
    loss += sample_loss;

    if (kWantGrad && dloss_dlogp != 0.0) {
      const auto lg = gauss_logp_grad(batch.actions_raw[i], mu, log_std);
      const double upstream[1] = {dloss_dlogp * lg.d_mu / static_cast<double>(n)};
      net_backward(net, net_params, cache, upstream,
                   std::span<double>(grad_out->data(), net.param_count()));
      (*grad_out)[net.param_count()] += dloss_dlogp * lg.d_log_std / static_cast<double>(n);
    }
  }
  return loss / static_cast<double>(n);
}

}  // namespace

double ppo_policy_loss(const NetSpec& net, std::span<const double> actor,
                       const GaussianBatch& batch, double clip) {
  return gaussian_policy_core<true, false>(net, actor, batch, clip, nullptr);
}

std::vector<double> ppo_policy_grad(const NetSpec& net, std::span<const double> actor,
                                    const GaussianBatch& batch, double clip) {
  std::vector<double> grad;
  gaussian_policy_core<true, true>(net, actor, batch, clip, &grad);
  return grad;
}

double a2c_policy_loss(const NetSpec& net, std::span<const double> actor,
                       const GaussianBatch& batch) {
  return gaussian_policy_core<false, false>(net, actor, batch, 0.0, nullptr);
}

std::vector<double> a2c_policy_grad(const NetSpec& net, std::span<const double> actor,
                                    const GaussianBatch& batch) {
  std::vector<double> grad;
  gaussian_policy_core<false, true>(net, actor, batch, 0.0, &grad);
  return grad;
}

double value_loss(const NetSpec& net, std::span<const double> params,
                  std::span<const std::vector<double>> obs, std::span<const double> targets) {
  double loss = 0.0;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const double v = net_forward(net, params, obs[i])[0];
    loss += 0.5 * (v - targets[i]) * (v - targets[i]);
  }
  return loss / static_cast<double>(obs.size());
}

std::vector<double> value_grad(const NetSpec& net, std::span<const double> params,
                               std::span<const std::vector<double>> obs,
                               std::span<const double> targets) {
  std::vector<double> grad(params.size(), 0.0);
  const double n = static_cast<double>(obs.size());
  for (std::size_t i = 0; i < obs.size(); ++i) {
    NetCache cache;
    const double v = net_forward_cached(net, params, obs[i], cache)[0];
    const double upstream[1] = {(v - targets[i]) / n};
    net_backward(net, params, cache, upstream, grad);
  }
  return grad;
}

namespace {

std::vector<double> critic_input(std::span<const double> obs, double action) {
  std::vector<double> in(obs.begin(), obs.end());
  in.push_back(action);
  return in;
}

}  // namespace

double ddpg_critic_loss(const NetSpec& qnet, std::span<const double> q_params,
                        std::span<const std::vector<double>> obs,
                        std::span<const double> actions, std::span<const double> targets) {
  double loss = 0.0;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const double q = net_forward(qnet, q_params, critic_input(obs[i], actions[i]))[0];
    loss += 0.5 * (q - targets[i]) * (q - targets[i]);
  }
  return loss / static_cast<double>(obs.size());
}

std::vector<double> ddpg_critic_grad(const NetSpec& qnet, std::span<const double> q_params,
                                     std::span<const std::vector<double>> obs,
                                     std::span<const double> actions,
                                     std::span<const double> targets) {
  std::vector<double> grad(q_params.size(), 0.0);
  const double n = static_cast<double>(obs.size());
  for (std::size_t i = 0; i < obs.size(); ++i) {
    NetCache cache;
    const double q = net_forward_cached(qnet, q_params, critic_input(obs[i], actions[i]), cache)[0];
    const double upstream[1] = {(q - targets[i]) / n};
    net_backward(qnet, q_params, cache, upstream, grad);
  }
  return grad;
}

double ddpg_actor_loss(const NetSpec& actor_net, std::span<const double> actor_params,
                       const NetSpec& qnet, std::span<const double> q_params,
                       std::span<const std::vector<double>> obs, ActionSquash squash) {
  double loss = 0.0;
  for (const auto& s : obs) {
    const double u = net_forward(actor_net, actor_params, s)[0];
    const double a = apply_squash(squash, u);
    loss -= net_forward(qnet, q_params, critic_input(s, a))[0];
  }
  return loss / static_cast<double>(obs.size());
}

std::vector<double> ddpg_actor_grad(const NetSpec& actor_net,
                                    std::span<const double> actor_params, const NetSpec& qnet,
                                    std::span<const double> q_params,
                                    std::span<const std::vector<double>> obs,
                                    ActionSquash squash) {
  std::vector<double> grad(actor_params.size(), 0.0);
  std::vector<double> q_scratch(q_params.size(), 0.0);
  const double n = static_cast<double>(obs.size());
  for (const auto& s : obs) {
    NetCache actor_cache;
    const double u = net_forward_cached(actor_net, actor_params, s, actor_cache)[0];
    const double a = apply_squash(squash, u);

    NetCache q_cache;
    net_forward_cached(qnet, q_params, critic_input(s, a), q_cache);
    const double upstream_q[1] = {-1.0 / n};
    std::fill(q_scratch.begin(), q_scratch.end(), 0.0);
    const auto dq_dinput = net_backward(qnet, q_params, q_cache, upstream_q, q_scratch);
    const double dq_da = dq_dinput.back();

    const double upstream_actor[1] = {dq_da * squash_derivative(squash, a)};
    net_backward(actor_net, actor_params, actor_cache, upstream_actor, grad);
  }
  return grad;
}

namespace {

struct RolloutSample {
  std::vector<double> obs;
  double action_raw = 0.0;
  double logp = 0.0;
  double reward = 0.0;
  double value = 0.0;
  bool done = false;
};

struct StepTracker {
  int step = 0;
  int episode = 0;
  double episode_sr = 0.0;
  std::vector<TrainLogRow>* log;

  void record(double reward, bool done) {
    episode_sr += reward;
    if (log) log->push_back({step, episode, reward, episode_sr});
    ++step;
    if (done) {
      ++episode;
      episode_sr = 0.0;
    }
  }
};

void fisher_yates(std::vector<std::size_t>& idx, Rng& rng) {
  for (std::size_t i = idx.size(); i > 1; --i) {
    std::swap(idx[i - 1], idx[rng.uniform_index(i)]);
  }
}

void train_clipped_pg(Env& env, PolicyParams& policy, int timesteps, std::uint64_t seed,
                      const TrainConfig& cfg, std::vector<TrainLogRow>* log) {
  NetSpec critic;
  critic.layers.push_back(env.obs_dim());
  for (int h : cfg.hidden) critic.layers.push_back(h);
  critic.layers.push_back(1);
  std::vector<double> critic_params = init_net_params(critic, derive_seed(seed, 3));

  Adam opt_actor(policy.actor_param_count(), cfg.lr);
  Adam opt_critic(critic_params.size(), cfg.lr);
  Rng rng(derive_seed(seed, 4));

  std::vector<double> obs = env.reset();
  StepTracker tracker{0, 0, 0.0, log};
  std::vector<RolloutSample> buffer;

  while (tracker.step < timesteps) {
    const int horizon = std::min(cfg.ppo_horizon, timesteps - tracker.step);
    buffer.clear();
    for (int t = 0; t < horizon; ++t) {
      RolloutSample s;
      s.obs = obs;
      const double mu = net_forward(policy.net, policy.net_params(), obs)[0];
      const double log_std = policy.log_std();
      s.action_raw = mu + std::exp(log_std) * rng.normal();
      s.logp = gauss_logp(s.action_raw, mu, log_std);
      s.value = net_forward(critic, critic_params, obs)[0];
      const auto step = env.step(apply_squash(env.action_squash(), s.action_raw));
      s.reward = step.reward;
      s.done = step.done;
      buffer.push_back(std::move(s));
      tracker.record(step.reward, step.done);
      obs = step.done ? env.reset() : step.obs;
    }

    const std::size_t n = buffer.size();
    const double bootstrap =
        buffer.back().done ? 0.0 : net_forward(critic, critic_params, obs)[0];
    std::vector<double> adv(n), ret(n);
    double gae = 0.0;
    for (std::size_t t = n; t-- > 0;) {
      const double next_v = t + 1 == n ? bootstrap : buffer[t + 1].value;
      const double nonterminal = buffer[t].done ? 0.0 : 1.0;
      const double delta =
          buffer[t].reward + cfg.discount * next_v * nonterminal - buffer[t].value;
      gae = delta + cfg.discount * cfg.gae_lambda * nonterminal * gae;
      adv[t] = gae;
      ret[t] = gae + buffer[t].value;
    }
    double adv_mean = 0.0;
    for (double a : adv) adv_mean += a;
    adv_mean /= static_cast<double>(n);
    double adv_var = 0.0;
    for (double a : adv) adv_var += (a - adv_mean) * (a - adv_mean);
    const double adv_std = std::sqrt(adv_var / static_cast<double>(n)) + 1e-8;
    for (double& a : adv) a = (a - adv_mean) / adv_std;

    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (int epoch = 0; epoch < cfg.ppo_epochs; ++epoch) {
      fisher_yates(idx, rng);
      for (std::size_t start = 0; start < n; start += cfg.batch) {
        const std::size_t stop = std::min(n, start + cfg.batch);
        GaussianBatch batch;
        std::vector<double> targets;
        for (std::size_t k = start; k < stop; ++k) {
          const auto& s = buffer[idx[k]];
          batch.obs.push_back(s.obs);
          batch.actions_raw.push_back(s.action_raw);
          batch.old_logp.push_back(s.logp);
          batch.advantages.push_back(adv[idx[k]]);
          targets.push_back(ret[idx[k]]);
        }
        const auto pg = ppo_policy_grad(policy.net, policy.actor(), batch, cfg.clip);
        opt_actor.step(policy.actor(), pg);
        const auto vg = value_grad(critic, critic_params, batch.obs, targets);
        opt_critic.step(critic_params, vg);
      }
    }
  }
}

void train_advantage_ac(Env& env, PolicyParams& policy, int timesteps, std::uint64_t seed,
                        const TrainConfig& cfg, std::vector<TrainLogRow>* log) {
  NetSpec critic;
  critic.layers.push_back(env.obs_dim());
  for (int h : cfg.hidden) critic.layers.push_back(h);
  critic.layers.push_back(1);
  std::vector<double> critic_params = init_net_params(critic, derive_seed(seed, 3));

  Adam opt_actor(policy.actor_param_count(), cfg.lr);
  Adam opt_critic(critic_params.size(), cfg.lr);
  Rng rng(derive_seed(seed, 4));

  std::vector<double> obs = env.reset();
  StepTracker tracker{0, 0, 0.0, log};
  std::vector<RolloutSample> chunk;

  while (tracker.step < timesteps) {
    chunk.clear();
    bool ended = false;
    for (int t = 0; t < cfg.nstep && tracker.step < timesteps && !ended; ++t) {
      RolloutSample s;
      s.obs = obs;
      const double mu = net_forward(policy.net, policy.net_params(), obs)[0];
      const double log_std = policy.log_std();
      s.action_raw = mu + std::exp(log_std) * rng.normal();
      s.value = net_forward(critic, critic_params, obs)[0];
      const auto step = env.step(apply_squash(env.action_squash(), s.action_raw));
      s.reward = step.reward;
      s.done = step.done;
      chunk.push_back(std::move(s));
      tracker.record(step.reward, step.done);
      ended = step.done;
      obs = step.done ? env.reset() : step.obs;
    }

    double running = chunk.back().done ? 0.0 : net_forward(critic, critic_params, obs)[0];
    GaussianBatch batch;
    std::vector<double> targets(chunk.size());
    for (std::size_t t = chunk.size(); t-- > 0;) {
      running = chunk[t].reward + cfg.discount * running;
      targets[t] = running;
    }
    for (std::size_t t = 0; t < chunk.size(); ++t) {
      batch.obs.push_back(chunk[t].obs);
      batch.actions_raw.push_back(chunk[t].action_raw);
      batch.advantages.push_back(targets[t] - chunk[t].value);
    }
    const auto pg = a2c_policy_grad(policy.net, policy.actor(), batch);
    opt_actor.step(policy.actor(), pg);
    const auto vg = value_grad(critic, critic_params, batch.obs, targets);
    opt_critic.step(critic_params, vg);
  }
}

struct Replay {
  std::vector<std::vector<double>> obs;
  std::vector<double> action;
  std::vector<double> reward;
  std::vector<std::vector<double>> next_obs;
  std::vector<double> nonterminal;
  std::size_t capacity;
  std::size_t write = 0;
  bool full = false;

  explicit Replay(std::size_t cap) : capacity(cap) {}

  [[nodiscard]] std::size_t size() const { return full ? capacity : write; }

  void push(std::vector<double> s, double a, double r, std::vector<double> s2, bool done) {
    if (size() < capacity) {
      obs.push_back(std::move(s));
      action.push_back(a);
      reward.push_back(r);
      next_obs.push_back(std::move(s2));
      nonterminal.push_back(done ? 0.0 : 1.0);
    } else {
      obs[write] = std::move(s);
      action[write] = a;
      reward[write] = r;
      next_obs[write] = std::move(s2);
      nonterminal[write] = done ? 0.0 : 1.0;
    }
    write = (write + 1) % capacity;
    if (write == 0) full = true;
  }
};

void train_deterministic_ac(Env& env, PolicyParams& policy, int timesteps, std::uint64_t seed,
                            const TrainConfig& cfg, std::vector<TrainLogRow>* log) {
  NetSpec qnet;
  qnet.layers.push_back(env.obs_dim() + 1);
  for (int h : cfg.hidden) qnet.layers.push_back(h);
  qnet.layers.push_back(1);
  std::vector<double> q_params = init_net_params(qnet, derive_seed(seed, 3));

  std::vector<double> actor_target(policy.net_params().begin(), policy.net_params().end());
  std::vector<double> q_target = q_params;

  const std::span<double> actor_span(policy.flat.data(), policy.net.param_count());
  Adam opt_actor(policy.net.param_count(), cfg.lr);
  Adam opt_critic(q_params.size(), cfg.lr);
  Rng rng(derive_seed(seed, 4));

  Replay replay(cfg.replay);
  std::vector<double> obs = env.reset();
  StepTracker tracker{0, 0, 0.0, log};

  while (tracker.step < timesteps) {
    const double mu = net_forward(policy.net, policy.net_params(), obs)[0];
    const double action =
        apply_squash(env.action_squash(), mu + cfg.expl_sigma * rng.normal());
    const auto step = env.step(action);
    replay.push(obs, action, step.reward, step.obs, step.done);
    tracker.record(step.reward, step.done);
    obs = step.done ? env.reset() : step.obs;

    if (replay.size() >= static_cast<std::size_t>(std::max(cfg.learning_starts, cfg.batch))) {
      std::vector<std::vector<double>> batch_obs;
      std::vector<double> batch_act, batch_y;
      for (int k = 0; k < cfg.batch; ++k) {
        const std::size_t i = rng.uniform_index(replay.size());
        const double u2 = net_forward(policy.net, actor_target, replay.next_obs[i])[0];
        const double a2 = apply_squash(env.action_squash(), u2);
        const double q2 = net_forward(qnet, q_target, critic_input(replay.next_obs[i], a2))[0];
        batch_obs.push_back(replay.obs[i]);
        batch_act.push_back(replay.action[i]);
        batch_y.push_back(replay.reward[i] + cfg.discount * replay.nonterminal[i] * q2);
      }
      const auto cg = ddpg_critic_grad(qnet, q_params, batch_obs, batch_act, batch_y);
      opt_critic.step(q_params, cg);
      const auto ag =
          ddpg_actor_grad(policy.net, actor_span, qnet, q_params, batch_obs, env.action_squash());
      opt_actor.step(actor_span, ag);

      for (std::size_t i = 0; i < actor_target.size(); ++i) {
        actor_target[i] += cfg.tau * (actor_span[i] - actor_target[i]);
      }
      for (std::size_t i = 0; i < q_target.size(); ++i) {
        q_target[i] += cfg.tau * (q_params[i] - q_target[i]);
      }
    }
  }
}

}  // namespace

void continue_training(Env& env, PolicyParams& policy, int timesteps, std::uint64_t seed,
                       const TrainConfig& cfg, std::vector<TrainLogRow>* log) {
  if (timesteps <= 0) return;
  env.attach_policy(&policy);
  switch (policy.kind) {
    case LearnerKind::kClippedPG:
      train_clipped_pg(env, policy, timesteps, seed, cfg, log);
      break;
    case LearnerKind::kAdvantageAC:
      train_advantage_ac(env, policy, timesteps, seed, cfg, log);
      break;
    case LearnerKind::kDeterministicAC:
      train_deterministic_ac(env, policy, timesteps, seed, cfg, log);
      break;
  }
  env.attach_policy(nullptr);
}

PolicyParams train_learner(Env& env, LearnerKind kind, int timesteps, std::uint64_t seed,
                           const TrainConfig& cfg, std::vector<TrainLogRow>* log) {
  PolicyParams policy = init_policy(kind, env.action_squash(), env.obs_dim(), cfg.hidden,
                                    env.d_msg(), env.query_dim(), seed);
  policy.normalizer = env.normalizer();
  continue_training(env, policy, timesteps, seed, cfg, log);
  return policy;
}

}  // namespace deltahedge
