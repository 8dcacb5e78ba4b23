#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "deltahedge/env.hpp"
#include "deltahedge/policy.hpp"

namespace deltahedge {

struct TrainConfig {
  std::vector<int> hidden = {32, 32};
  double lr = 3e-4;
  double discount = 0.99;
  double clip = 0.2;
  double gae_lambda = 0.95;
  int ppo_horizon = 256;
  int ppo_epochs = 10;
  int batch = 64;
  int nstep = 5;
  int replay = 10000;
  double tau = 0.005;
  double expl_sigma = 0.1;
  int learning_starts = 100;
};

struct TrainLogRow {
  int step = 0;
  int episode = 0;
  double reward = 0.0;
  double sr = 0.0;
};

/// Trains one policy on `env` for `timesteps` environment steps. Fixed
/// seed gives identical parameters; timesteps = 0 returns the seeded
/// initialization untouched.
PolicyParams train_learner(Env& env, LearnerKind kind, int timesteps, std::uint64_t seed,
                           const TrainConfig& cfg, std::vector<TrainLogRow>* log = nullptr);

/// Continues training an existing policy in place. Optimizer and critic
/// state are fresh per call; the alternating joint-training phases rely
/// on this.
void continue_training(Env& env, PolicyParams& policy, int timesteps, std::uint64_t seed,
                       const TrainConfig& cfg, std::vector<TrainLogRow>* log = nullptr);

/// Adam with the canonical (0.9, 0.999, 1e-8) moments.
class Adam {
 public:
  Adam(std::size_t n, double lr) : lr_(lr), m_(n, 0.0), v_(n, 0.0) {}
  void step(std::span<double> params, std::span<const double> grad);

 private:
  double lr_;
  int t_ = 0;
  std::vector<double> m_;
  std::vector<double> v_;
};

/// Minibatch shared by the stochastic-policy losses. `actions_raw` holds
/// the pre-squash Gaussian samples.
struct GaussianBatch {
  std::vector<std::vector<double>> obs;
  std::vector<double> actions_raw;
  std::vector<double> old_logp;   // clipped-surrogate only
  std::vector<double> advantages;
};

/// Actor parameter vectors below are [net params | log_std].

double ppo_policy_loss(const NetSpec& net, std::span<const double> actor,
                       const GaussianBatch& batch, double clip);
std::vector<double> ppo_policy_grad(const NetSpec& net, std::span<const double> actor,
                                    const GaussianBatch& batch, double clip);

double a2c_policy_loss(const NetSpec& net, std::span<const double> actor,
                       const GaussianBatch& batch);
std::vector<double> a2c_policy_grad(const NetSpec& net, std::span<const double> actor,
                                    const GaussianBatch& batch);

/// 0.5 * mean((V(s) - target)^2) over critic net parameters.
double value_loss(const NetSpec& net, std::span<const double> params,
                  std::span<const std::vector<double>> obs, std::span<const double> targets);
std::vector<double> value_grad(const NetSpec& net, std::span<const double> params,
                               std::span<const std::vector<double>> obs,
                               std::span<const double> targets);

/// 0.5 * mean((Q(s, a) - y)^2); the critic input is obs ++ squashed action.
double ddpg_critic_loss(const NetSpec& qnet, std::span<const double> q_params,
                        std::span<const std::vector<double>> obs,
                        std::span<const double> actions, std::span<const double> targets);
std::vector<double> ddpg_critic_grad(const NetSpec& qnet, std::span<const double> q_params,
                                     std::span<const std::vector<double>> obs,
                                     std::span<const double> actions,
                                     std::span<const double> targets);

/// -mean(Q(s, squash(mu(s)))) over actor net parameters, critic fixed.
double ddpg_actor_loss(const NetSpec& actor_net, std::span<const double> actor_params,
                       const NetSpec& qnet, std::span<const double> q_params,
                       std::span<const std::vector<double>> obs, ActionSquash squash);
std::vector<double> ddpg_actor_grad(const NetSpec& actor_net, std::span<const double> actor_params,
                                    const NetSpec& qnet, std::span<const double> q_params,
                                    std::span<const std::vector<double>> obs, ActionSquash squash);

}  // namespace deltahedge
