#pragma once

#include <memory>
#include <vector>

#include "deltahedge/engine.hpp"

namespace deltahedge {

/// Daily-granularity environment contract: observation in, squashed
/// action out, shared reward back.
class Env {
 public:
  struct StepResult {
    std::vector<double> obs;
    double reward = 0.0;
    bool done = false;
  };

  virtual ~Env() = default;
  [[nodiscard]] virtual int obs_dim() const = 0;
  [[nodiscard]] virtual ActionSquash action_squash() const = 0;
  [[nodiscard]] virtual const Normalizer& normalizer() const = 0;
  [[nodiscard]] virtual int d_msg() const = 0;
  [[nodiscard]] virtual int query_dim() const = 0;
  virtual void attach_policy(const PolicyParams* learner_policy) = 0;
  virtual std::vector<double> reset() = 0;
  virtual StepResult step(double action) = 0;
};

enum class AgentRole { kTrading, kHedging };

/// One agent learns over a slice window; the other side is the frozen
/// `other` policy (or a neutral no-op when absent). An episode is one
/// pass over the window. Observation statistics are fitted on the window
/// at construction and frozen.
class WindowEnv : public Env {
 public:
  WindowEnv(const Dataset& data, EngineConfig cfg, int begin, int end, AgentRole role,
            const PolicyParams* other);

  [[nodiscard]] int obs_dim() const override { return cfg_.layout.dim(); }
  [[nodiscard]] ActionSquash action_squash() const override {
    return role_ == AgentRole::kTrading ? ActionSquash::kTanh : ActionSquash::kSigmoid;
  }
  [[nodiscard]] const Normalizer& normalizer() const override { return norm_; }
  [[nodiscard]] int d_msg() const override {
    return cfg_.layout.include_options ? cfg_.layout.d_msg : 0;
  }
  [[nodiscard]] int query_dim() const override {
    return cfg_.layout.include_options ? cfg_.layout.base_dim() : 0;
  }
  void attach_policy(const PolicyParams* learner_policy) override { learner_ = learner_policy; }

  std::vector<double> reset() override;
  StepResult step(double action) override;

  [[nodiscard]] const DayLoop& loop() const { return loop_; }

 private:
  std::vector<double> advance_to_decision_point();

  EngineConfig cfg_;
  DayLoop loop_;
  AgentRole role_;
  const PolicyParams* other_;
  const PolicyParams* learner_ = nullptr;
  Normalizer norm_;
  std::vector<double> pending_obs_;
};

}  // namespace deltahedge
