#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "deltahedge/engine.hpp"
#include "deltahedge/learners.hpp"

namespace deltahedge {

/// Quarterly retrain cadence in trading days. Lookback and validation
/// windows both end strictly before the deployment boundary.
struct RetrainSchedule {
  int cycle = 63;
  int lookback = 90;
  int validation = 30;
};

struct CandidateResult {
  LearnerKind kind = LearnerKind::kClippedPG;
  PolicyParams policy;
  std::vector<double> validation_returns;
  std::optional<double> metric;  // mean/std of validation returns
};

/// M = mean / sample-std of the validation daily returns; nullopt when the
/// std degenerates.
std::optional<double> validation_metric(std::span<const double> returns);

/// argmax of metric; ties break by the fixed learner-kind order. Returns
/// -1 when every metric is undefined.
int select_active(std::span<const CandidateResult> results);

struct CycleOutcome {
  Date cycle_start;
  std::vector<CandidateResult> candidates;
  int selected = -1;  // -1: previous policy retained
  std::string event;  // retention or tie note, empty otherwise
};

/// Trains one candidate per kind on the lookback window ending 30 days
/// before `deploy_idx`, evaluates each on the adjacent validation window
/// against the frozen trading policy, and selects. Candidate training
/// fans out across OpenMP threads; results are independent of thread
/// count.
CycleOutcome run_cycle(const Dataset& data, const EngineConfig& cfg,
                       const TrainConfig& train_cfg, const RetrainSchedule& sched,
                       int deploy_idx, const PolicyParams& trading_policy, std::uint64_t seed,
                       std::span<const LearnerKind> kinds, int timesteps,
                       bool validation_costs);

/// The quarterly schedule materialized over a test range: which hedging
/// policy is live on each day. Boundaries with insufficient history or
/// all-degenerate metrics retain the previous active policy.
class Deployment {
 public:
  std::vector<int> cycle_starts;        // slice indices
  std::vector<CycleOutcome> outcomes;   // parallel to cycle_starts

  /// Active hedging policy for a test-range slice index; nullptr before
  /// the first successful selection.
  [[nodiscard]] const PolicyParams* active_for(int day_idx) const;

 private:
  friend Deployment deployment_loop(const Dataset&, const EngineConfig&, const TrainConfig&,
                                    const RetrainSchedule&, int, int, const PolicyParams&,
                                    std::uint64_t, std::span<const LearnerKind>, int, bool);
  std::vector<int> active_cycle_;       // per cycle: cycle index owning the live policy, -1 none
};

Deployment deployment_loop(const Dataset& data, const EngineConfig& cfg,
                           const TrainConfig& train_cfg, const RetrainSchedule& sched,
                           int test_begin, int test_end, const PolicyParams& trading_policy,
                           std::uint64_t seed, std::span<const LearnerKind> kinds, int timesteps,
                           bool validation_costs);

}  // namespace deltahedge
