#include "deltahedge/ensemble.hpp"

#include <cmath>

#include "deltahedge/rng.hpp"

namespace deltahedge {

namespace {

/// Frozen trading + frozen hedging over [begin, end); daily returns out.
std::vector<double> simulate_returns(const Dataset& data, const EngineConfig& cfg, int begin,
                                     int end, const PolicyParams& trading,
                                     const PolicyParams& hedging) {
  DayLoop loop(data, cfg, begin, end);
  while (!loop.done()) {
    loop.begin_day();
    auto trade = trading_policy_act(loop.trading_observation(trading), trading);
    loop.apply_trading(trade.action, std::move(trade.message));
    auto hedge = hedging_policy_act(loop.hedging_observation(hedging), hedging);
    loop.apply_hedging(hedge.action, std::move(hedge.message));
    loop.finish_day();
  }
  std::vector<double> rets;
  rets.reserve(loop.records().size());
  for (const auto& rec : loop.records()) rets.push_back(rec.ret);
  return rets;
}

int kind_rank(LearnerKind kind) {
  for (int i = 0; i < 3; ++i) {
    if (kLearnerOrder[i] == kind) return i;
  }
  return 3;
}

}  // namespace

std::optional<double> validation_metric(std::span<const double> returns) {
  const std::size_t n = returns.size();
  if (n < 2) return std::nullopt;
  double mean = 0.0;
  for (double r : returns) mean += r;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double r : returns) var += (r - mean) * (r - mean);
  var /= static_cast<double>(n - 1);
  const double sd = std::sqrt(var);
  if (sd < 1e-12) return std::nullopt;
  return mean / sd;
}

int select_active(std::span<const CandidateResult> results) {
  int best = -1;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i].metric) continue;
    if (best < 0) {
      best = static_cast<int>(i);
      continue;
    }
    const double cur = *results[i].metric;
    const double top = *results[best].metric;
    if (cur > top ||
        (cur == top && kind_rank(results[i].kind) < kind_rank(results[best].kind))) {
      best = static_cast<int>(i);
    }
  }
  return best;
}

CycleOutcome run_cycle(const Dataset& data, const EngineConfig& cfg,
                       const TrainConfig& train_cfg, const RetrainSchedule& sched,
                       int deploy_idx, const PolicyParams& trading_policy, std::uint64_t seed,
                       std::span<const LearnerKind> kinds, int timesteps,
                       bool validation_costs) {
  CycleOutcome out;
  out.cycle_start = data.slices[deploy_idx].date;

  const int needed = sched.lookback + sched.validation;
  if (deploy_idx < needed) {
    out.event = out.cycle_start.to_string() + ": insufficient history for retraining (" +
                std::to_string(deploy_idx) + " < " + std::to_string(needed) +
                " trading days), retaining previous policy";
    return out;
  }
  const int train_begin = deploy_idx - needed;
  const int train_end = deploy_idx - sched.validation;
  const int val_begin = train_end;
  const int val_end = deploy_idx;

  EngineConfig val_cfg = cfg;
  if (!validation_costs) val_cfg.costs = CostModel{0.0, 0.0, 0.0};

  out.candidates.resize(kinds.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < static_cast<int>(kinds.size()); ++i) {
    CandidateResult cand;
    cand.kind = kinds[i];
    WindowEnv env(data, cfg, train_begin, train_end, AgentRole::kHedging, &trading_policy);
    cand.policy = train_learner(env, kinds[i], timesteps,
                                derive_seed(seed, 100 + static_cast<std::uint64_t>(i)),
                                train_cfg);
    cand.policy.train_start = data.slices[train_begin].date.to_string();
    cand.policy.train_end = data.slices[train_end - 1].date.to_string();
    cand.validation_returns =
        simulate_returns(data, val_cfg, val_begin, val_end, trading_policy, cand.policy);
    cand.metric = validation_metric(cand.validation_returns);
    out.candidates[i] = std::move(cand);
  }

  out.selected = select_active(out.candidates);
  if (out.selected < 0) {
    out.event = out.cycle_start.to_string() +
                ": all candidate metrics degenerate, retaining previous policy";
  } else {
    for (std::size_t i = 0; i < out.candidates.size(); ++i) {
      if (static_cast<int>(i) == out.selected || !out.candidates[i].metric) continue;
      if (*out.candidates[i].metric == *out.candidates[out.selected].metric) {
        out.event = out.cycle_start.to_string() + ": metric tie broken by learner-kind order";
        break;
      }
    }
  }
  return out;
}

const PolicyParams* Deployment::active_for(int day_idx) const {
  const PolicyParams* active = nullptr;
  for (std::size_t c = 0; c < cycle_starts.size(); ++c) {
    if (cycle_starts[c] > day_idx) break;
    if (active_cycle_[c] >= 0) {
      const auto& outcome = outcomes[active_cycle_[c]];
      active = &outcome.candidates[outcome.selected].policy;
    }
  }
  return active;
}

Deployment deployment_loop(const Dataset& data, const EngineConfig& cfg,
                           const TrainConfig& train_cfg, const RetrainSchedule& sched,
                           int test_begin, int test_end, const PolicyParams& trading_policy,
                           std::uint64_t seed, std::span<const LearnerKind> kinds, int timesteps,
                           bool validation_costs) {
  Deployment dep;
  for (int start = test_begin; start < test_end; start += sched.cycle) {
    dep.cycle_starts.push_back(start);
  }
  dep.outcomes.reserve(dep.cycle_starts.size());
  dep.active_cycle_.reserve(dep.cycle_starts.size());
  int last_active = -1;
  for (std::size_t c = 0; c < dep.cycle_starts.size(); ++c) {
    dep.outcomes.push_back(run_cycle(data, cfg, train_cfg, sched, dep.cycle_starts[c],
                                     trading_policy, derive_seed(seed, 1000 + c), kinds,
                                     timesteps, validation_costs));
    if (dep.outcomes.back().selected >= 0) last_active = static_cast<int>(c);
    dep.active_cycle_.push_back(last_active);
  }
  return dep;
}

}  // namespace deltahedge
