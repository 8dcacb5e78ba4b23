// Acceptance suite: runs every criterion at its stated tolerance and
// prints one pass/fail line each. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "deltahedge/agents.hpp"
#include "deltahedge/bootstrap.hpp"
#include "deltahedge/coordinator.hpp"
#include "deltahedge/ensemble.hpp"
#include "deltahedge/env.hpp"
#include "deltahedge/learners.hpp"
#include "deltahedge/metrics.hpp"
#include "deltahedge/options_pricing.hpp"
#include "deltahedge/portfolio.hpp"
#include "deltahedge/report.hpp"
#include "deltahedge/rng.hpp"
#include "deltahedge/sharpe.hpp"

using namespace deltahedge;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

Dataset make_dataset(std::uint64_t seed, int days, double mu = 0.07, double sigma = 0.2,
                     std::vector<SynthRegime> regimes = {}) {
  SynthParams params;
  params.seed = seed;
  params.n_days = days;
  params.mu = mu;
  params.sigma = sigma;
  params.regimes = std::move(regimes);
  const SynthDataset raw = synth_generate(params);
  Dataset data;
  data.bars = raw.bars;
  data.slices = align_calendar(raw.bars, raw.chain, raw.sentiment, raw.vix);
  return data;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// 1. Pricing oracle equivalence
// ---------------------------------------------------------------------------
Check criterion_pricing() {
  Check c;
  const double moneyness[] = {0.8, 0.9, 1.0, 1.1, 1.25};
  const double tenors[] = {0.1, 0.5};
  const double vols[] = {0.15, 0.45};
  int points = 0;
  for (double m : moneyness) {
    for (double t : tenors) {
      for (double sigma : vols) {
        const PricingInputs in{100.0, 100.0 * m, t, 0.02, sigma};
        const double gap = std::abs(bs_put_price(in) - crr_binomial_put(in, 2000));
        c.expect(gap < 1e-3, "bs vs crr gap " + std::to_string(gap));
        ++points;
      }
    }
  }
  c.expect(points == 20, "grid size");

  Rng rng(301);
  for (int i = 0; i < 300; ++i) {
    PricingInputs in;
    in.spot = rng.uniform(20.0, 400.0);
    in.strike = in.spot * rng.uniform(0.6, 1.4);
    in.t = rng.uniform(0.02, 2.0);
    in.rate = rng.uniform(-0.01, 0.08);
    in.sigma = rng.uniform(0.05, 0.9);
    const double parity_gap = std::abs((bs_call_price(in) - bs_put_price(in)) -
                                       (in.spot - in.strike * std::exp(-in.rate * in.t)));
    c.expect(parity_gap < 1e-10, "parity gap " + std::to_string(parity_gap));

    const double h = 1e-4 * in.spot;
    PricingInputs up = in, down = in;
    up.spot += h;
    down.spot -= h;
    const double fd = (bs_put_price(up) - bs_put_price(down)) / (2.0 * h);
    c.expect(std::abs(bs_put_delta(in) - fd) < 1e-5, "delta FD gap");
  }
  return c;
}

// ---------------------------------------------------------------------------
// 2. Accounting conservation on fuzzed sequences
// ---------------------------------------------------------------------------
Check criterion_conservation() {
  Check c;
  const Dataset data = make_dataset(900, 260);
  Rng rng(901);
  const MarkParams mark{0.02};
  const CostModel costs;

  for (int run = 0; run < 1000 && c.ok; ++run) {
    const int start = 10 + static_cast<int>(rng.uniform_index(200));
    const int len = 10 + static_cast<int>(rng.uniform_index(30));
    PortfolioState state;
    state.cash = 20000.0 + rng.uniform(0.0, 80000.0);
    state.date = data.slices[start - 1].date;
    double prev_value = state.cash;

    for (int d = start; d < std::min<int>(start + len, data.slices.size()); ++d) {
      const MarketSlice& slice = data.slices[d];
      state.date = slice.date;

      const double carry_value = portfolio_value(state, slice, mark);
      const double carry_pnl = carry_value - prev_value;

      state = settle_expiries(state, slice).first;

      double paid_costs = 0.0;
      double spread_loss = 0.0;
      auto [s1, t1] = apply_equity_trade(state, rng.uniform(-1.0, 1.0), slice.bar.close, costs);
      state = std::move(s1);
      paid_costs += t1.cost;

      const TargetPutView put = [&] {
        TargetPutView p = select_target_put(slice, mark);
        if (p.present) p.spec.multiplier = 100;
        return p;
      }();
      if (put.present) {
        const auto dn = static_cast<std::int64_t>(rng.uniform_index(9)) - 4;
        auto [s2, t2] = apply_option_trade(state, put.spec, dn, put.quote, costs);
        state = std::move(s2);
        paid_costs += t2.cost;
        if (t2.quantity > 0) {
          spread_loss += static_cast<double>(t2.quantity) * (put.quote.ask - put.quote.bid) *
                         put.spec.multiplier;
        }
      }

      c.expect(state.cash >= 0.0, "negative cash");
      c.expect(state.shares >= 0, "negative shares");
      for (const auto& pos : state.positions) c.expect(pos.contracts >= 1, "empty position");

      const double value = portfolio_value(state, slice, mark);
      const double expected = prev_value + carry_pnl - paid_costs - spread_loss;
      const double rel = std::abs(value - expected) / std::max(1.0, std::abs(expected));
      c.expect(rel < 1e-9, "decomposition off by rel " + std::to_string(rel));
      prev_value = value;
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// 3. Settlement exactness
// ---------------------------------------------------------------------------
Check criterion_settlement() {
  Check c;
  MarketSlice slice;
  slice.date = Date(2022, 6, 17);
  slice.bar.date = slice.date;
  slice.bar.open = slice.bar.high = slice.bar.low = slice.bar.close = 390.0;
  slice.sentiment = 50.0;
  slice.vix = 20.0;

  PortfolioState state;
  state.date = slice.date;
  state.cash = 123.25;
  state.positions.push_back({PutSpec{400.0, slice.date, 100}, 2, 9.0});
  const auto [itm, credited] = settle_expiries(state, slice);
  c.expect(credited == 2.0 * 100.0 * (400.0 - 390.0), "ITM payoff not exact");
  c.expect(itm.cash == 123.25 + 2000.0, "ITM cash not exact");
  c.expect(itm.positions.empty(), "ITM position not removed");

  slice.bar.close = 410.0;
  const auto [otm, nothing] = settle_expiries(state, slice);
  c.expect(nothing == 0.0, "OTM payoff not zero");
  c.expect(otm.cash == state.cash, "OTM cash changed");
  c.expect(otm.positions.empty(), "OTM position not removed");

  state.positions[0].spec.expiry = slice.date.plus_days(5);
  const auto [hold, zero] = settle_expiries(state, slice);
  c.expect(zero == 0.0 && hold.positions.size() == 1, "non-expiring position touched");
  return c;
}

// ---------------------------------------------------------------------------
// 4. Delta neutrality
// ---------------------------------------------------------------------------
Check criterion_neutrality() {
  Check c;
  Rng rng(904);
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t h = static_cast<std::int64_t>(rng.uniform_index(20000));
    const double delta = -rng.uniform(0.02, 0.98);
    const double frac = target_put_fraction(1.0, h, delta);
    c.expect(std::abs(static_cast<double>(h) + frac * delta) <
                 1e-9 * std::max<double>(1.0, static_cast<double>(h)),
             "fractional hedge not exactly neutral");

    const int m = 100;
    const std::int64_t n = target_put_contracts(1.0, h, delta, m);
    const double net = static_cast<double>(h) + static_cast<double>(n) * m * delta;
    c.expect(std::abs(net) <= m * std::abs(delta) / 2.0 + 1e-9,
             "integer hedge outside rounding bound");
  }
  return c;
}

// ---------------------------------------------------------------------------
// 5. Reward contract
// ---------------------------------------------------------------------------
Check criterion_reward() {
  Check c;
  c.expect(reward_step(1.2, 1.5) == 1.5 - 1.2, "reward not the exact difference");

  Rng rng(905);
  for (int rep = 0; rep < 50; ++rep) {
    SharpeTracker tracker(60, 0.0);
    double prev = tracker.sharpe_or_zero();
    const double sr0 = prev;
    double total = 0.0;
    const int n = 20 + static_cast<int>(rng.uniform_index(200));
    for (int i = 0; i < n; ++i) {
      tracker.push(0.01 * rng.normal());
      const double sr = tracker.sharpe_or_zero();
      total += reward_step(prev, sr);
      prev = sr;
    }
    c.expect(std::abs(total - (prev - sr0)) < 1e-12, "episode rewards do not telescope");
  }
  return c;
}

// ---------------------------------------------------------------------------
// 6. Ensemble correctness
// ---------------------------------------------------------------------------
Check criterion_ensemble() {
  Check c;
  const Dataset data = make_dataset(906, 300);
  EngineConfig cfg;
  cfg.layout.d_msg = 4;
  TrainConfig tc;
  tc.hidden = {8, 8};
  tc.ppo_horizon = 32;
  tc.ppo_epochs = 2;
  tc.batch = 16;
  tc.learning_starts = 16;

  WindowEnv tenv(data, cfg, 100, 240, AgentRole::kTrading, nullptr);
  const PolicyParams trading = train_learner(tenv, LearnerKind::kClippedPG, 64, 5, tc);

  const RetrainSchedule sched{63, 90, 30};
  const auto outcome =
      run_cycle(data, cfg, tc, sched, 240, trading, 77, kLearnerOrder, 64, true);
  c.expect(outcome.candidates.size() == 3, "expected three candidates");

  // Independent recomputation of every metric and the argmax.
  int best = -1;
  double best_m = -1e300;
  for (std::size_t i = 0; i < outcome.candidates.size(); ++i) {
    const auto& r = outcome.candidates[i].validation_returns;
    c.expect(r.size() == 30, "validation window length");
    double mean = 0.0;
    for (double x : r) mean += x;
    mean /= static_cast<double>(r.size());
    double ss = 0.0;
    for (double x : r) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / static_cast<double>(r.size() - 1));
    if (sd >= 1e-12) {
      const double m = mean / sd;
      c.expect(outcome.candidates[i].metric.has_value() &&
                   *outcome.candidates[i].metric == m,
               "metric differs from independent recomputation");
      if (m > best_m) {
        best_m = m;
        best = static_cast<int>(i);
      }
    }
  }
  c.expect(outcome.selected == best, "selection is not the independent argmax");

  // Scale invariance of the selection.
  std::vector<CandidateResult> scaled = outcome.candidates;
  for (auto& cand : scaled) {
    for (auto& x : cand.validation_returns) x *= 1000.0;
    cand.metric = validation_metric(cand.validation_returns);
  }
  c.expect(select_active(scaled) == outcome.selected, "selection not scale-invariant");

  // No-leakage mutation test: post-boundary data cannot change the cycle.
  Dataset mutated = data;
  for (std::size_t i = 240; i < mutated.bars.size(); ++i) {
    mutated.bars[i].close *= 4.0;
    mutated.bars[i].open *= 4.0;
    mutated.bars[i].high *= 4.0;
    mutated.bars[i].low *= 4.0;
    mutated.slices[i].bar = mutated.bars[i];
    mutated.slices[i].vix = 90.0;
  }
  const auto mutated_outcome =
      run_cycle(mutated, cfg, tc, sched, 240, trading, 77, kLearnerOrder, 64, true);
  c.expect(mutated_outcome.selected == outcome.selected, "future data changed the selection");
  for (std::size_t i = 0; i < 3; ++i) {
    c.expect(mutated_outcome.candidates[i].policy.flat == outcome.candidates[i].policy.flat,
             "future data changed trained parameters");
  }
  return c;
}

// ---------------------------------------------------------------------------
// 7. Gradient checks for every learner loss
// ---------------------------------------------------------------------------
Check criterion_gradients() {
  Check c;
  auto fd_check = [&](std::span<const double> params,
                      const std::function<double(std::span<const double>)>& loss,
                      std::span<const double> analytic, const std::string& name) {
    std::vector<double> p(params.begin(), params.end());
    for (std::size_t i = 0; i < p.size() && c.ok; ++i) {
      const double orig = p[i];
      const double h = 3e-5 * (1.0 + std::abs(orig));
      p[i] = orig + h;
      const double up = loss(p);
      p[i] = orig - h;
      const double down = loss(p);
      p[i] = orig;
      const double fd = (up - down) / (2.0 * h);
      const double rel = std::abs(analytic[i] - fd) / (std::abs(fd) + 1e-8);
      c.expect(rel < 1e-4, name + " grad mismatch rel " + std::to_string(rel));
    }
  };

  NetSpec net{{6, 8, 8, 2}};
  Rng rng(907);
  for (int draw = 0; draw < 100 && c.ok; ++draw) {
    auto params = init_net_params(net, rng.next_u64());
    std::vector<double> input(6), upstream(2);
    for (auto& x : input) x = rng.normal();
    for (auto& u : upstream) u = rng.normal();
    NetCache cache;
    net_forward_cached(net, params, input, cache);
    std::vector<double> analytic(params.size(), 0.0);
    net_backward(net, params, cache, upstream, analytic);
    fd_check(params,
             [&](std::span<const double> p) {
               const auto out = net_forward(net, p, input);
               return out[0] * upstream[0] + out[1] * upstream[1];
             },
             analytic, "approximator");
  }

  NetSpec policy_net{{6, 8, 8, 1}};
  NetSpec qnet{{7, 8, 8, 1}};
  for (int draw = 0; draw < 100 && c.ok; ++draw) {
    std::vector<double> actor = init_net_params(policy_net, rng.next_u64());
    for (auto& w : actor) w += 0.1 * rng.normal();
    actor.push_back(0.1 * rng.normal());

    GaussianBatch batch;
    const double log_std = actor.back();
    for (int i = 0; i < 8; ++i) {
      std::vector<double> obs(6);
      for (auto& x : obs) x = 0.7 * rng.normal();
      const double mu =
          net_forward(policy_net, std::span(actor).subspan(0, policy_net.param_count()), obs)[0];
      const double u = mu + std::exp(log_std) * rng.normal();
      const double z = (u - mu) / std::exp(log_std);
      batch.obs.push_back(std::move(obs));
      batch.actions_raw.push_back(u);
      batch.advantages.push_back(rng.normal());
      batch.old_logp.push_back(-0.5 * z * z - log_std - 0.5 * 1.8378770664093453 +
                               0.04 * rng.uniform(-1.0, 1.0));
    }

    fd_check(actor,
             [&](std::span<const double> p) { return ppo_policy_loss(policy_net, p, batch, 0.2); },
             ppo_policy_grad(policy_net, actor, batch, 0.2), "clipped_pg");
    fd_check(actor,
             [&](std::span<const double> p) { return a2c_policy_loss(policy_net, p, batch); },
             a2c_policy_grad(policy_net, actor, batch), "advantage_ac");

    std::vector<double> targets;
    std::vector<double> actions;
    for (int i = 0; i < 8; ++i) {
      targets.push_back(rng.normal());
      actions.push_back(rng.uniform(-1.0, 1.0));
    }
    auto critic = init_net_params(policy_net, rng.next_u64());
    fd_check(critic,
             [&](std::span<const double> p) {
               return value_loss(policy_net, p, batch.obs, targets);
             },
             value_grad(policy_net, critic, batch.obs, targets), "value");

    auto q = init_net_params(qnet, rng.next_u64());
    for (auto& w : q) w += 0.1 * rng.normal();
    fd_check(q,
             [&](std::span<const double> p) {
               return ddpg_critic_loss(qnet, p, batch.obs, actions, targets);
             },
             ddpg_critic_grad(qnet, q, batch.obs, actions, targets), "deterministic_ac critic");

    auto dactor = init_net_params(policy_net, rng.next_u64());
    fd_check(dactor,
             [&](std::span<const double> p) {
               return ddpg_actor_loss(policy_net, p, qnet, q, batch.obs, ActionSquash::kTanh);
             },
             ddpg_actor_grad(policy_net, dactor, qnet, q, batch.obs, ActionSquash::kTanh),
             "deterministic_ac actor");
  }
  return c;
}

// ---------------------------------------------------------------------------
// 8. Learning smoke test on a trending market
// ---------------------------------------------------------------------------
Check criterion_learning() {
  Check c;
  const Dataset data = make_dataset(908, 320, 0.8, 0.08);
  EngineConfig cfg;
  cfg.layout.include_options = false;
  cfg.allow_hedging = false;
  cfg.exchange_messages = false;
  cfg.costs = CostModel{0.0, 0.0, 0.0};

  TrainConfig tc;
  tc.hidden = {16, 16};

  WindowEnv env(data, cfg, 60, 310, AgentRole::kTrading, nullptr);
  const PolicyParams policy = train_learner(env, LearnerKind::kClippedPG, 20000, 31, tc);

  // Random baseline, measured empirically: uniform actions in [-1, 1].
  WindowEnv eval_env(data, cfg, 60, 310, AgentRole::kTrading, nullptr);
  PolicyParams probe = policy;  // observation plumbing only
  eval_env.attach_policy(&probe);
  Rng action_rng(909);
  std::vector<double> random_rewards;
  for (int ep = 0; ep < 20; ++ep) {
    eval_env.reset();
    double total = 0.0;
    bool done = false;
    while (!done) {
      const auto step = eval_env.step(action_rng.uniform(-1.0, 1.0));
      total += step.reward;
      done = step.done;
    }
    random_rewards.push_back(total);
  }
  double rnd_mean = 0.0;
  for (double r : random_rewards) rnd_mean += r;
  rnd_mean /= static_cast<double>(random_rewards.size());
  double rnd_ss = 0.0;
  for (double r : random_rewards) rnd_ss += (r - rnd_mean) * (r - rnd_mean);
  const double rnd_std = std::sqrt(rnd_ss / static_cast<double>(random_rewards.size() - 1));

  double trained_mean = 0.0;
  for (int ep = 0; ep < 20; ++ep) {
    auto obs = eval_env.reset();
    double total = 0.0;
    bool done = false;
    while (!done) {
      const double a = trading_policy_act(obs, policy).action;
      const auto step = eval_env.step(a);
      total += step.reward;
      obs = step.obs;
      done = step.done;
    }
    trained_mean += total;
  }
  trained_mean /= 20.0;

  c.detail = "trained " + std::to_string(trained_mean) + " vs random " +
             std::to_string(rnd_mean) + " +/- " + std::to_string(rnd_std);
  c.expect(trained_mean >= rnd_mean + rnd_std,
           "trained " + std::to_string(trained_mean) + " below random " +
               std::to_string(rnd_mean) + " + " + std::to_string(rnd_std));
  return c;
}

// ---------------------------------------------------------------------------
// 9. Metrics oracle
// ---------------------------------------------------------------------------
Check criterion_metrics() {
  Check c;
  {
    const double curve[] = {100.0, 120.0, 90.0, 110.0};
    double worst = 0.0;
    for (int t = 0; t < 4; ++t) {
      for (int p = 0; p <= t; ++p) {
        worst = std::max(worst, (curve[p] - curve[t]) / curve[p]);
      }
    }
    const MetricTable m = compute_metrics(curve);
    c.expect(worst == 0.25, "exhaustive oracle disagrees with 0.25");
    c.expect(m.max_drawdown == 0.25, "MDD of the canonical curve");
  }

  Rng rng(909);
  for (int rep = 0; rep < 1000 && c.ok; ++rep) {
    const int n = 2 + static_cast<int>(rng.uniform_index(150));
    std::vector<double> curve(n);
    double v = 80.0 + 40.0 * rng.uniform01();
    for (int i = 0; i < n; ++i) {
      curve[i] = v;
      v *= std::exp(0.02 * rng.normal());
    }
    const MetricTable m = compute_metrics(curve);

    // Brute-force recomputation.
    std::vector<double> r;
    for (int i = 1; i < n; ++i) r.push_back(curve[i] / curve[i - 1] - 1.0);
    double mean = 0.0;
    for (double x : r) mean += x;
    mean /= static_cast<double>(r.size());
    double ss = 0.0;
    for (double x : r) ss += (x - mean) * (x - mean);
    const double sd = r.size() > 1 ? std::sqrt(ss / static_cast<double>(r.size() - 1)) : 0.0;
    double dd_ss = 0.0;
    for (double x : r) dd_ss += std::min(x, 0.0) * std::min(x, 0.0);
    const double dd = std::sqrt(dd_ss / static_cast<double>(r.size()));
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
      for (int p = 0; p <= t; ++p) worst = std::max(worst, (curve[p] - curve[t]) / curve[p]);
    }
    const double tr = curve.back() / curve.front() - 1.0;
    const double ann = std::pow(1.0 + tr, 252.0 / static_cast<double>(n - 1)) - 1.0;

    auto close = [](double a, double b) {
      if (std::isinf(a) || std::isinf(b)) return std::isinf(a) && std::isinf(b);
      return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
    };
    c.expect(close(m.total_return, tr), "TR oracle");
    c.expect(close(m.annualized_return, ann), "annualized return oracle");
    c.expect(close(m.volatility, sd * std::sqrt(252.0)), "Vol oracle");
    c.expect(close(m.sharpe, sd < 1e-12 ? 0.0 : mean / sd * std::sqrt(252.0)), "SR oracle");
    c.expect(close(m.sortino, dd < 1e-12 ? std::numeric_limits<double>::infinity()
                                         : mean / dd * std::sqrt(252.0)),
             "SoR oracle");
    c.expect(close(m.max_drawdown, worst), "MDD oracle");
    c.expect(close(m.calmar, worst < 1e-15 ? std::numeric_limits<double>::infinity()
                                           : ann / worst),
             "CR oracle");
  }
  return c;
}

// ---------------------------------------------------------------------------
// 10. Bootstrap behavior
// ---------------------------------------------------------------------------
Check criterion_bootstrap() {
  Check c;
  Rng rng(910);
  std::vector<double> base(500);
  for (auto& x : base) x = 0.01 * rng.normal();

  for (auto stat : {BootstrapStat::kMeanExcess, BootstrapStat::kSharpeDiff}) {
    const auto same =
        bootstrap_test(base, base, stat, 10000, default_block_length(base.size()), 11);
    c.expect(same.p_value >= 0.9, "identical series gave p < 0.9");
  }

  double mean = 0.0;
  for (double x : base) mean += x;
  mean /= static_cast<double>(base.size());
  double ss = 0.0;
  for (double x : base) ss += (x - mean) * (x - mean);
  const double sd_mean =
      std::sqrt(ss / static_cast<double>(base.size() - 1)) / std::sqrt(double(base.size()));
  std::vector<double> shifted = base;
  for (double& x : shifted) x += 5.0 * sd_mean;
  const auto strong = bootstrap_test(shifted, base, BootstrapStat::kMeanExcess, 10000,
                                     default_block_length(base.size()), 11);
  c.expect(strong.p_value < 0.05, "shifted series gave p >= 0.05");
  return c;
}

// ---------------------------------------------------------------------------
// 11. End-to-end determinism across all strategies
// ---------------------------------------------------------------------------
Check criterion_determinism() {
  Check c;
  const Dataset data = make_dataset(911, 300);
  const std::filesystem::path root =
      std::filesystem::temp_directory_path() / "deltahedge_acceptance_det";
  std::filesystem::remove_all(root);
  std::filesystem::create_directories(root);

  RunConfig cfg;
  cfg.timesteps = 64;
  cfg.train.hidden = {8, 8};
  cfg.train.ppo_horizon = 32;
  cfg.train.ppo_epochs = 2;
  cfg.train.batch = 16;
  cfg.train.learning_starts = 16;
  cfg.phase_steps = 32;
  cfg.d_msg = 4;
  cfg.schedule = {21, 30, 10};
  cfg.train_standalone = true;
  cfg.train_start = data.slices[60].date;
  cfg.train_end = data.slices[199].date;
  cfg.seed = 17;
  run_train(cfg, data, (root / "policies").string());
  cfg.policy_dir = (root / "policies").string();
  cfg.test_start = data.slices[200].date;

  const char* strategies[] = {"buy_and_hold",  "kdj_rsi",
                              "standalone_rl", "classic_delta",
                              "no_hedge",      "single_hedger:deterministic_ac",
                              "deltahedge"};
  for (const char* name : strategies) {
    cfg.strategy = parse_strategy(name);
    const BacktestReport r1 = run_backtest(cfg, data);
    const BacktestReport r2 = run_backtest(cfg, data);
    const auto d1 = root / ("a_" + std::string(name));
    const auto d2 = root / ("b_" + std::string(name));
    write_report(r1, d1.string(), true);
    write_report(r2, d2.string(), true);
    for (const char* f :
         {"report.json", "equity.csv", "trades.csv", "selections.csv", "equity.svg"}) {
      c.expect(slurp((d1 / f).string()) == slurp((d2 / f).string()),
               std::string(name) + ": " + f + " differs between identical runs");
    }
  }
  std::filesystem::remove_all(root);
  return c;
}

// ---------------------------------------------------------------------------
// 12. Qualitative shape check: hedged drawdown under a crash
// ---------------------------------------------------------------------------
Check criterion_shape(std::string& summary) {
  Check c;
  // Five trading years with an embedded crash regime in the test period.
  std::vector<SynthRegime> regimes;
  regimes.push_back({600, -1.8, 0.5});
  regimes.push_back({720, 0.10, 0.18});
  const Dataset data = make_dataset(912, 1260, 0.10, 0.18, regimes);

  const std::filesystem::path root =
      std::filesystem::temp_directory_path() / "deltahedge_acceptance_shape";
  std::filesystem::remove_all(root);
  std::filesystem::create_directories(root);

  RunConfig cfg;
  cfg.timesteps = 6000;
  cfg.train.hidden = {16, 16};
  cfg.phase_steps = 1500;
  cfg.seed = 29;
  cfg.train_start = data.slices[0].date;
  cfg.train_end = data.slices[251].date;
  run_train(cfg, data, (root / "policies").string());
  cfg.policy_dir = (root / "policies").string();
  cfg.test_start = data.slices[252].date;

  cfg.strategy = parse_strategy("deltahedge");
  const BacktestReport hedged = run_backtest(cfg, data);
  cfg.strategy = parse_strategy("buy_and_hold");
  const BacktestReport passive = run_backtest(cfg, data);

  char buf[160];
  std::snprintf(buf, sizeof(buf), "deltahedge MDD %.2f%% vs buy_and_hold MDD %.2f%%",
                hedged.metrics.max_drawdown * 100.0, passive.metrics.max_drawdown * 100.0);
  summary = buf;
  c.expect(hedged.has_metrics && passive.has_metrics, "missing metrics");
  c.expect(hedged.metrics.max_drawdown < passive.metrics.max_drawdown,
           "hedged MDD is not below buy-and-hold");
  std::filesystem::remove_all(root);
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Check(std::string&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"pricing oracle equivalence", [](std::string&) { return criterion_pricing(); }},
      {"accounting conservation", [](std::string&) { return criterion_conservation(); }},
      {"settlement exactness", [](std::string&) { return criterion_settlement(); }},
      {"delta neutrality", [](std::string&) { return criterion_neutrality(); }},
      {"reward contract", [](std::string&) { return criterion_reward(); }},
      {"ensemble correctness", [](std::string&) { return criterion_ensemble(); }},
      {"gradient checks", [](std::string&) { return criterion_gradients(); }},
      {"learning smoke test", [](std::string&) { return criterion_learning(); }},
      {"metrics oracle", [](std::string&) { return criterion_metrics(); }},
      {"bootstrap behavior", [](std::string&) { return criterion_bootstrap(); }},
      {"end-to-end determinism", [](std::string&) { return criterion_determinism(); }},
      {"drawdown shape under a crash", [](std::string& s) { return criterion_shape(s); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string summary;
    Check result;
    try {
      result = criteria[i].run(summary);
    } catch (const std::exception& e) {
      result.ok = false;
      result.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string tail;
    if (!summary.empty()) tail += "  " + summary;
    if (!result.ok && !result.detail.empty()) tail += "  " + result.detail;
    std::printf("[%2zu/12] %s  %-32s (%.1fs)%s\n", i + 1, result.ok ? "PASS" : "FAIL",
                criteria[i].name, secs, tail.c_str());
    if (!result.ok) ++failures;
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all 12 criteria passed\n");
  return 0;
}
