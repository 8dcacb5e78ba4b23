#include "deltahedge/coordinator.hpp"

#include <algorithm>
#include <filesystem>

#include "deltahedge/csv_io.hpp"
#include "deltahedge/errors.hpp"
#include "deltahedge/rng.hpp"

namespace deltahedge {

namespace {

void write_train_log(const std::string& path, const std::vector<TrainLogRow>& rows) {
  std::vector<std::vector<std::string>> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    out.push_back({std::to_string(r.step), std::to_string(r.episode), fmt_double(r.reward),
                   fmt_double(r.sr)});
  }
  write_csv(path, {"step", "episode", "reward", "SR"}, out);
}

PolicyParams load_required_policy(const RunConfig& cfg, const std::string& name,
                                  int expected_dim) {
  if (cfg.policy_dir.empty()) {
    throw ConfigError("run.policy_dir is required for strategy " +
                      strategy_name(cfg.strategy));
  }
  PolicyParams p = load_policy(cfg.policy_dir + "/" + name);
  if (p.net.input_dim() != expected_dim) {
    throw ConfigError(name + " checkpoint expects observation dim " +
                      std::to_string(p.net.input_dim()) + ", run configuration builds " +
                      std::to_string(expected_dim));
  }
  return p;
}

std::vector<SelectionRow> selections_from(const Deployment& dep) {
  std::vector<SelectionRow> rows;
  for (const auto& outcome : dep.outcomes) {
    for (std::size_t i = 0; i < outcome.candidates.size(); ++i) {
      rows.push_back({outcome.cycle_start, learner_kind_name(outcome.candidates[i].kind),
                      outcome.candidates[i].metric,
                      static_cast<int>(i) == outcome.selected});
    }
  }
  return rows;
}

}  // namespace

std::pair<int, int> resolve_range(const Dataset& data, const std::optional<Date>& start,
                                  const std::optional<Date>& end) {
  const int n = static_cast<int>(data.slices.size());
  int first = 0;
  while (first < n && start && data.slices[first].date < *start) ++first;
  int last = n;
  while (last > first && end && data.slices[last - 1].date > *end) --last;
  if (first >= last) throw DataError("date range contains no trading days in the dataset");
  return {first, last};
}

BacktestReport run_backtest(const RunConfig& cfg, const Dataset& data) {
  const auto [begin, end] = resolve_range(data, cfg.test_start, cfg.test_end);
  const StrategyKind kind = cfg.strategy.kind;

  const bool uses_rl_trading = kind == StrategyKind::kStandaloneRl ||
                               kind == StrategyKind::kClassicDelta ||
                               kind == StrategyKind::kNoHedge ||
                               kind == StrategyKind::kSingleHedger ||
                               kind == StrategyKind::kDeltaHedge;
  const bool standalone = kind == StrategyKind::kStandaloneRl;
  const bool ensemble_driven =
      kind == StrategyKind::kSingleHedger || kind == StrategyKind::kDeltaHedge;
  const bool hedging_possible = ensemble_driven || kind == StrategyKind::kClassicDelta;

  // no_hedge keeps the full observation (option features stay populated,
  // context stays wired) but never buys protection.
  EngineConfig engine_cfg = cfg.engine(!standalone && kind != StrategyKind::kBuyAndHold &&
                                           kind != StrategyKind::kKdjRsi,
                                       hedging_possible || kind == StrategyKind::kNoHedge);

  BacktestReport report;
  report.strategy = strategy_name(cfg.strategy);
  report.seed = cfg.seed;
  report.config_echo = cfg.echo();

  std::optional<PolicyParams> trading;
  if (uses_rl_trading) {
    trading = load_required_policy(cfg, standalone ? "standalone" : "trading",
                                   engine_cfg.layout.dim());
  }

  Deployment deployment;
  if (ensemble_driven) {
    std::vector<LearnerKind> kinds;
    if (kind == StrategyKind::kSingleHedger) {
      kinds = {cfg.strategy.single_hedger_kind};
    } else {
      kinds.assign(std::begin(kLearnerOrder), std::end(kLearnerOrder));
    }
    deployment =
        deployment_loop(data, engine_cfg, cfg.train, cfg.schedule, begin, end, *trading,
                        derive_seed(cfg.seed, 0xdeb70ull), kinds, cfg.timesteps,
                        cfg.validation_costs);
    report.selections = selections_from(deployment);
    for (const auto& outcome : deployment.outcomes) {
      if (!outcome.event.empty()) report.events.push_back(outcome.event);
    }
  }

  // Indicator baselines read precomputed series over the full history, so
  // the warm-up can extend before the test range.
  std::vector<std::optional<KdjPoint>> kdj;
  std::vector<std::optional<double>> rsi;
  if (kind == StrategyKind::kKdjRsi) {
    kdj = kdj_series(data.bars);
    rsi = rsi_series(data.bars);
  }

  DayLoop loop(data, engine_cfg, begin, end);
  bool warned_no_hedger = false;
  while (!loop.done()) {
    const int day = loop.day_index();
    loop.begin_day();

    double a = 0.0;
    std::vector<double> trade_msg;
    switch (kind) {
      case StrategyKind::kBuyAndHold:
        a = buy_and_hold_rule(day == begin);
        break;
      case StrategyKind::kKdjRsi:
        a = kdj_rsi_rule(kdj, rsi, static_cast<std::size_t>(day));
        break;
      default: {
        auto decision = trading_policy_act(loop.trading_observation(*trading), *trading);
        a = decision.action;
        trade_msg = std::move(decision.message);
        break;
      }
    }
    loop.apply_trading(a, std::move(trade_msg));

    double alpha = 0.0;
    std::vector<double> hedge_msg;
    if (kind == StrategyKind::kClassicDelta) {
      alpha = classic_delta_rule(loop.regime());
    } else if (ensemble_driven) {
      if (const PolicyParams* hedger = deployment.active_for(day)) {
        auto decision = hedging_policy_act(loop.hedging_observation(*hedger), *hedger);
        alpha = decision.action;
        hedge_msg = std::move(decision.message);
      } else if (!warned_no_hedger) {
        report.events.push_back(loop.slice().date.to_string() +
                                ": no active hedging policy yet, alpha=0");
        warned_no_hedger = true;
      }
    }
    loop.apply_hedging(alpha, std::move(hedge_msg));
    loop.finish_day();
  }

  for (const auto& rec : loop.records()) {
    report.dates.push_back(rec.date);
    report.equity.push_back(rec.value);
  }
  for (std::size_t t = 1; t < report.equity.size(); ++t) {
    report.returns.push_back(report.equity[t] / report.equity[t - 1] - 1.0);
  }
  report.trades = loop.trades();
  for (const auto& e : loop.events()) report.events.push_back(e);

  if (report.equity.size() >= 2) {
    report.has_metrics = true;
    report.metrics = compute_metrics(report.equity, cfg.rf_daily(), cfg.annualization);
    for (const auto& window : regime_presets()) {
      if (auto table = regime_slice(report.dates, report.equity, window, cfg.rf_daily())) {
        report.regime_tables.emplace_back(window.label, *table);
      }
    }
  }
  return report;
}

std::vector<std::string> run_train(const RunConfig& cfg, const Dataset& data,
                                   const std::string& out_dir) {
  const auto [t0, t1] = resolve_range(data, cfg.train_start, cfg.train_end);
  if (t1 - t0 < 2) throw DataError("training range too short");
  std::filesystem::create_directories(out_dir);

  const EngineConfig full_cfg = cfg.engine(true, true);
  const std::string start = data.slices[t0].date.to_string();
  const std::string stop = data.slices[t1 - 1].date.to_string();

  // Joint alternating training: each agent treats the other's current
  // policy as part of the environment.
  PolicyParams trading;
  PolicyParams partner;
  WindowEnv trading_env(data, full_cfg, t0, t1, AgentRole::kTrading, &partner);
  WindowEnv partner_env(data, full_cfg, t0, t1, AgentRole::kHedging, &trading);

  trading = init_policy(LearnerKind::kClippedPG, ActionSquash::kTanh, trading_env.obs_dim(),
                        cfg.train.hidden, trading_env.d_msg(), trading_env.query_dim(),
                        derive_seed(cfg.seed, 11));
  trading.normalizer = trading_env.normalizer();
  partner = init_policy(LearnerKind::kClippedPG, ActionSquash::kSigmoid, partner_env.obs_dim(),
                        cfg.train.hidden, partner_env.d_msg(), partner_env.query_dim(),
                        derive_seed(cfg.seed, 12));
  partner.normalizer = partner_env.normalizer();

  std::vector<TrainLogRow> trading_log;
  int done_trading = 0, done_partner = 0, phase = 0;
  const int phase_len = std::max(1, cfg.phase_steps);
  while (done_trading < cfg.timesteps || done_partner < cfg.timesteps) {
    if (done_trading < cfg.timesteps) {
      const int n = std::min(phase_len, cfg.timesteps - done_trading);
      continue_training(trading_env, trading, n, derive_seed(cfg.seed, 20 + phase),
                        cfg.train, &trading_log);
      done_trading += n;
    }
    if (done_partner < cfg.timesteps) {
      const int n = std::min(phase_len, cfg.timesteps - done_partner);
      continue_training(partner_env, partner, n, derive_seed(cfg.seed, 50 + phase), cfg.train);
      done_partner += n;
    }
    ++phase;
  }
  trading.train_start = start;
  trading.train_end = stop;

  std::vector<std::string> written;
  save_policy(trading, out_dir + "/trading");
  write_train_log(out_dir + "/train_log_trading.csv", trading_log);
  written.push_back("trading");

  // The three hedging candidates train fresh against the frozen trader.
  for (std::size_t i = 0; i < std::size(kLearnerOrder); ++i) {
    const LearnerKind kind = kLearnerOrder[i];
    WindowEnv env(data, full_cfg, t0, t1, AgentRole::kHedging, &trading);
    std::vector<TrainLogRow> log;
    PolicyParams candidate = train_learner(env, kind, cfg.timesteps,
                                           derive_seed(cfg.seed, 30 + i), cfg.train, &log);
    candidate.train_start = start;
    candidate.train_end = stop;
    const std::string name = "hedge_" + learner_kind_name(kind);
    save_policy(candidate, out_dir + "/" + name);
    write_train_log(out_dir + "/train_log_" + name + ".csv", log);
    written.push_back(name);
  }

  if (cfg.train_standalone) {
    WindowEnv env(data, cfg.engine(false, false), t0, t1, AgentRole::kTrading, nullptr);
    std::vector<TrainLogRow> log;
    PolicyParams standalone = train_learner(env, LearnerKind::kClippedPG, cfg.timesteps,
                                            derive_seed(cfg.seed, 40), cfg.train, &log);
    standalone.train_start = start;
    standalone.train_end = stop;
    save_policy(standalone, out_dir + "/standalone");
    write_train_log(out_dir + "/train_log_standalone.csv", log);
    written.push_back("standalone");
  }
  return written;
}

}  // namespace deltahedge
