#include "deltahedge/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "deltahedge/csv_io.hpp"
#include "deltahedge/errors.hpp"

namespace deltahedge {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

/// section.key -> value map with consumption tracking, so leftovers can be
/// rejected as unknown keys.
class ConfigMap {
 public:
  explicit ConfigMap(const std::string& path) : path_(path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      line = trim(line);
      if (line.empty() || line[0] == '#' || line[0] == ';') continue;
      if (line.front() == '[') {
        if (line.back() != ']') {
          throw ConfigError(where(line_no) + "malformed section header");
        }
        section = trim(line.substr(1, line.size() - 2));
        if (section.empty()) throw ConfigError(where(line_no) + "empty section name");
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw ConfigError(where(line_no) + "expected key = value");
      }
      const std::string key = trim(line.substr(0, eq));
      if (key.empty()) throw ConfigError(where(line_no) + "empty key");
      if (section.empty()) throw ConfigError(where(line_no) + "key outside any [section]");
      const std::string full = section + "." + key;
      if (values_.count(full)) throw ConfigError(where(line_no) + "duplicate key " + full);
      values_[full] = trim(line.substr(eq + 1));
    }
  }

  std::optional<std::string> take(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    consumed_.insert(key);
    return it->second;
  }

  std::string get_string(const std::string& key, const std::string& def) {
    return take(key).value_or(def);
  }

  double get_double(const std::string& key, double def) {
    const auto v = take(key);
    if (!v) return def;
    char* end = nullptr;
    const double x = std::strtod(v->c_str(), &end);
    if (v->empty() || end != v->c_str() + v->size()) {
      throw ConfigError(path_ + ": " + key + ": expected a number, got '" + *v + "'");
    }
    return x;
  }

  std::int64_t get_int(const std::string& key, std::int64_t def) {
    const double x = get_double(key, static_cast<double>(def));
    const auto i = static_cast<std::int64_t>(x);
    if (static_cast<double>(i) != x) {
      throw ConfigError(path_ + ": " + key + ": expected an integer");
    }
    return i;
  }

  bool get_bool(const std::string& key, bool def) {
    const auto v = take(key);
    if (!v) return def;
    if (*v == "true" || *v == "1") return true;
    if (*v == "false" || *v == "0") return false;
    throw ConfigError(path_ + ": " + key + ": expected true/false");
  }

  std::optional<Date> get_date(const std::string& key) {
    const auto v = take(key);
    if (!v || v->empty()) return std::nullopt;
    try {
      return Date::parse(*v);
    } catch (const std::exception& e) {
      throw ConfigError(path_ + ": " + key + ": " + e.what());
    }
  }

  std::vector<int> get_int_list(const std::string& key, std::vector<int> def) {
    const auto v = take(key);
    if (!v) return def;
    std::vector<int> out;
    std::stringstream ss(*v);
    std::string part;
    while (std::getline(ss, part, ',')) {
      part = trim(part);
      if (part.empty()) continue;
      out.push_back(static_cast<int>(std::strtol(part.c_str(), nullptr, 10)));
      if (out.back() <= 0) throw ConfigError(path_ + ": " + key + ": sizes must be positive");
    }
    if (out.empty()) throw ConfigError(path_ + ": " + key + ": empty list");
    return out;
  }

  void reject_unconsumed() const {
    for (const auto& [key, value] : values_) {
      if (!consumed_.count(key)) {
        throw ConfigError(path_ + ": unknown key '" + key + "'");
      }
    }
  }

 private:
  std::string where(int line) const { return path_ + ":" + std::to_string(line) + ": "; }

  std::string path_;
  std::map<std::string, std::string> values_;
  std::set<std::string> consumed_;
};

}  // namespace

RunConfig parse_config_file(const std::string& path) {
  ConfigMap map(path);
  RunConfig cfg;

  cfg.bars_path = map.get_string("data.bars", "");
  cfg.options_path = map.get_string("data.options", "");
  cfg.sentiment_path = map.get_string("data.sentiment", "");
  cfg.vix_path = map.get_string("data.vix", "");
  cfg.require_sentiment = map.get_bool("data.require_sentiment", false);
  cfg.require_vix = map.get_bool("data.require_vix", false);
  cfg.multiplier = static_cast<int>(map.get_int("data.multiplier", 100));

  cfg.costs.equity_rate = map.get_double("costs.equity_rate", 0.002);
  cfg.costs.option_fixed_per_contract = map.get_double("costs.option_fixed", 0.70);
  cfg.costs.option_prop_rate = map.get_double("costs.option_prop", 0.005);

  cfg.signals.w_f = map.get_double("signals.w_f", 0.5);
  cfg.signals.w_s = map.get_double("signals.w_s", 0.5);
  cfg.signals.tanh_scale = map.get_double("signals.tanh_scale", 0.05);
  cfg.signals.use_vix = map.get_bool("signals.use_vix", false);
  cfg.signals.w_v = map.get_double("signals.w_v", 0.5);

  cfg.timesteps = static_cast<int>(map.get_int("rl.timesteps", 20000));
  cfg.train.hidden = map.get_int_list("rl.hidden", {32, 32});
  cfg.train.lr = map.get_double("rl.lr", 3e-4);
  cfg.train.discount = map.get_double("rl.discount", 0.99);
  cfg.train.clip = map.get_double("rl.clip", 0.2);
  cfg.train.gae_lambda = map.get_double("rl.gae_lambda", 0.95);
  cfg.train.ppo_horizon = static_cast<int>(map.get_int("rl.ppo_horizon", 256));
  cfg.train.ppo_epochs = static_cast<int>(map.get_int("rl.ppo_epochs", 10));
  cfg.train.batch = static_cast<int>(map.get_int("rl.batch", 64));
  cfg.train.nstep = static_cast<int>(map.get_int("rl.nstep", 5));
  cfg.train.replay = static_cast<int>(map.get_int("rl.replay", 10000));
  cfg.train.tau = map.get_double("rl.tau", 0.005);
  cfg.train.expl_sigma = map.get_double("rl.expl_sigma", 0.1);
  cfg.train.learning_starts = static_cast<int>(map.get_int("rl.learning_starts", 100));
  cfg.d_msg = static_cast<int>(map.get_int("rl.d_msg", 8));
  cfg.inbox_window = static_cast<int>(map.get_int("rl.inbox_window", 5));
  cfg.sharpe_window = static_cast<int>(map.get_int("rl.sharpe_window", 60));
  cfg.rf_annual = map.get_double("rl.rf_annual", 0.0);
  cfg.phase_steps = static_cast<int>(map.get_int("rl.phase_steps", 2500));
  cfg.train_standalone = map.get_bool("rl.train_standalone", false);

  cfg.schedule.cycle = static_cast<int>(map.get_int("ensemble.cycle", 63));
  cfg.schedule.lookback = static_cast<int>(map.get_int("ensemble.lookback", 90));
  cfg.schedule.validation = static_cast<int>(map.get_int("ensemble.validation", 30));
  cfg.validation_costs = map.get_bool("ensemble.validation_costs", true);

  cfg.strategy = parse_strategy(map.get_string("run.strategy", "deltahedge"));
  cfg.seed = static_cast<std::uint64_t>(map.get_int("run.seed", 7));
  cfg.initial_cash = map.get_double("run.initial_cash", 100000.0);
  cfg.rate = map.get_double("run.rate", 0.02);
  cfg.train_start = map.get_date("run.train_start");
  cfg.train_end = map.get_date("run.train_end");
  cfg.test_start = map.get_date("run.start");
  cfg.test_end = map.get_date("run.end");
  cfg.policy_dir = map.get_string("run.policy_dir", "");
  cfg.out_dir = map.get_string("run.out", "out");
  cfg.svg = map.get_bool("run.svg", false);
  cfg.annualization = static_cast<int>(map.get_int("run.annualization", 252));

  map.reject_unconsumed();

  if (cfg.initial_cash <= 0) throw ConfigError("run.initial_cash must be positive");
  if (cfg.multiplier < 1) throw ConfigError("data.multiplier must be >= 1");
  if (cfg.schedule.cycle < 1 || cfg.schedule.lookback < 2 || cfg.schedule.validation < 2) {
    throw ConfigError("ensemble windows too small");
  }
  for (int h : cfg.train.hidden) {
    if (h > 64) throw ConfigError("rl.hidden layers are capped at 64 units");
  }
  if (cfg.train.hidden.size() > 2) throw ConfigError("rl.hidden allows at most two layers");
  return cfg;
}

EngineConfig RunConfig::engine(bool include_options, bool allow_hedging) const {
  EngineConfig e;
  e.costs = costs;
  e.mark.rate = rate;
  e.multiplier = multiplier;
  e.signals = signals;
  e.initial_cash = initial_cash;
  e.sharpe_window = sharpe_window;
  e.rf_daily = rf_daily();
  e.layout.include_options = include_options;
  e.layout.d_msg = d_msg;
  e.inbox_window = inbox_window;
  e.allow_hedging = allow_hedging;
  e.exchange_messages = include_options;
  return e;
}

std::string RunConfig::echo() const {
  std::ostringstream out;
  auto put = [&](const std::string& key, const std::string& value) {
    out << key << "=" << value << "\n";
  };
  put("data.bars", bars_path);
  put("data.options", options_path);
  put("data.sentiment", sentiment_path);
  put("data.vix", vix_path);
  put("data.require_sentiment", require_sentiment ? "true" : "false");
  put("data.require_vix", require_vix ? "true" : "false");
  put("data.multiplier", std::to_string(multiplier));
  put("costs.equity_rate", fmt_double(costs.equity_rate));
  put("costs.option_fixed", fmt_double(costs.option_fixed_per_contract));
  put("costs.option_prop", fmt_double(costs.option_prop_rate));
  put("signals.w_f", fmt_double(signals.w_f));
  put("signals.w_s", fmt_double(signals.w_s));
  put("signals.tanh_scale", fmt_double(signals.tanh_scale));
  put("signals.use_vix", signals.use_vix ? "true" : "false");
  put("signals.w_v", fmt_double(signals.w_v));
  put("rl.timesteps", std::to_string(timesteps));
  {
    std::string hidden;
    for (std::size_t i = 0; i < train.hidden.size(); ++i) {
      if (i) hidden += ",";
      hidden += std::to_string(train.hidden[i]);
    }
    put("rl.hidden", hidden);
  }
  put("rl.lr", fmt_double(train.lr));
  put("rl.discount", fmt_double(train.discount));
  put("rl.clip", fmt_double(train.clip));
  put("rl.gae_lambda", fmt_double(train.gae_lambda));
  put("rl.ppo_horizon", std::to_string(train.ppo_horizon));
  put("rl.ppo_epochs", std::to_string(train.ppo_epochs));
  put("rl.batch", std::to_string(train.batch));
  put("rl.nstep", std::to_string(train.nstep));
  put("rl.replay", std::to_string(train.replay));
  put("rl.tau", fmt_double(train.tau));
  put("rl.expl_sigma", fmt_double(train.expl_sigma));
  put("rl.learning_starts", std::to_string(train.learning_starts));
  put("rl.d_msg", std::to_string(d_msg));
  put("rl.inbox_window", std::to_string(inbox_window));
  put("rl.sharpe_window", std::to_string(sharpe_window));
  put("rl.rf_annual", fmt_double(rf_annual));
  put("rl.phase_steps", std::to_string(phase_steps));
  put("rl.train_standalone", train_standalone ? "true" : "false");
  put("ensemble.cycle", std::to_string(schedule.cycle));
  put("ensemble.lookback", std::to_string(schedule.lookback));
  put("ensemble.validation", std::to_string(schedule.validation));
  put("ensemble.validation_costs", validation_costs ? "true" : "false");
  put("run.strategy", strategy_name(strategy));
  put("run.seed", std::to_string(seed));
  put("run.initial_cash", fmt_double(initial_cash));
  put("run.rate", fmt_double(rate));
  put("run.train_start", train_start ? train_start->to_string() : "");
  put("run.train_end", train_end ? train_end->to_string() : "");
  put("run.start", test_start ? test_start->to_string() : "");
  put("run.end", test_end ? test_end->to_string() : "");
  put("run.policy_dir", policy_dir);
  put("run.out", out_dir);
  put("run.svg", svg ? "true" : "false");
  put("run.annualization", std::to_string(annualization));
  return out.str();
}

Dataset load_dataset(const RunConfig& cfg) {
  if (cfg.bars_path.empty()) throw ConfigError("data.bars is required");
  Dataset data;
  data.bars = load_bars(cfg.bars_path);
  std::vector<OptionQuote> chain;
  if (!cfg.options_path.empty()) chain = load_option_chain(cfg.options_path);
  std::vector<SentimentRecord> sentiment;
  if (!cfg.sentiment_path.empty()) sentiment = load_sentiment(cfg.sentiment_path);
  std::vector<VixRecord> vix;
  if (!cfg.vix_path.empty()) vix = load_vix(cfg.vix_path);
  data.slices = align_calendar(data.bars, chain, sentiment, vix, cfg.require_sentiment,
                               cfg.require_vix);
  return data;
}

}  // namespace deltahedge
