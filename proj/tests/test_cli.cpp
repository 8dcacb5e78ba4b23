#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "deltahedge/commands.hpp"
#include "deltahedge/config.hpp"
#include "deltahedge/errors.hpp"
#include "deltahedge/report.hpp"
#include "test_util.hpp"

using namespace deltahedge;
using testutil::TempDir;
using testutil::read_file;
using testutil::write_file;

namespace {

SynthParams small_synth(std::uint64_t seed, int days) {
  SynthParams p;
  p.seed = seed;
  p.n_days = days;
  return p;
}

std::string tiny_config_text(const std::string& data_dir, const std::string& out_dir,
                             const std::string& strategy, const std::string& extra = "") {
  return "[data]\n"
         "bars = " + data_dir + "/bars.csv\n"
         "options = " + data_dir + "/options.csv\n"
         "sentiment = " + data_dir + "/sentiment.csv\n"
         "vix = " + data_dir + "/vix.csv\n"
         "[rl]\n"
         "timesteps = 64\n"
         "hidden = 8,8\n"
         "ppo_horizon = 32\n"
         "ppo_epochs = 2\n"
         "batch = 16\n"
         "learning_starts = 16\n"
         "phase_steps = 32\n"
         "d_msg = 4\n"
         "[ensemble]\n"
         "cycle = 21\n"
         "lookback = 30\n"
         "validation = 10\n"
         "[run]\n"
         "strategy = " + strategy + "\n"
         "seed = 11\n"
         "out = " + out_dir + "\n" + extra;
}

}  // namespace

TEST_CASE("synth writes four schema-valid files, deterministically") {
  TempDir a("syntha"), b("synthb");
  cmd_synth(small_synth(7, 120), a.str());
  cmd_synth(small_synth(7, 120), b.str());
  for (const char* name : {"bars.csv", "options.csv", "sentiment.csv", "vix.csv"}) {
    CHECK(std::filesystem::exists(a.file(name)));
    CHECK(read_file(a.file(name)) == read_file(b.file(name)));
  }
  // Loaders accept their own output.
  CHECK_FALSE(load_bars(a.file("bars.csv")).empty());
  CHECK_FALSE(load_option_chain(a.file("options.csv")).empty());
  CHECK_FALSE(load_sentiment(a.file("sentiment.csv")).empty());
  CHECK_FALSE(load_vix(a.file("vix.csv")).empty());
}

TEST_CASE("synth rejects a one-day request") {
  TempDir tmp("synthbad");
  CHECK_THROWS_AS(cmd_synth(small_synth(7, 1), tmp.str()), ConfigError);
}

TEST_CASE("config parsing: defaults, overrides, and unknown keys") {
  TempDir tmp("cfg");
  write_file(tmp.file("ok.ini"),
             "[data]\nbars = x.csv\n[run]\nseed = 42\nstrategy = kdj_rsi\n");
  const RunConfig cfg = parse_config_file(tmp.file("ok.ini"));
  CHECK(cfg.seed == 42);
  CHECK(cfg.bars_path == "x.csv");
  CHECK(cfg.strategy.kind == StrategyKind::kKdjRsi);
  CHECK(cfg.costs.equity_rate == 0.002);
  CHECK(cfg.costs.option_fixed_per_contract == 0.70);
  CHECK(cfg.timesteps == 20000);
  CHECK(cfg.schedule.cycle == 63);

  write_file(tmp.file("unknown.ini"), "[data]\nbars = x.csv\ntypo_key = 3\n");
  CHECK_THROWS_WITH_AS(parse_config_file(tmp.file("unknown.ini")),
                       doctest::Contains("unknown key"), ConfigError);

  write_file(tmp.file("badsec.ini"), "[nosuch]\nkey = 1\n");
  CHECK_THROWS_AS(parse_config_file(tmp.file("badsec.ini")), ConfigError);

  write_file(tmp.file("badval.ini"), "[run]\nseed = abc\n");
  CHECK_THROWS_AS(parse_config_file(tmp.file("badval.ini")), ConfigError);
}

TEST_CASE("backtest command writes the report bundle idempotently") {
  TempDir data_dir("bt_data"), out_dir("bt_out");
  cmd_synth(small_synth(9, 200), data_dir.str());
  const std::string cfg_path = out_dir.file("run.ini");
  write_file(cfg_path, tiny_config_text(data_dir.str(), out_dir.file("report"),
                                        "buy_and_hold"));
  std::uint64_t seed = 11;
  cmd_backtest(cfg_path, &seed, nullptr);
  for (const char* name : {"report.json", "equity.csv", "trades.csv", "selections.csv"}) {
    CHECK(std::filesystem::exists(out_dir.file("report/" + std::string(name))));
  }
  const std::string first = read_file(out_dir.file("report/report.json"));
  cmd_backtest(cfg_path, &seed, nullptr);
  CHECK(read_file(out_dir.file("report/report.json")) == first);

  // selections.csv is header-only for a non-ensemble strategy.
  CHECK(read_file(out_dir.file("report/selections.csv")) ==
        "cycle_start,candidate,metric,selected\n");
}

TEST_CASE("corrupt csv fails with the file and line in the message") {
  TempDir data_dir("bad_data"), out_dir("bad_out");
  cmd_synth(small_synth(10, 80), data_dir.str());
  // Break one row.
  auto bars = read_file(data_dir.file("bars.csv"));
  const auto pos = bars.find('\n', bars.find('\n') + 1);
  bars.insert(pos + 1, "not-a-date,1,2,3,4,5\n");
  write_file(data_dir.file("bars.csv"), bars);

  const std::string cfg_path = out_dir.file("run.ini");
  write_file(cfg_path, tiny_config_text(data_dir.str(), out_dir.file("report"),
                                        "buy_and_hold"));
  try {
    cmd_backtest(cfg_path, nullptr, nullptr);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("bars.csv") != std::string::npos);
    CHECK(msg.find(":3") != std::string::npos);
  }
}

TEST_CASE("compare requires matching ranges and emits the table") {
  TempDir data_dir("cmp_data"), out_dir("cmp_out");
  cmd_synth(small_synth(13, 220), data_dir.str());

  const std::string cfg_a = out_dir.file("a.ini");
  const std::string cfg_b = out_dir.file("b.ini");
  write_file(cfg_a, tiny_config_text(data_dir.str(), out_dir.file("ra"), "buy_and_hold"));
  write_file(cfg_b, tiny_config_text(data_dir.str(), out_dir.file("rb"), "kdj_rsi"));
  std::uint64_t seed = 11;
  cmd_backtest(cfg_a, &seed, nullptr);
  cmd_backtest(cfg_b, &seed, nullptr);

  cmd_compare({out_dir.file("ra"), out_dir.file("rb")}, out_dir.file("cmp"), 3, 500, false);
  const std::string table = read_file(out_dir.file("cmp/compare.csv"));
  CHECK(table.find("strategy,SR,SoR,CR,TR(%),MDD(%),Vol(%)") == 0);
  CHECK(table.find("buy_and_hold") != std::string::npos);
  CHECK(table.find("kdj_rsi") != std::string::npos);

  // Identical reports: p-values near 1 and equal metric rows.
  cmd_compare({out_dir.file("ra"), out_dir.file("ra")}, out_dir.file("cmp_same"), 3, 500,
              false);
  const LoadedReport ra = load_report(out_dir.file("ra"));
  const auto res = bootstrap_test(ra.returns, ra.returns, BootstrapStat::kMeanExcess, 500,
                                  default_block_length(ra.returns.size()), 3);
  CHECK(res.p_value >= 0.9);

  // Mismatched ranges are rejected.
  TempDir short_dir("cmp_short");
  cmd_synth(small_synth(13, 100), short_dir.str());
  const std::string cfg_c = out_dir.file("c.ini");
  write_file(cfg_c, tiny_config_text(short_dir.str(), out_dir.file("rc"), "buy_and_hold"));
  cmd_backtest(cfg_c, &seed, nullptr);
  CHECK_THROWS_AS(
      cmd_compare({out_dir.file("ra"), out_dir.file("rc")}, out_dir.file("cmp2"), 3, 200,
                  false),
      DataError);
}

TEST_CASE("three-way compare has one reference and two p-value pairs") {
  TempDir data_dir("cmp3_data"), out_dir("cmp3_out");
  cmd_synth(small_synth(17, 200), data_dir.str());
  std::vector<std::string> dirs;
  int i = 0;
  for (const char* strategy : {"buy_and_hold", "kdj_rsi", "buy_and_hold"}) {
    const std::string cfg = out_dir.file("cfg" + std::to_string(i) + ".ini");
    const std::string rep = out_dir.file("rep" + std::to_string(i));
    write_file(cfg, tiny_config_text(data_dir.str(), rep, strategy));
    std::uint64_t seed = 11;
    cmd_backtest(cfg, &seed, nullptr);
    dirs.push_back(rep);
    ++i;
  }
  cmd_compare(dirs, out_dir.file("cmp"), 5, 400, true);
  const std::string table = read_file(out_dir.file("cmp/compare.csv"));
  // Header + 3 strategy rows.
  CHECK(std::count(table.begin(), table.end(), '\n') == 4);
  // Reference row has empty p-values; the other two are populated.
  std::size_t populated = 0;
  std::istringstream ss(table);
  std::string line;
  std::getline(ss, line);
  while (std::getline(ss, line)) {
    if (line.find(",,") == std::string::npos) ++populated;
  }
  CHECK(populated == 2);
  CHECK(std::filesystem::exists(out_dir.file("cmp/compare.svg")));
}

TEST_CASE("report command prints tables and renders svg on request") {
  TempDir data_dir("rep_data"), out_dir("rep_out");
  cmd_synth(small_synth(19, 150), data_dir.str());
  const std::string cfg = out_dir.file("run.ini");
  write_file(cfg, tiny_config_text(data_dir.str(), out_dir.file("rep"), "buy_and_hold"));
  cmd_backtest(cfg, nullptr, nullptr);
  cmd_report({out_dir.file("rep")}, true);
  CHECK(std::filesystem::exists(out_dir.file("rep/equity.svg")));
}
