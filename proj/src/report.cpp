#include "deltahedge/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "deltahedge/csv_io.hpp"
#include "deltahedge/errors.hpp"
#include "deltahedge/rng.hpp"
#include "deltahedge/svg.hpp"

namespace deltahedge {

namespace {

using nlohmann::json;

/// Infinity sentinel serializes as the string "inf".
json metric_value(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json metric_table_json(const MetricTable& m) {
  return {
      {"SR", metric_value(m.sharpe)},
      {"SoR", metric_value(m.sortino)},
      {"CR", metric_value(m.calmar)},
      {"TR", metric_value(m.total_return)},
      {"MDD", metric_value(m.max_drawdown)},
      {"Vol", metric_value(m.volatility)},
      {"annualized_return", metric_value(m.annualized_return)},
      {"n_days", m.n_days},
  };
}

std::string metric_csv(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt_double(v);
}

std::string pct(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt_double(v * 100.0);
}

}  // namespace

std::string format_metric_row(const std::string& name, const MetricTable& m) {
  char buf[256];
  auto f = [](double v) { return std::isinf(v) ? 1e9 : v; };
  std::snprintf(buf, sizeof(buf),
                "%-28s SR %6.2f  SoR %6.2f  CR %6.2f  TR %8.2f%%  MDD %6.2f%%  Vol %6.2f%%",
                name.c_str(), f(m.sharpe), f(m.sortino), f(m.calmar), m.total_return * 100.0,
                m.max_drawdown * 100.0, m.volatility * 100.0);
  return buf;
}

void write_report(const BacktestReport& report, const std::string& dir, bool svg) {
  std::filesystem::create_directories(dir);

  json j;
  j["strategy"] = report.strategy;
  j["seed"] = report.seed;
  j["days"] = report.dates.size();
  if (!report.dates.empty()) {
    j["start"] = report.dates.front().to_string();
    j["end"] = report.dates.back().to_string();
  }
  j["metrics"] = report.has_metrics ? metric_table_json(report.metrics) : json(nullptr);
  json regimes = json::object();
  for (const auto& [label, table] : report.regime_tables) {
    regimes[label] = metric_table_json(table);
  }
  j["regimes"] = regimes;
  json selections = json::array();
  for (const auto& s : report.selections) {
    selections.push_back({{"cycle_start", s.cycle_start.to_string()},
                          {"candidate", s.candidate},
                          {"metric", s.metric ? json(*s.metric) : json(nullptr)},
                          {"selected", s.selected}});
  }
  j["selections"] = selections;
  j["events"] = report.events;
  j["config"] = report.config_echo;

  std::ofstream out(dir + "/report.json", std::ios::binary);
  if (!out) throw DataError(dir + "/report.json: cannot write");
  out << j.dump(2) << '\n';

  {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < report.dates.size(); ++i) {
      rows.push_back({report.dates[i].to_string(), fmt_double(report.equity[i])});
    }
    write_csv(dir + "/equity.csv", {"date", "value"}, rows);
  }
  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& t : report.trades) {
      rows.push_back({t.date.to_string(),
                      t.kind == TradeRecord::Kind::kEquity ? "equity" : "option",
                      std::to_string(t.quantity), fmt_double(t.price), fmt_double(t.cost)});
    }
    write_csv(dir + "/trades.csv", {"date", "kind", "quantity", "price", "cost"}, rows);
  }
  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : report.selections) {
      rows.push_back({s.cycle_start.to_string(), s.candidate,
                      s.metric ? fmt_double(*s.metric) : "", s.selected ? "true" : "false"});
    }
    write_csv(dir + "/selections.csv", {"cycle_start", "candidate", "metric", "selected"}, rows);
  }
  if (svg && !report.dates.empty()) {
    write_line_chart(dir + "/equity.svg", "Equity curve: " + report.strategy,
                     {{report.strategy, report.dates, report.equity}});
  }
}

LoadedReport load_report(const std::string& dir) {
  LoadedReport r;
  std::ifstream in(dir + "/report.json");
  if (!in) throw DataError(dir + "/report.json: cannot open");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw DataError(dir + "/report.json: " + e.what());
  }
  r.strategy = j.at("strategy").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();

  const CsvFile equity = read_csv(dir + "/equity.csv", {"date", "value"});
  for (std::size_t i = 0; i < equity.rows.size(); ++i) {
    r.dates.push_back(Date::parse(equity.rows[i][0]));
    r.equity.push_back(std::strtod(equity.rows[i][1].c_str(), nullptr));
  }
  for (std::size_t t = 1; t < r.equity.size(); ++t) {
    r.returns.push_back(r.equity[t] / r.equity[t - 1] - 1.0);
  }
  return r;
}

void write_comparison(const std::vector<LoadedReport>& reports, const std::string& out_dir,
                      const CompareOptions& opts) {
  if (reports.size() < 2) throw ConfigError("compare needs at least two reports");
  for (const auto& r : reports) {
    if (r.dates != reports.front().dates) {
      throw DataError("compare: report date ranges do not match (" + r.strategy + ")");
    }
  }
  if (reports.front().returns.size() < 2) {
    throw DataError("compare: reports are too short for metrics");
  }

  std::filesystem::create_directories(out_dir);
  const int block = default_block_length(reports.front().returns.size());

  json j;
  j["reference"] = reports.front().strategy;
  j["resamples"] = opts.resamples;
  j["block_length"] = block;
  json table = json::array();
  std::vector<std::vector<std::string>> csv_rows;

  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    const MetricTable m = compute_metrics(r.equity);
    json row;
    row["strategy"] = r.strategy;
    row["metrics"] = metric_table_json(m);
    std::string p_mean = "", p_sharpe = "";
    if (i > 0) {
      const auto pm = bootstrap_test(r.returns, reports.front().returns,
                                     BootstrapStat::kMeanExcess, opts.resamples, block,
                                     derive_seed(opts.seed, 2 * i));
      const auto ps = bootstrap_test(r.returns, reports.front().returns,
                                     BootstrapStat::kSharpeDiff, opts.resamples, block,
                                     derive_seed(opts.seed, 2 * i + 1));
      row["p_mean_excess_vs_reference"] = pm.p_value;
      row["p_sharpe_diff_vs_reference"] = ps.p_value;
      p_mean = fmt_double(pm.p_value);
      p_sharpe = fmt_double(ps.p_value);
    }

    json regimes = json::object();
    for (const auto& window : regime_presets()) {
      if (auto sliced = regime_slice(r.dates, r.equity, window)) {
        regimes[window.label] = metric_table_json(*sliced);
      }
    }
    row["regimes"] = regimes;
    table.push_back(row);

    // Column order follows the standard reporting table:
    // SR, SoR, CR, TR(%), MDD(%), Vol(%).
    csv_rows.push_back({r.strategy, metric_csv(m.sharpe), metric_csv(m.sortino),
                        metric_csv(m.calmar), pct(m.total_return), pct(m.max_drawdown),
                        pct(m.volatility), p_mean, p_sharpe});
  }
  j["strategies"] = table;

  std::ofstream out(out_dir + "/compare.json", std::ios::binary);
  if (!out) throw DataError(out_dir + "/compare.json: cannot write");
  out << j.dump(2) << '\n';

  write_csv(out_dir + "/compare.csv",
            {"strategy", "SR", "SoR", "CR", "TR(%)", "MDD(%)", "Vol(%)",
             "p_mean_excess_vs_reference", "p_sharpe_diff_vs_reference"},
            csv_rows);

  if (opts.svg) {
    std::vector<SvgSeries> series;
    for (const auto& r : reports) series.push_back({r.strategy, r.dates, r.equity});
    write_line_chart(out_dir + "/compare.svg", "Equity curves", series);
  }
}

}  // namespace deltahedge
