#pragma once

#include <string>
#include <vector>

#include "deltahedge/bootstrap.hpp"
#include "deltahedge/coordinator.hpp"

namespace deltahedge {

/// Writes report.json, equity.csv, trades.csv, selections.csv (and
/// equity.svg when `svg`) under `dir`, creating it if needed. Output is
/// byte-deterministic for a given report.
void write_report(const BacktestReport& report, const std::string& dir, bool svg);

/// The slice of a written report that compare needs.
struct LoadedReport {
  std::string strategy;
  std::uint64_t seed = 0;
  std::vector<Date> dates;
  std::vector<double> equity;
  std::vector<double> returns;
};

LoadedReport load_report(const std::string& dir);

struct CompareOptions {
  int resamples = 10000;
  std::uint64_t seed = 7;
  bool svg = false;
};

/// Metric table per strategy (first entry is the reference) plus pairwise
/// bootstrap p-values against the reference; writes compare.json and
/// compare.csv (and compare.svg). Throws DataError when the reports do
/// not share an identical date range.
void write_comparison(const std::vector<LoadedReport>& reports, const std::string& out_dir,
                      const CompareOptions& opts);

/// Renders a metric table row set to stdout-friendly text.
std::string format_metric_row(const std::string& name, const MetricTable& m);

}  // namespace deltahedge
