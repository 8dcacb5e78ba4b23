#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "deltahedge/dates.hpp"

namespace deltahedge {

/// One daily OHLCV bar. The engine treats close as "the" price of the day.
struct Bar {
  Date date;
  double open = 0.0;
  double high = 0.0;
  double low = 0.0;
  double close = 0.0;
  std::int64_t volume = 0;

  bool operator==(const Bar&) const = default;
};

/// A dated market quote for one option contract.
struct OptionQuote {
  Date date;
  Date expiry;
  double strike = 0.0;
  bool is_put = true;
  double bid = 0.0;
  double ask = 0.0;
  std::optional<double> delta;  // vendor delta when quoted
  std::int64_t volume = 0;
  std::int64_t open_interest = 0;

  bool operator==(const OptionQuote&) const = default;
};

struct SentimentRecord {
  Date date;
  double score = 50.0;  // in [0, 100]

  bool operator==(const SentimentRecord&) const = default;
};

struct VixRecord {
  Date date;
  double level = 0.0;  // > 0

  bool operator==(const VixRecord&) const = default;
};

/// All feeds aligned to one trading day. Sentiment/VIX are filled values;
/// the put list may be empty.
struct MarketSlice {
  Date date;
  Bar bar;
  std::vector<OptionQuote> puts;
  double sentiment = 50.0;
  double vix = 20.0;
};

std::vector<Bar> load_bars(const std::string& path);
std::vector<OptionQuote> load_option_chain(const std::string& path);
std::vector<SentimentRecord> load_sentiment(const std::string& path);
std::vector<VixRecord> load_vix(const std::string& path);

void write_bars(const std::string& path, const std::vector<Bar>& bars);
void write_option_chain(const std::string& path, const std::vector<OptionQuote>& chain);
void write_sentiment(const std::string& path, const std::vector<SentimentRecord>& recs);
void write_vix(const std::string& path, const std::vector<VixRecord>& recs);

/// One slice per bar date. Sentiment and VIX are forward-filled across
/// gaps (leading gap back-filled from the first observation); put quotes
/// attach by exact date. Empty sentiment/VIX series fall back to neutral
/// defaults (50 / 20) unless `require_sentiment` / `require_vix` is set,
/// in which case an empty series is a DataError.
std::vector<MarketSlice> align_calendar(const std::vector<Bar>& bars,
                                        const std::vector<OptionQuote>& chain,
                                        const std::vector<SentimentRecord>& sentiment,
                                        const std::vector<VixRecord>& vix,
                                        bool require_sentiment = false, bool require_vix = false);

/// One constant-parameter segment of the synthetic price process.
/// `start_day` indexes trading days from 0.
struct SynthRegime {
  int start_day = 0;
  double mu = 0.07;
  double sigma = 0.2;
};

struct SynthParams {
  std::uint64_t seed = 0;
  int n_days = 252;
  double s0 = 100.0;
  double mu = 0.07;     // annualized drift
  double sigma = 0.2;   // annualized volatility, > 0
  double rate = 0.02;   // pricing rate for the option chain
  Date start = Date(2020, 1, 2);
  std::vector<SynthRegime> regimes;  // optional overrides, sorted by start_day
};

struct SynthDataset {
  std::vector<Bar> bars;
  std::vector<OptionQuote> chain;
  std::vector<SentimentRecord> sentiment;
  std::vector<VixRecord> vix;
};

/// Deterministic desk-scale dataset: GBM closes on a weekday calendar, a
/// daily 11-strike ATM put ladder expiring in 30 calendar days (model
/// prices, bid/ask = theo -/+ half-spread, model delta attached), neutral
/// sentiment with bounded noise, and a VIX tracking the active sigma.
/// Identical params produce byte-identical CSV output.
SynthDataset synth_generate(const SynthParams& params);

}  // namespace deltahedge
