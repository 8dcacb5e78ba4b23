#include "deltahedge/market_data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <tuple>

#include "deltahedge/csv_io.hpp"
#include "deltahedge/errors.hpp"

namespace deltahedge {

namespace {

std::string at(const std::string& path, int line) {
  return path + ":" + std::to_string(line) + ": ";
}

double parse_num(const std::string& path, int line, const std::string& field,
                 const std::string& name) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (field.empty() || end != field.c_str() + field.size() || !std::isfinite(v)) {
    throw DataError(at(path, line) + "bad " + name + " '" + field + "'");
  }
  return v;
}

std::int64_t parse_count(const std::string& path, int line, const std::string& field,
                         const std::string& name) {
  const double v = parse_num(path, line, field, name);
  if (v < 0 || v != std::floor(v)) {
    throw DataError(at(path, line) + name + " must be a non-negative integer, got '" + field + "'");
  }
  return static_cast<std::int64_t>(v);
}

Date parse_date_field(const std::string& path, int line, const std::string& field) {
  try {
    return Date::parse(field);
  } catch (const std::exception& e) {
    throw DataError(at(path, line) + e.what());
  }
}

}  // namespace

std::vector<Bar> load_bars(const std::string& path) {
  const CsvFile file = read_csv(path, {"date", "open", "high", "low", "close", "volume"});
  std::vector<Bar> bars;
  bars.reserve(file.rows.size());
  for (size_t i = 0; i < file.rows.size(); ++i) {
    const auto& row = file.rows[i];
    const int line = file.line_numbers[i];
    Bar bar;
    bar.date = parse_date_field(path, line, row[0]);
    bar.open = parse_num(path, line, row[1], "open");
    bar.high = parse_num(path, line, row[2], "high");
    bar.low = parse_num(path, line, row[3], "low");
    bar.close = parse_num(path, line, row[4], "close");
    bar.volume = parse_count(path, line, row[5], "volume");
    if (bar.open <= 0 || bar.high <= 0 || bar.low <= 0 || bar.close <= 0) {
      throw DataError(at(path, line) + "prices must be positive");
    }
    if (bar.low > std::min(bar.open, bar.close)) {
      throw DataError(at(path, line) + "low exceeds min(open, close)");
    }
    if (bar.high < std::max(bar.open, bar.close)) {
      throw DataError(at(path, line) + "high is below max(open, close)");
    }
    if (!bars.empty()) {
      if (bar.date == bars.back().date) {
        throw DataError(at(path, line) + "duplicate date " + bar.date.to_string());
      }
      if (bar.date < bars.back().date) {
        throw DataError(at(path, line) + "dates not strictly increasing at " +
                        bar.date.to_string());
      }
    }
    bars.push_back(bar);
  }
  return bars;
}

std::vector<OptionQuote> load_option_chain(const std::string& path) {
  const CsvFile file = read_csv(
      path, {"date", "expiry", "strike", "right", "bid", "ask", "delta", "volume",
             "open_interest"});
  std::vector<OptionQuote> chain;
  chain.reserve(file.rows.size());
  std::set<std::tuple<std::int64_t, std::int64_t, double, bool>> seen;
  for (size_t i = 0; i < file.rows.size(); ++i) {
    const auto& row = file.rows[i];
    const int line = file.line_numbers[i];
    OptionQuote q;
    q.date = parse_date_field(path, line, row[0]);
    q.expiry = parse_date_field(path, line, row[1]);
    q.strike = parse_num(path, line, row[2], "strike");
    if (row[3] == "put") {
      q.is_put = true;
    } else if (row[3] == "call") {
      q.is_put = false;
    } else {
      throw DataError(at(path, line) + "right must be 'put' or 'call', got '" + row[3] + "'");
    }
    q.bid = parse_num(path, line, row[4], "bid");
    q.ask = parse_num(path, line, row[5], "ask");
    if (!row[6].empty()) q.delta = parse_num(path, line, row[6], "delta");
    q.volume = parse_count(path, line, row[7], "volume");
    q.open_interest = parse_count(path, line, row[8], "open_interest");

    if (q.strike <= 0) throw DataError(at(path, line) + "strike must be positive");
    if (q.bid < 0 || q.bid > q.ask) {
      throw DataError(at(path, line) + "quote violates 0 <= bid <= ask");
    }
    if (q.expiry < q.date) throw DataError(at(path, line) + "expiry precedes quote date");
    if (q.delta) {
      if (*q.delta < -1.0 || *q.delta > 1.0) {
        throw DataError(at(path, line) + "delta outside [-1, 1]");
      }
      if (q.is_put && *q.delta > 0.0) {
        throw DataError(at(path, line) + "put delta must lie in [-1, 0]");
      }
    }
    if (!chain.empty() && q.date < chain.back().date) {
      throw DataError(at(path, line) + "dates not monotone at " + q.date.to_string());
    }
    if (!seen.insert({q.date.serial(), q.expiry.serial(), q.strike, q.is_put}).second) {
      throw DataError(at(path, line) + "duplicate contract quote on " + q.date.to_string());
    }
    chain.push_back(q);
  }
  std::stable_sort(chain.begin(), chain.end(), [](const OptionQuote& a, const OptionQuote& b) {
    return std::tie(a.date, a.expiry, a.strike) < std::tie(b.date, b.expiry, b.strike);
  });
  return chain;
}

std::vector<SentimentRecord> load_sentiment(const std::string& path) {
  const CsvFile file = read_csv(path, {"date", "score"});
  std::vector<SentimentRecord> recs;
  recs.reserve(file.rows.size());
  for (size_t i = 0; i < file.rows.size(); ++i) {
    const auto& row = file.rows[i];
    const int line = file.line_numbers[i];
    SentimentRecord r;
    r.date = parse_date_field(path, line, row[0]);
    r.score = parse_num(path, line, row[1], "score");
    if (r.score < 0.0 || r.score > 100.0) {
      throw DataError(at(path, line) + "score outside [0, 100]");
    }
    if (!recs.empty()) {
      if (r.date == recs.back().date) {
        throw DataError(at(path, line) + "duplicate date " + r.date.to_string());
      }
      if (r.date < recs.back().date) {
        throw DataError(at(path, line) + "dates not strictly increasing");
      }
    }
    recs.push_back(r);
  }
  return recs;
}

std::vector<VixRecord> load_vix(const std::string& path) {
  const CsvFile file = read_csv(path, {"date", "level"});
  std::vector<VixRecord> recs;
  recs.reserve(file.rows.size());
  for (size_t i = 0; i < file.rows.size(); ++i) {
    const auto& row = file.rows[i];
    const int line = file.line_numbers[i];
    VixRecord r;
    r.date = parse_date_field(path, line, row[0]);
    r.level = parse_num(path, line, row[1], "level");
    if (r.level <= 0.0) throw DataError(at(path, line) + "level must be positive");
    if (!recs.empty()) {
      if (r.date == recs.back().date) {
        throw DataError(at(path, line) + "duplicate date " + r.date.to_string());
      }
      if (r.date < recs.back().date) {
        throw DataError(at(path, line) + "dates not strictly increasing");
      }
    }
    recs.push_back(r);
  }
  return recs;
}

void write_bars(const std::string& path, const std::vector<Bar>& bars) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(bars.size());
  for (const auto& b : bars) {
    rows.push_back({b.date.to_string(), fmt_double(b.open), fmt_double(b.high),
                    fmt_double(b.low), fmt_double(b.close), std::to_string(b.volume)});
  }
  write_csv(path, {"date", "open", "high", "low", "close", "volume"}, rows);
}

void write_option_chain(const std::string& path, const std::vector<OptionQuote>& chain) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(chain.size());
  for (const auto& q : chain) {
    rows.push_back({q.date.to_string(), q.expiry.to_string(), fmt_double(q.strike),
                    q.is_put ? "put" : "call", fmt_double(q.bid), fmt_double(q.ask),
                    q.delta ? fmt_double(*q.delta) : "", std::to_string(q.volume),
                    std::to_string(q.open_interest)});
  }
  write_csv(path,
            {"date", "expiry", "strike", "right", "bid", "ask", "delta", "volume",
             "open_interest"},
            rows);
}

void write_sentiment(const std::string& path, const std::vector<SentimentRecord>& recs) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(recs.size());
  for (const auto& r : recs) rows.push_back({r.date.to_string(), fmt_double(r.score)});
  write_csv(path, {"date", "score"}, rows);
}

void write_vix(const std::string& path, const std::vector<VixRecord>& recs) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(recs.size());
  for (const auto& r : recs) rows.push_back({r.date.to_string(), fmt_double(r.level)});
  write_csv(path, {"date", "level"}, rows);
}

std::vector<MarketSlice> align_calendar(const std::vector<Bar>& bars,
                                        const std::vector<OptionQuote>& chain,
                                        const std::vector<SentimentRecord>& sentiment,
                                        const std::vector<VixRecord>& vix,
                                        bool require_sentiment, bool require_vix) {
  if (bars.empty()) throw DataError("align_calendar: bar series is empty");
  if (require_sentiment && sentiment.empty()) {
    throw DataError("align_calendar: sentiment series required but empty");
  }
  if (require_vix && vix.empty()) {
    throw DataError("align_calendar: vix series required but empty");
  }

  std::vector<MarketSlice> slices;
  slices.reserve(bars.size());
  size_t chain_i = 0, sent_i = 0, vix_i = 0;
  double sent_value = sentiment.empty() ? 50.0 : sentiment.front().score;
  double vix_value = vix.empty() ? 20.0 : vix.front().level;

  for (const Bar& bar : bars) {
    MarketSlice slice;
    slice.date = bar.date;
    slice.bar = bar;

    while (chain_i < chain.size() && chain[chain_i].date < bar.date) ++chain_i;
    for (size_t j = chain_i; j < chain.size() && chain[j].date == bar.date; ++j) {
      if (chain[j].is_put) slice.puts.push_back(chain[j]);
    }

    while (sent_i < sentiment.size() && sentiment[sent_i].date <= bar.date) {
      sent_value = sentiment[sent_i].score;
      ++sent_i;
    }
    while (vix_i < vix.size() && vix[vix_i].date <= bar.date) {
      vix_value = vix[vix_i].level;
      ++vix_i;
    }
    slice.sentiment = sent_value;
    slice.vix = vix_value;
    slices.push_back(std::move(slice));
  }
  return slices;
}

}  // namespace deltahedge
