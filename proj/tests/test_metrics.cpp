#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "deltahedge/metrics.hpp"
#include "deltahedge/rng.hpp"

using namespace deltahedge;

namespace {

/// Brute-force single-pass recomputation, written independently of
/// compute_metrics.
MetricTable oracle_metrics(std::span<const double> curve, double rf, int ppy) {
  MetricTable m;
  const std::size_t n = curve.size() - 1;
  m.n_days = static_cast<int>(n);
  m.total_return = curve.back() / curve.front() - 1.0;
  m.annualized_return = std::pow(1.0 + m.total_return, double(ppy) / double(n)) - 1.0;

  std::vector<double> r;
  for (std::size_t i = 1; i < curve.size(); ++i) r.push_back(curve[i] / curve[i - 1] - 1.0);
  double mean = 0.0;
  for (double x : r) mean += x;
  mean /= double(r.size());
  double ss = 0.0;
  for (double x : r) ss += (x - mean) * (x - mean);
  const double sd = r.size() > 1 ? std::sqrt(ss / double(r.size() - 1)) : 0.0;
  m.volatility = sd * std::sqrt(double(ppy));
  m.sharpe = sd < 1e-12 ? 0.0 : (mean - rf) / sd * std::sqrt(double(ppy));

  double dd_ss = 0.0;
  for (double x : r) {
    const double d = x - rf < 0.0 ? x - rf : 0.0;
    dd_ss += d * d;
  }
  const double dd = std::sqrt(dd_ss / double(r.size()));
  m.sortino = dd < 1e-12 ? std::numeric_limits<double>::infinity()
                         : (mean - rf) / dd * std::sqrt(double(ppy));

  // Exhaustive peak-trough scan.
  double worst = 0.0;
  for (std::size_t t = 0; t < curve.size(); ++t) {
    for (std::size_t p = 0; p <= t; ++p) {
      worst = std::max(worst, (curve[p] - curve[t]) / curve[p]);
    }
  }
  m.max_drawdown = worst;
  m.calmar = worst < 1e-15 ? std::numeric_limits<double>::infinity()
                           : m.annualized_return / worst;
  return m;
}

}  // namespace

TEST_CASE("drawdown and total return of the canonical curve") {
  const double curve[] = {100.0, 120.0, 90.0, 110.0};
  const MetricTable m = compute_metrics(curve);
  CHECK(m.max_drawdown == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(m.total_return == doctest::Approx(0.10).epsilon(1e-12));
}

TEST_CASE("strictly increasing curve has zero drawdown and calmar sentinel") {
  const double curve[] = {100.0, 101.0, 103.0, 108.0};
  const MetricTable m = compute_metrics(curve);
  CHECK(m.max_drawdown == 0.0);
  CHECK(std::isinf(m.calmar));
}

TEST_CASE("constant curve degenerates to zeros") {
  const double curve[] = {100.0, 100.0, 100.0};
  const MetricTable m = compute_metrics(curve);
  CHECK(m.total_return == 0.0);
  CHECK(m.volatility == 0.0);
  CHECK(m.sharpe == 0.0);
  CHECK(m.max_drawdown == 0.0);
}

TEST_CASE("rejects short or non-positive curves") {
  const double one[] = {100.0};
  CHECK_THROWS_AS(compute_metrics(one), std::invalid_argument);
  const double bad[] = {100.0, -5.0, 90.0};
  CHECK_THROWS_AS(compute_metrics(bad), std::invalid_argument);
}

TEST_CASE("matches the brute-force oracle to 1e-12 on 1000 random curves") {
  Rng rng(77);
  for (int rep = 0; rep < 1000; ++rep) {
    const int n = 2 + static_cast<int>(rng.uniform_index(120));
    std::vector<double> curve(n);
    double v = 50.0 + 100.0 * rng.uniform01();
    for (int i = 0; i < n; ++i) {
      curve[i] = v;
      v *= std::exp(0.02 * rng.normal());
    }
    const double rf = rng.uniform01() < 0.5 ? 0.0 : 1e-4;
    const MetricTable got = compute_metrics(curve, rf);
    const MetricTable want = oracle_metrics(curve, rf, 252);
    CHECK(got.total_return == doctest::Approx(want.total_return).epsilon(1e-12));
    CHECK(got.annualized_return == doctest::Approx(want.annualized_return).epsilon(1e-12));
    CHECK(got.volatility == doctest::Approx(want.volatility).epsilon(1e-12));
    CHECK(got.max_drawdown == doctest::Approx(want.max_drawdown).epsilon(1e-12));
    if (std::isinf(want.sortino)) {
      CHECK(std::isinf(got.sortino));
    } else {
      CHECK(got.sortino == doctest::Approx(want.sortino).epsilon(1e-12));
    }
    CHECK(got.sharpe == doctest::Approx(want.sharpe).epsilon(1e-12));
    if (std::isinf(want.calmar)) {
      CHECK(std::isinf(got.calmar));
    } else {
      CHECK(got.calmar == doctest::Approx(want.calmar).epsilon(1e-12));
    }
  }
}

TEST_CASE("curve scaling leaves return-based metrics unchanged") {
  Rng rng(78);
  std::vector<double> curve(80);
  double v = 100.0;
  for (auto& x : curve) {
    x = v;
    v *= std::exp(0.015 * rng.normal());
  }
  const MetricTable base = compute_metrics(curve);
  for (double c : {0.01, 3.0, 1234.5}) {
    std::vector<double> scaled = curve;
    for (auto& x : scaled) x *= c;
    const MetricTable m = compute_metrics(scaled);
    CHECK(m.sharpe == doctest::Approx(base.sharpe).epsilon(1e-12));
    CHECK(m.sortino == doctest::Approx(base.sortino).epsilon(1e-12));
    CHECK(m.volatility == doctest::Approx(base.volatility).epsilon(1e-12));
    CHECK(m.max_drawdown == doctest::Approx(base.max_drawdown).epsilon(1e-12));
    CHECK(m.total_return == doctest::Approx(base.total_return).epsilon(1e-12));
  }
}

TEST_CASE("max drawdown is zero iff the curve is non-decreasing") {
  Rng rng(79);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> curve(30);
    double v = 100.0;
    bool nondecreasing = true;
    for (auto& x : curve) {
      const double step = rng.normal();
      x = v;
      v *= std::exp(0.01 * step);
    }
    for (std::size_t i = 1; i < curve.size(); ++i) {
      if (curve[i] < curve[i - 1]) nondecreasing = false;
    }
    const MetricTable m = compute_metrics(curve);
    CHECK((m.max_drawdown == 0.0) == nondecreasing);
    CHECK(m.max_drawdown >= 0.0);
    CHECK(m.max_drawdown <= 1.0);
  }
}

TEST_CASE("regime presets carry the three windows") {
  const auto presets = regime_presets();
  REQUIRE(presets.size() == 3);
  CHECK(presets[0].label == "rising");
  CHECK(presets[0].start.to_string() == "2020-04-01");
  CHECK(presets[0].end.to_string() == "2021-08-31");
  CHECK(presets[1].start.to_string() == "2022-01-01");
  CHECK(presets[1].end.to_string() == "2022-06-30");
  CHECK(presets[2].start.to_string() == "2022-05-01");
  CHECK(presets[2].end.to_string() == "2023-01-31");
}

TEST_CASE("regime slicing: full window equals whole-curve metrics, windows independent") {
  Rng rng(80);
  std::vector<Date> dates;
  std::vector<double> curve;
  double v = 100.0;
  Date d(2022, 1, 3);
  for (int i = 0; i < 260; ++i) {
    while (d.is_weekend()) d = d.plus_days(1);
    dates.push_back(d);
    curve.push_back(v);
    v *= std::exp(0.012 * rng.normal());
    d = d.plus_days(1);
  }

  const RegimeWindow full{"full", dates.front(), dates.back()};
  const auto whole = regime_slice(dates, curve, full);
  REQUIRE(whole.has_value());
  const MetricTable direct = compute_metrics(curve);
  CHECK(whole->sharpe == doctest::Approx(direct.sharpe));
  CHECK(whole->max_drawdown == doctest::Approx(direct.max_drawdown));

  const RegimeWindow first_half{"a", dates.front(), dates[100]};
  const RegimeWindow second_half{"b", dates[150], dates.back()};
  const auto a = regime_slice(dates, curve, first_half);
  REQUIRE(a.has_value());

  // Mutating the other window's data leaves this one unchanged.
  std::vector<double> mutated = curve;
  for (int i = 151; i < 260; ++i) mutated[i] *= 5.0;
  const auto a_after = regime_slice(dates, mutated, first_half);
  REQUIRE(a_after.has_value());
  CHECK(a->sharpe == a_after->sharpe);
  CHECK(a->total_return == a_after->total_return);
  const auto b = regime_slice(dates, curve, second_half);
  const auto b_after = regime_slice(dates, mutated, second_half);
  REQUIRE(b.has_value());
  REQUIRE(b_after.has_value());
  CHECK(b->total_return != b_after->total_return);

  const RegimeWindow outside{"none", Date(1990, 1, 1), Date(1990, 2, 1)};
  CHECK_FALSE(regime_slice(dates, curve, outside).has_value());
}
