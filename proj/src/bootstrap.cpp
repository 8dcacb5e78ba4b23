#include "deltahedge/bootstrap.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "deltahedge/rng.hpp"

namespace deltahedge {

namespace {

double mean_of(std::span<const double> xs) {
  double m = 0.0;
  for (double x : xs) m += x;
  return m / static_cast<double>(xs.size());
}

double sharpe_of(std::span<const double> xs) {
  const std::size_t n = xs.size();
  const double m = mean_of(xs);
  double var = 0.0;
  for (double x : xs) var += (x - m) * (x - m);
  var = n > 1 ? var / static_cast<double>(n - 1) : 0.0;
  const double sd = std::sqrt(var);
  return sd < 1e-12 ? 0.0 : m / sd;
}

double statistic(std::span<const double> a, std::span<const double> b, BootstrapStat stat) {
  if (stat == BootstrapStat::kMeanExcess) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m += a[i] - b[i];
    return m / static_cast<double>(a.size());
  }
  return sharpe_of(a) - sharpe_of(b);
}

/// Stationary bootstrap index stream (Politis-Romano): geometric block
/// lengths with mean `block_length`, wrap-around continuation.
void resample_indices(Rng& rng, std::size_t n, double restart_prob,
                      std::vector<std::size_t>& idx) {
  idx.resize(n);
  std::size_t cur = rng.uniform_index(n);
  idx[0] = cur;
  for (std::size_t k = 1; k < n; ++k) {
    if (rng.uniform01() < restart_prob) {
      cur = rng.uniform_index(n);
    } else {
      cur = (cur + 1) % n;
    }
    idx[k] = cur;
  }
}

double resample_statistic(std::uint64_t resample_seed, std::span<const double> a,
                          std::span<const double> b, BootstrapStat stat, double restart_prob) {
  Rng rng(resample_seed);
  const std::size_t n = a.size();
  std::vector<std::size_t> idx;
  resample_indices(rng, n, restart_prob, idx);
  std::vector<double> ra(n), rb(n);
  for (std::size_t k = 0; k < n; ++k) {
    ra[k] = a[idx[k]];
    rb[k] = b[idx[k]];
  }
  return statistic(ra, rb, stat);
}

void validate(std::span<const double> a, std::span<const double> b, int resamples,
              int block_length) {
  if (a.size() != b.size()) throw std::invalid_argument("bootstrap_test: length mismatch");
  if (a.size() < 2) throw std::invalid_argument("bootstrap_test: need >= 2 observations");
  if (resamples < 1) throw std::invalid_argument("bootstrap_test: resamples must be >= 1");
  if (block_length < 1) throw std::invalid_argument("bootstrap_test: block length must be >= 1");
}

BootstrapResult finish(std::span<const double> stats, double observed) {
  std::size_t extreme = 0;
  for (double s : stats) {
    if (std::abs(s - observed) >= std::abs(observed)) ++extreme;
  }
  BootstrapResult out;
  out.observed = observed;
  out.p_value = static_cast<double>(1 + extreme) / static_cast<double>(stats.size() + 1);
  return out;
}

}  // namespace

int default_block_length(std::size_t n) {
  return static_cast<int>(std::ceil(std::cbrt(static_cast<double>(n))));
}

BootstrapResult bootstrap_test_serial(std::span<const double> returns_a,
                                      std::span<const double> returns_b, BootstrapStat stat,
                                      int resamples, int block_length, std::uint64_t seed) {
  validate(returns_a, returns_b, resamples, block_length);
  const double restart_prob = 1.0 / block_length;
  const double observed = statistic(returns_a, returns_b, stat);
  std::vector<double> stats(resamples);
  for (int b = 0; b < resamples; ++b) {
    stats[b] = resample_statistic(derive_seed(seed, static_cast<std::uint64_t>(b)), returns_a,
                                  returns_b, stat, restart_prob);
  }
  return finish(stats, observed);
}

BootstrapResult bootstrap_test(std::span<const double> returns_a,
                               std::span<const double> returns_b, BootstrapStat stat,
                               int resamples, int block_length, std::uint64_t seed) {
  validate(returns_a, returns_b, resamples, block_length);
  const double restart_prob = 1.0 / block_length;
  const double observed = statistic(returns_a, returns_b, stat);
  std::vector<double> stats(resamples);
#pragma omp parallel for schedule(static)
  for (int b = 0; b < resamples; ++b) {
    stats[b] = resample_statistic(derive_seed(seed, static_cast<std::uint64_t>(b)), returns_a,
                                  returns_b, stat, restart_prob);
  }
  return finish(stats, observed);
}

}  // namespace deltahedge
