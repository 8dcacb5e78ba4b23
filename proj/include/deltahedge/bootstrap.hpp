#pragma once

#include <cstdint>
#include <span>

namespace deltahedge {

enum class BootstrapStat { kMeanExcess, kSharpeDiff };

struct BootstrapResult {
  double p_value = 1.0;
  double observed = 0.0;  // statistic on the original series
};

/// Expected block length ceil(n^(1/3)) for the stationary bootstrap.
int default_block_length(std::size_t n);

/// Two-sided stationary-block-bootstrap test of zero difference between
/// two aligned daily return series. Resamples are seeded independently
/// from `seed`, so the result is identical for any thread count; the
/// resample loop fans out across OpenMP threads when available.
BootstrapResult bootstrap_test(std::span<const double> returns_a,
                               std::span<const double> returns_b, BootstrapStat stat,
                               int resamples, int block_length, std::uint64_t seed);

/// Serial reference implementation; must produce bit-identical results to
/// bootstrap_test. Kept for testing and benchmarking.
BootstrapResult bootstrap_test_serial(std::span<const double> returns_a,
                                      std::span<const double> returns_b, BootstrapStat stat,
                                      int resamples, int block_length, std::uint64_t seed);

}  // namespace deltahedge
