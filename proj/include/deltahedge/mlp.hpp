#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace deltahedge {

/// Feedforward net shape: layers = [in, hidden..., out], tanh on hidden
/// layers, linear output. At most two hidden layers of at most 64 units.
struct NetSpec {
  std::vector<int> layers;

  [[nodiscard]] int input_dim() const { return layers.front(); }
  [[nodiscard]] int output_dim() const { return layers.back(); }
  [[nodiscard]] int last_hidden_dim() const {
    return layers.size() > 2 ? layers[layers.size() - 2] : layers.front();
  }
  [[nodiscard]] std::size_t param_count() const;

  bool operator==(const NetSpec&) const = default;
};

/// Per-layer activations kept for backprop; acts[0] is the input and
/// acts.back() the linear output.
struct NetCache {
  std::vector<std::vector<double>> acts;
};

/// Scaled-uniform init, biases zero; deterministic in `seed`.
std::vector<double> init_net_params(const NetSpec& spec, std::uint64_t seed);

std::vector<double> net_forward(const NetSpec& spec, std::span<const double> params,
                                std::span<const double> input);

std::vector<double> net_forward_cached(const NetSpec& spec, std::span<const double> params,
                                       std::span<const double> input, NetCache& cache);

/// Backprop of upstream = dL/d(output). Accumulates dL/d(params) into
/// `grad_accum` (same layout/length as params) and returns dL/d(input).
std::vector<double> net_backward(const NetSpec& spec, std::span<const double> params,
                                 const NetCache& cache, std::span<const double> upstream,
                                 std::span<double> grad_accum);

}  // namespace deltahedge
