#include "deltahedge/mlp.hpp"

#include <cmath>
#include <stdexcept>

#include "deltahedge/rng.hpp"

namespace deltahedge {

std::size_t NetSpec::param_count() const {
  std::size_t n = 0;
  for (std::size_t l = 1; l < layers.size(); ++l) {
    n += static_cast<std::size_t>(layers[l]) * layers[l - 1] + layers[l];
  }
  return n;
}

std::vector<double> init_net_params(const NetSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> params;
  params.reserve(spec.param_count());
  for (std::size_t l = 1; l < spec.layers.size(); ++l) {
    const int fan_in = spec.layers[l - 1];
    const double scale = 1.0 / std::sqrt(static_cast<double>(fan_in));
    const int rows = spec.layers[l];
    for (int i = 0; i < rows * fan_in; ++i) params.push_back(rng.uniform(-scale, scale));
    for (int i = 0; i < rows; ++i) params.push_back(0.0);
  }
  return params;
}

std::vector<double> net_forward_cached(const NetSpec& spec, std::span<const double> params,
                                       std::span<const double> input, NetCache& cache) {
  if (input.size() != static_cast<std::size_t>(spec.input_dim())) {
    throw std::invalid_argument("net_forward: input dimension mismatch");
  }
  if (params.size() != spec.param_count()) {
    throw std::invalid_argument("net_forward: parameter count mismatch");
  }

  cache.acts.assign(spec.layers.size(), {});
  cache.acts[0].assign(input.begin(), input.end());

  std::size_t offset = 0;
  for (std::size_t l = 1; l < spec.layers.size(); ++l) {
    const int in_dim = spec.layers[l - 1];
    const int out_dim = spec.layers[l];
    const double* w = params.data() + offset;
    const double* b = w + static_cast<std::size_t>(out_dim) * in_dim;
    const auto& prev = cache.acts[l - 1];
    auto& cur = cache.acts[l];
    cur.resize(out_dim);
    const bool last = l + 1 == spec.layers.size();
    for (int i = 0; i < out_dim; ++i) {
      double z = b[i];
      const double* wi = w + static_cast<std::size_t>(i) * in_dim;
      for (int j = 0; j < in_dim; ++j) z += wi[j] * prev[j];
      cur[i] = last ? z : std::tanh(z);
    }
    offset += static_cast<std::size_t>(out_dim) * in_dim + out_dim;
  }
  return cache.acts.back();
}

std::vector<double> net_forward(const NetSpec& spec, std::span<const double> params,
                                std::span<const double> input) {
  NetCache cache;
  return net_forward_cached(spec, params, input, cache);
}

std::vector<double> net_backward(const NetSpec& spec, std::span<const double> params,
                                 const NetCache& cache, std::span<const double> upstream,
                                 std::span<double> grad_accum) {
  if (grad_accum.size() != spec.param_count()) {
    throw std::invalid_argument("net_backward: gradient buffer size mismatch");
  }

  // Parameter offsets per layer.
  std::vector<std::size_t> offsets(spec.layers.size(), 0);
  std::size_t offset = 0;
  for (std::size_t l = 1; l < spec.layers.size(); ++l) {
    offsets[l] = offset;
    offset += static_cast<std::size_t>(spec.layers[l]) * spec.layers[l - 1] + spec.layers[l];
  }

  std::vector<double> delta(upstream.begin(), upstream.end());
  for (std::size_t l = spec.layers.size() - 1; l >= 1; --l) {
    const int in_dim = spec.layers[l - 1];
    const int out_dim = spec.layers[l];
    const bool last = l + 1 == spec.layers.size();
    const auto& out_act = cache.acts[l];
    const auto& in_act = cache.acts[l - 1];

    // delta currently holds dL/d(activation); convert to dL/d(pre-activation).
    if (!last) {
      for (int i = 0; i < out_dim; ++i) delta[i] *= 1.0 - out_act[i] * out_act[i];
    }

    double* gw = grad_accum.data() + offsets[l];
    double* gb = gw + static_cast<std::size_t>(out_dim) * in_dim;
    const double* w = params.data() + offsets[l];

    std::vector<double> prev_delta(in_dim, 0.0);
    for (int i = 0; i < out_dim; ++i) {
      const double di = delta[i];
      double* gwi = gw + static_cast<std::size_t>(i) * in_dim;
      const double* wi = w + static_cast<std::size_t>(i) * in_dim;
      for (int j = 0; j < in_dim; ++j) {
        gwi[j] += di * in_act[j];
        prev_delta[j] += di * wi[j];
      }
      gb[i] += di;
    }
    delta = std::move(prev_delta);
  }
  return delta;
}

}  // namespace deltahedge
