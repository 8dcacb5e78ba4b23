#include "deltahedge/policy.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "deltahedge/errors.hpp"
#include "deltahedge/rng.hpp"

namespace deltahedge {

std::string learner_kind_name(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::kClippedPG: return "clipped_pg";
    case LearnerKind::kAdvantageAC: return "advantage_ac";
    case LearnerKind::kDeterministicAC: return "deterministic_ac";
  }
  return "unknown";
}

LearnerKind learner_kind_from_name(const std::string& name) {
  if (name == "clipped_pg") return LearnerKind::kClippedPG;
  if (name == "advantage_ac") return LearnerKind::kAdvantageAC;
  if (name == "deterministic_ac") return LearnerKind::kDeterministicAC;
  throw ConfigError("unknown learner kind '" + name + "'");
}

double apply_squash(ActionSquash squash, double raw) {
  if (squash == ActionSquash::kTanh) return std::tanh(raw);
  return 1.0 / (1.0 + std::exp(-raw));
}

std::vector<double> Normalizer::apply(std::span<const double> raw) const {
  if (raw.size() != mean.size()) {
    throw std::invalid_argument("Normalizer: dimension mismatch");
  }
  std::vector<double> out(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) out[i] = (raw[i] - mean[i]) / std[i];
  return out;
}

PolicyParams init_policy(LearnerKind kind, ActionSquash squash, int obs_dim,
                         std::span<const int> hidden, int d_msg, int query_dim,
                         std::uint64_t seed) {
  PolicyParams p;
  p.kind = kind;
  p.squash = squash;
  p.d_msg = d_msg;
  p.query_dim = query_dim;
  p.seed = seed;
  p.net.layers.push_back(obs_dim);
  for (int h : hidden) p.net.layers.push_back(h);
  p.net.layers.push_back(1);

  p.flat = init_net_params(p.net, derive_seed(seed, 1));
  p.flat.push_back(0.0);  // log_std

  Rng head_rng(derive_seed(seed, 2));
  const std::size_t msg_n = static_cast<std::size_t>(d_msg) * p.net.last_hidden_dim();
  const std::size_t q_n = static_cast<std::size_t>(d_msg) * query_dim;
  const double msg_scale = d_msg > 0 ? 1.0 / std::sqrt(p.net.last_hidden_dim()) : 0.0;
  const double q_scale = query_dim > 0 ? 1.0 / std::sqrt(query_dim) : 0.0;
  for (std::size_t i = 0; i < msg_n; ++i) p.flat.push_back(head_rng.uniform(-msg_scale, msg_scale));
  for (std::size_t i = 0; i < q_n; ++i) p.flat.push_back(head_rng.uniform(-q_scale, q_scale));

  p.normalizer.mean.assign(obs_dim, 0.0);
  p.normalizer.std.assign(obs_dim, 1.0);
  return p;
}

namespace {

static_assert(std::endian::native == std::endian::little,
              "checkpoint sidecar assumes a little-endian host");

}  // namespace

void save_policy(const PolicyParams& policy, const std::string& base) {
  nlohmann::json header;
  header["architecture"] = policy.net.layers;
  header["activation"] = "tanh";
  header["learner"] = learner_kind_name(policy.kind);
  header["squash"] = policy.squash == ActionSquash::kTanh ? "tanh" : "sigmoid";
  header["d_msg"] = policy.d_msg;
  header["query_dim"] = policy.query_dim;
  header["param_count"] = policy.flat.size();
  header["seed"] = policy.seed;
  header["training_window"] = {{"start", policy.train_start}, {"end", policy.train_end}};
  header["normalizer"] = {{"mean", policy.normalizer.mean}, {"std", policy.normalizer.std}};

  std::ofstream json_out(base + ".json", std::ios::binary);
  if (!json_out) throw DataError(base + ".json: cannot write");
  json_out << header.dump(2) << '\n';

  std::ofstream bin_out(base + ".bin", std::ios::binary);
  if (!bin_out) throw DataError(base + ".bin: cannot write");
  bin_out.write(reinterpret_cast<const char*>(policy.flat.data()),
                static_cast<std::streamsize>(policy.flat.size() * sizeof(double)));
  if (!bin_out) throw DataError(base + ".bin: write failed");
}

PolicyParams load_policy(const std::string& base) {
  std::ifstream json_in(base + ".json");
  if (!json_in) throw DataError(base + ".json: cannot open checkpoint header");
  nlohmann::json header;
  try {
    json_in >> header;
  } catch (const std::exception& e) {
    throw DataError(base + ".json: " + e.what());
  }

  PolicyParams p;
  p.net.layers = header.at("architecture").get<std::vector<int>>();
  p.kind = learner_kind_from_name(header.at("learner").get<std::string>());
  p.squash =
      header.at("squash").get<std::string>() == "tanh" ? ActionSquash::kTanh : ActionSquash::kSigmoid;
  p.d_msg = header.at("d_msg").get<int>();
  p.query_dim = header.at("query_dim").get<int>();
  p.seed = header.at("seed").get<std::uint64_t>();
  p.train_start = header.at("training_window").at("start").get<std::string>();
  p.train_end = header.at("training_window").at("end").get<std::string>();
  p.normalizer.mean = header.at("normalizer").at("mean").get<std::vector<double>>();
  p.normalizer.std = header.at("normalizer").at("std").get<std::vector<double>>();

  const std::size_t expected = header.at("param_count").get<std::size_t>();
  std::ifstream bin_in(base + ".bin", std::ios::binary);
  if (!bin_in) throw DataError(base + ".bin: cannot open checkpoint parameters");
  p.flat.resize(expected);
  bin_in.read(reinterpret_cast<char*>(p.flat.data()),
              static_cast<std::streamsize>(expected * sizeof(double)));
  if (static_cast<std::size_t>(bin_in.gcount()) != expected * sizeof(double)) {
    throw DataError(base + ".bin: truncated parameter array");
  }
  if (p.flat.size() != p.expected_flat_size()) {
    throw DataError(base + ": parameter count does not match architecture descriptor");
  }
  return p;
}

}  // namespace deltahedge
