#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "deltahedge/mlp.hpp"

namespace deltahedge {

enum class LearnerKind { kClippedPG, kAdvantageAC, kDeterministicAC };

/// Fixed ordering used to break validation-metric ties.
inline constexpr LearnerKind kLearnerOrder[] = {
    LearnerKind::kClippedPG, LearnerKind::kAdvantageAC, LearnerKind::kDeterministicAC};

std::string learner_kind_name(LearnerKind kind);
LearnerKind learner_kind_from_name(const std::string& name);

enum class ActionSquash { kTanh, kSigmoid };

double apply_squash(ActionSquash squash, double raw);

/// Frozen observation statistics; fitted on the training window only.
struct Normalizer {
  std::vector<double> mean;
  std::vector<double> std;

  [[nodiscard]] std::vector<double> apply(std::span<const double> raw) const;

  bool operator==(const Normalizer&) const = default;
};

/// One deployable policy: actor net plus the fixed message head, as a
/// single flat parameter vector [net | log_std | W_msg | P_q].
///
/// W_msg (d_msg x last_hidden) projects the actor's final hidden layer to
/// the outgoing message; P_q (d_msg x query_dim) projects the agent's own
/// pre-context features to the attention query. Both are seeded at init
/// and not moved by training.
struct PolicyParams {
  NetSpec net;                 // [obs_dim, hidden..., 1]
  LearnerKind kind = LearnerKind::kClippedPG;
  ActionSquash squash = ActionSquash::kTanh;
  int d_msg = 0;               // 0 disables the message head
  int query_dim = 0;
  std::vector<double> flat;
  Normalizer normalizer;
  std::uint64_t seed = 0;
  std::string train_start;
  std::string train_end;

  [[nodiscard]] std::size_t actor_param_count() const { return net.param_count() + 1; }
  [[nodiscard]] std::size_t expected_flat_size() const {
    return actor_param_count() + static_cast<std::size_t>(d_msg) * net.last_hidden_dim() +
           static_cast<std::size_t>(d_msg) * query_dim;
  }

  /// Net weights plus the trailing log_std scalar; the slice training moves.
  [[nodiscard]] std::span<const double> actor() const {
    return {flat.data(), actor_param_count()};
  }
  [[nodiscard]] std::span<double> actor() {
    return {flat.data(), actor_param_count()};
  }
  [[nodiscard]] std::span<const double> net_params() const {
    return {flat.data(), net.param_count()};
  }
  [[nodiscard]] double log_std() const { return flat[net.param_count()]; }
  [[nodiscard]] std::span<const double> w_msg() const {
    return {flat.data() + actor_param_count(),
            static_cast<std::size_t>(d_msg) * net.last_hidden_dim()};
  }
  [[nodiscard]] std::span<const double> p_q() const {
    return {flat.data() + actor_param_count() + w_msg().size(),
            static_cast<std::size_t>(d_msg) * query_dim};
  }
};

/// Fresh policy with seeded net and message head, zero log_std.
PolicyParams init_policy(LearnerKind kind, ActionSquash squash, int obs_dim,
                         std::span<const int> hidden, int d_msg, int query_dim,
                         std::uint64_t seed);

/// Writes `base`.json (header) and `base`.bin (little-endian float64 flat
/// parameter array).
void save_policy(const PolicyParams& policy, const std::string& base);
PolicyParams load_policy(const std::string& base);

}  // namespace deltahedge
