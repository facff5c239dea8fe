#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "judgelens/common.hpp"
#include "judgelens/core/records.hpp"
#include "judgelens/rng.hpp"
#include "judgelens/synth/world.hpp"

namespace judgelens::synth {

// Simulated rater population. A rater j votes 1 on image i with probability
//   q_ij = sigmoid(sharpness * logit(p*_i) + bias . features_i + offset + eta_j)
// where eta_j ~ Normal(0, idiosyncrasy_std^2) is drawn once per rater.
// sharpness = 1 with zero bias gives probability matchers (q = p*);
// sharpness -> infinity gives Bayes-optimal thresholders.
struct RaterPopulationConfig {
  int raters_per_image = 200;
  double sharpness = 1.0;                 // gamma
  std::vector<double> feature_bias;       // b, aligned with the world's channels
  double calibration_offset = 0.0;        // c
  double idiosyncrasy_std = 0.0;          // tau

  void validate(const WorldConfig& world) const {
    if (raters_per_image <= 0) throw ConfigError("raters_per_image must be positive");
    if (!(sharpness >= 0.0)) throw ConfigError("sharpness must be nonnegative");
    if (!(idiosyncrasy_std >= 0.0)) throw ConfigError("idiosyncrasy_std must be nonnegative");
    if (!feature_bias.empty() && feature_bias.size() != world.channels.size())
      throw ConfigError("feature_bias length must match the world's channel count");
  }

  double bias_for(std::size_t channel) const {
    return channel < feature_bias.size() ? feature_bias[channel] : 0.0;
  }

  void set_bias(const WorldConfig& world, const std::string& channel_name, double value) {
    const int idx = world.channel_index(channel_name);
    if (idx < 0) throw ConfigError("set_bias: unknown channel " + channel_name);
    if (feature_bias.size() != world.channels.size())
      feature_bias.assign(world.channels.size(), 0.0);
    feature_bias[static_cast<std::size_t>(idx)] = value;
  }
};

inline std::string make_rater_id(int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "r%05d", index);
  return std::string(buf);
}

inline double rater_vote_probability(double p_star, const std::vector<double>& features,
                                     const RaterPopulationConfig& cfg, double eta) {
  const double p = std::clamp(p_star, 1e-12, 1.0 - 1e-12);
  double z = cfg.sharpness * logit(p) + cfg.calibration_offset + eta;
  for (std::size_t k = 0; k < features.size(); ++k) z += cfg.bias_for(k) * features[k];
  return sigmoid(z);
}

// Votes are Bernoulli(q_ij) with a per-(image, rater) stream keyed by
// (seed, image_id, rater_id), so any subset of the table is reproducible.
inline std::vector<core::JudgmentRecord> simulate_raters(
    const std::vector<SyntheticScene>& scenes, const WorldConfig& world,
    const RaterPopulationConfig& cfg, std::uint64_t seed) {
  cfg.validate(world);

  std::vector<double> eta(cfg.raters_per_image, 0.0);
  if (cfg.idiosyncrasy_std > 0.0) {
    for (int j = 0; j < cfg.raters_per_image; ++j) {
      Rng rng = Rng::keyed(seed, {hash_str("eta"), hash_str(make_rater_id(j))});
      eta[j] = rng.normal(0.0, cfg.idiosyncrasy_std);
    }
  }

  std::vector<core::JudgmentRecord> judgments(scenes.size() *
                                              static_cast<std::size_t>(cfg.raters_per_image));
  parallel_for(scenes.size(), [&](std::size_t i) {
    const auto& scene = scenes[i];
    for (int j = 0; j < cfg.raters_per_image; ++j) {
      const std::string rater_id = make_rater_id(j);
      const double q = rater_vote_probability(scene.p_star, scene.features, cfg, eta[j]);
      Rng rng = Rng::keyed(
          seed, {hash_str("vote"), hash_str(scene.truth.image_id), hash_str(rater_id)});
      auto& rec = judgments[i * cfg.raters_per_image + j];
      rec.image_id = scene.truth.image_id;
      rec.rater_id = rater_id;
      rec.vote = rng.bernoulli(q) ? 1 : 0;
    }
  });
  return judgments;
}

}  // namespace judgelens::synth
