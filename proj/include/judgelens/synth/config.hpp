#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "judgelens/common.hpp"

namespace judgelens::synth {

enum class ChannelKind { binary, continuous };

// One observable feature channel linked to the latent margin v.
//  binary:      P(x=1 | v) = sigmoid(slope * v + offset)
//  continuous:  x | v ~ Normal(slope * v, noise_std^2)
struct FeatureChannel {
  std::string name;
  ChannelKind kind = ChannelKind::continuous;
  double slope = 0.0;      // a_k
  double offset = 0.0;     // d_k, binary channels only
  double noise_std = 1.0;  // s_k, continuous channels only
};

struct WorldConfig {
  std::vector<FeatureChannel> channels;
  double density_slope = 1.0;      // log density = -density_slope * v + eps
  double density_noise_std = 0.6;  // std of eps
  double ycont_scale = 3.0;        // y_cont = clamp(v / ycont_scale, -1, 1)
  int view_size = 32;
  double pixel_noise_std = 8.0;

  void validate() const {
    if (channels.empty()) throw ConfigError("world config: no feature channels");
    for (const auto& ch : channels) {
      if (!std::isfinite(ch.slope)) throw ConfigError("channel " + ch.name + ": slope not finite");
      if (ch.kind == ChannelKind::continuous && !(ch.noise_std > 0.0))
        throw ConfigError("channel " + ch.name + ": noise_std must be positive");
      if (ch.name.empty()) throw ConfigError("world config: unnamed channel");
    }
    if (!(density_noise_std >= 0.0)) throw ConfigError("density_noise_std must be nonnegative");
    if (!(ycont_scale > 0.0)) throw ConfigError("ycont_scale must be positive");
    if (view_size < 16) throw ConfigError("view_size must be at least 16");
    if (!(pixel_noise_std >= 0.0)) throw ConfigError("pixel_noise_std must be nonnegative");
  }

  int channel_index(const std::string& name) const {
    for (std::size_t i = 0; i < channels.size(); ++i)
      if (channels[i].name == name) return static_cast<int>(i);
    return -1;
  }
};

}  // namespace judgelens::synth
