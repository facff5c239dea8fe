#pragma once

#include <string>
#include <vector>

#include "judgelens/common.hpp"
#include "judgelens/synth/raters.hpp"
#include "judgelens/synth/world.hpp"

namespace judgelens::synth {

struct WorldPreset {
  std::string name;
  WorldConfig world;
  RaterPopulationConfig raters;
};

namespace preset_detail {

// Link constants for the single-feature car world, solved so that the exact
// posterior gives P(y=1 | car) = 0.7 and P(y=1 | no car) = 0.2 (feature
// prevalence 0.6).
inline constexpr double kCarSlope = 1.680334188515346;
inline constexpr double kCarOffset = 0.605578233169452;

inline WorldConfig street_world(double informativeness) {
  WorldConfig w;
  w.channels = {
      {"truck", ChannelKind::binary, 1.2 * informativeness, -0.4, 1.0},
      {"sky_openness", ChannelKind::continuous, 0.9 * informativeness, 0.0, 0.7},
      {"density_bars", ChannelKind::continuous, -1.1 * informativeness, 0.0, 0.9},
      {"flag", ChannelKind::binary, 0.0, -1.1, 1.0},  // uninformative distractor
  };
  w.density_slope = informativeness;
  return w;
}

}  // namespace preset_detail

inline std::vector<std::string> preset_names() {
  return {"default_biased", "bayes_optimal", "null_world", "car_world"};
}

// default_biased: informative features, probability-matching raters with a
//   truck and open-sky bias plus a positive-class calibration offset and
//   rater idiosyncrasy.
// bayes_optimal: same world, raters vote the Bayes decision.
// null_world: uninformative features, coin-flip raters.
// car_world: one binary feature, Bayes-optimal raters; the analytic
//   counterexample for difference-model diagnostics.
inline WorldPreset preset_world(const std::string& name) {
  WorldPreset preset;
  preset.name = name;
  if (name == "default_biased") {
    preset.world = preset_detail::street_world(1.0);
    preset.raters.raters_per_image = 200;
    preset.raters.sharpness = 1.0;
    preset.raters.calibration_offset = 0.4;
    preset.raters.idiosyncrasy_std = 0.5;
    preset.raters.set_bias(preset.world, "truck", 1.5);
    preset.raters.set_bias(preset.world, "sky_openness", 0.5);
  } else if (name == "bayes_optimal") {
    preset.world = preset_detail::street_world(1.0);
    preset.raters.raters_per_image = 200;
    preset.raters.sharpness = 1e6;
    preset.raters.calibration_offset = 0.0;
    preset.raters.idiosyncrasy_std = 0.0;
  } else if (name == "null_world") {
    preset.world = preset_detail::street_world(0.0);
    preset.raters.raters_per_image = 200;
    preset.raters.sharpness = 1.0;
  } else if (name == "car_world") {
    preset.world.channels = {
        {"car", ChannelKind::binary, preset_detail::kCarSlope, preset_detail::kCarOffset, 1.0}};
    preset.world.density_slope = 0.0;
    preset.raters.raters_per_image = 200;
    preset.raters.sharpness = 1e6;
  } else {
    throw ConfigError("unknown preset world: " + name);
  }
  return preset;
}

}  // namespace judgelens::synth
