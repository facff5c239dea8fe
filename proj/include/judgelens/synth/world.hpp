#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "judgelens/common.hpp"
#include "judgelens/core/records.hpp"
#include "judgelens/rng.hpp"
#include "judgelens/synth/config.hpp"
#include "judgelens/synth/render.hpp"

namespace judgelens::synth {

struct SyntheticScene {
  core::SceneImage image;
  std::vector<double> features;
  double latent = 0.0;  // v
  core::GroundTruthRecord truth;
  double p_star = 0.5;  // exact P(y = 1 | features)
};

namespace world_detail {

// 1201-point grid on [-6, 6]; v = 0 sits exactly at index 600, where the
// posterior mass is split.
inline constexpr int kGridPoints = 1201;
inline constexpr int kZeroIndex = 600;
inline constexpr double kGridLo = -6.0;
inline constexpr double kGridHi = 6.0;

inline double grid_v(int i) {
  return kGridLo + (kGridHi - kGridLo) * static_cast<double>(i) /
                       static_cast<double>(kGridPoints - 1);
}

inline double trapezoid(const std::vector<double>& f, int lo, int hi, int stride) {
  const double h = grid_v(lo + stride) - grid_v(lo);
  double sum = 0.5 * (f[lo] + f[hi]);
  for (int i = lo + stride; i < hi; i += stride) sum += f[i];
  return sum * h;
}

// Trapezoid sums at spacing h and 2h combined by one Richardson step. The
// plain split rule leaves an O(h^2) term from the interior v=0 endpoint that
// sits just above the required accuracy; the refinement removes it.
inline double refined_trapezoid(const std::vector<double>& f, int lo, int hi) {
  const double coarse = trapezoid(f, lo, hi, 2);
  const double fine = trapezoid(f, lo, hi, 1);
  return (4.0 * fine - coarse) / 3.0;
}

inline void log_likelihood_grid(const std::vector<double>& features, const WorldConfig& config,
                                std::vector<double>& out) {
  out.assign(kGridPoints, 0.0);
  for (std::size_t k = 0; k < config.channels.size(); ++k) {
    const auto& ch = config.channels[k];
    const double x = features[k];
    for (int i = 0; i < kGridPoints; ++i) {
      const double v = grid_v(i);
      if (ch.kind == ChannelKind::binary) {
        const double z = ch.slope * v + ch.offset;
        // log sigma(z) when x = 1, log(1 - sigma(z)) when x = 0
        const double softplus = z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
        out[i] += (x >= 0.5 ? z - softplus : -softplus);
      } else {
        const double d = (x - ch.slope * v) / ch.noise_std;
        out[i] += -0.5 * d * d;
      }
    }
  }
}

}  // namespace world_detail

// Exact posterior P(v > 0 | features) under the standard normal prior.
inline double posterior_oracle(const std::vector<double>& features, const WorldConfig& config) {
  if (features.size() != config.channels.size())
    throw ConfigError("posterior_oracle: feature vector does not match config channels");
  using namespace world_detail;

  std::vector<double> density;
  log_likelihood_grid(features, config, density);
  double max_ll = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGridPoints; ++i) {
    const double v = grid_v(i);
    density[i] += -0.5 * v * v;  // log prior up to a constant
    max_ll = std::max(max_ll, density[i]);
  }
  if (!std::isfinite(max_ll)) throw NumericError("posterior_oracle: zero likelihood mass");
  for (int i = 0; i < kGridPoints; ++i) density[i] = std::exp(density[i] - max_ll);

  const double upper = refined_trapezoid(density, kZeroIndex, kGridPoints - 1);
  const double lower = refined_trapezoid(density, 0, kZeroIndex);
  const double total = upper + lower;
  if (!(total > 0.0) || !std::isfinite(total))
    throw NumericError("posterior_oracle: zero likelihood mass");
  return clamp01(upper / total);
}

// Normalized posterior density over the quadrature grid; exposed for the
// quadrature self-checks.
inline std::vector<double> posterior_density_grid(const std::vector<double>& features,
                                                  const WorldConfig& config) {
  using namespace world_detail;
  std::vector<double> density;
  log_likelihood_grid(features, config, density);
  double max_ll = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGridPoints; ++i) {
    const double v = grid_v(i);
    density[i] += -0.5 * v * v;
    max_ll = std::max(max_ll, density[i]);
  }
  for (int i = 0; i < kGridPoints; ++i) density[i] = std::exp(density[i] - max_ll);
  const double total = refined_trapezoid(density, 0, kZeroIndex) +
                       refined_trapezoid(density, kZeroIndex, kGridPoints - 1);
  for (auto& d : density) d /= total;
  return density;
}

inline double quadrature_mass(const std::vector<double>& density_grid) {
  using namespace world_detail;
  return refined_trapezoid(density_grid, 0, kZeroIndex) +
         refined_trapezoid(density_grid, kZeroIndex, kGridPoints - 1);
}

inline std::string make_image_id(std::size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "img%06zu", index);
  return std::string(buf);
}

// I.i.d. scenes, deterministic in (config, seed). Latent, features, density,
// and pixel noise draw from streams keyed by the image index, so scene i is
// bit-identical no matter how many scenes are generated or on which thread.
inline std::vector<SyntheticScene> generate_world(const WorldConfig& config,
                                                  std::size_t n_images, std::uint64_t seed) {
  config.validate();
  std::vector<SyntheticScene> scenes(n_images);
  parallel_for(n_images, [&](std::size_t i) {
    SyntheticScene& scene = scenes[i];
    Rng rng = Rng::keyed(seed, {hash_str("scene"), i});
    scene.latent = rng.normal();
    scene.features.resize(config.channels.size());
    for (std::size_t k = 0; k < config.channels.size(); ++k) {
      const auto& ch = config.channels[k];
      if (ch.kind == ChannelKind::binary) {
        scene.features[k] =
            rng.bernoulli(sigmoid(ch.slope * scene.latent + ch.offset)) ? 1.0 : 0.0;
      } else {
        scene.features[k] = ch.slope * scene.latent + ch.noise_std * rng.normal();
      }
    }
    scene.truth.image_id = make_image_id(i);
    scene.truth.y_cont = std::clamp(scene.latent / config.ycont_scale, -1.0, 1.0);
    scene.truth.y = scene.truth.y_cont > 0.0 ? 1 : 0;
    scene.truth.density =
        std::exp(-config.density_slope * scene.latent + config.density_noise_std * rng.normal());
    scene.p_star = posterior_oracle(scene.features, config);
    scene.image = render_scene(config, scene.features, Rng::keyed(seed, {hash_str("render"), i}));
    scene.image.image_id = scene.truth.image_id;
  });
  return scenes;
}

}  // namespace judgelens::synth
