#pragma once

#include <vector>

#include "judgelens/common.hpp"
#include "judgelens/core/records.hpp"

namespace judgelens::learners {

// Per view, the mean intensity of each cell of a grid x grid partition,
// concatenated across the 4 views and scaled to [0, 1]. Views whose size is
// not divisible by the grid are padded by edge replication.
inline std::vector<double> extract_patch_features(const core::SceneImage& image, int grid = 8) {
  if (grid <= 0) throw ConfigError("extract_patch_features: grid must be positive");
  const int height = image.height, width = image.width;
  const int cell_h = (height + grid - 1) / grid;
  const int cell_w = (width + grid - 1) / grid;

  std::vector<double> features;
  features.reserve(static_cast<std::size_t>(4) * grid * grid);
  for (int v = 0; v < 4; ++v) {
    for (int gr = 0; gr < grid; ++gr) {
      for (int gc = 0; gc < grid; ++gc) {
        double sum = 0.0;
        for (int r = gr * cell_h; r < (gr + 1) * cell_h; ++r) {
          const int rr = r < height ? r : height - 1;
          for (int c = gc * cell_w; c < (gc + 1) * cell_w; ++c) {
            const int cc = c < width ? c : width - 1;
            sum += image.at(v, rr, cc);
          }
        }
        features.push_back(sum / (static_cast<double>(cell_h) * cell_w * 255.0));
      }
    }
  }
  return features;
}

inline std::vector<std::vector<double>> extract_patch_features(
    const std::vector<core::SceneImage>& images, int grid = 8) {
  std::vector<std::vector<double>> out(images.size());
  parallel_for(images.size(), [&](std::size_t i) {
    out[i] = extract_patch_features(images[i], grid);
  });
  return out;
}

}  // namespace judgelens::learners
