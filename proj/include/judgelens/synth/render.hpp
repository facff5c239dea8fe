#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "judgelens/core/records.hpp"
#include "judgelens/rng.hpp"
#include "judgelens/synth/config.hpp"

namespace judgelens::synth {

// Pixel rectangle, end-exclusive bounds.
struct PixelRegion {
  std::string name;
  int view = 0;
  int row0 = 0, row1 = 0;
  int col0 = 0, col1 = 0;

  bool intersects(int other_view, int r0, int r1, int c0, int c1) const {
    return other_view == view && r0 < row1 && row0 < r1 && c0 < col1 && col0 < c1;
  }
};

namespace render_detail {

inline constexpr int kBaseIntensity = 80;
inline constexpr int kSkyBaseline = 128;
inline constexpr double kSkyGain = 30.0;
inline constexpr int kVehicleIntensity = 235;
inline constexpr int kBarIntensity = 190;
inline constexpr int kFlagIntensity = 240;
inline constexpr int kPoleIntensity = 220;
inline constexpr int kMaxBars = 9;

// 6x4 vehicle template: cab, body, wheels.
inline constexpr int kVehicleRows = 4;
inline constexpr int kVehicleCols = 6;
inline constexpr int kVehicleTemplate[kVehicleRows][kVehicleCols] = {
    {0, 0, 0, 1, 1, 0},
    {1, 1, 1, 1, 1, 0},
    {1, 1, 1, 1, 1, 1},
    {0, 1, 0, 0, 1, 0},
};

inline int scaled(int coord32, int view_size) { return coord32 * view_size / 32; }

struct Geometry {
  int sky_rows;              // rows [0, sky_rows) in every view
  int vehicle_row0, vehicle_col0;  // anchor in view 0
  int bar_row0, bar_row1;    // bars span these rows in views 1 and 2
  int bar_width, bar_stride, bar_col0;
  int flag_pole_col, flag_row0, flag_pole_row1, flag_rect_row1, flag_rect_col1;

  explicit Geometry(int view_size) {
    sky_rows = std::max(1, scaled(4, view_size));
    vehicle_row0 = scaled(20, view_size);
    vehicle_col0 = scaled(8, view_size);
    bar_row0 = scaled(8, view_size);
    bar_row1 = scaled(28, view_size);
    bar_width = std::max(1, scaled(2, view_size));
    bar_stride = std::max(bar_width + 1, scaled(6, view_size));
    bar_col0 = scaled(3, view_size);
    flag_pole_col = scaled(24, view_size);
    flag_row0 = scaled(6, view_size);
    flag_pole_row1 = scaled(14, view_size);
    flag_rect_row1 = scaled(9, view_size);
    flag_rect_col1 = scaled(29, view_size);
  }
};

inline int bar_count(double feature_value) {
  const int count = static_cast<int>(std::lround(4.0 + feature_value));
  return std::clamp(count, 0, kMaxBars);
}

inline bool is_vehicle_channel(const std::string& name) {
  return name == "truck" || name == "car";
}

}  // namespace render_detail

// Deterministic glyph rendering of a feature vector, plus additive pixel
// noise drawn from the supplied stream. The noise stream does not depend on
// the features, so toggling one feature changes pixels only inside that
// feature's glyph region.
inline core::SceneImage render_scene(const WorldConfig& config,
                                     const std::vector<double>& features, Rng rng) {
  using namespace render_detail;
  if (features.size() != config.channels.size())
    throw ConfigError("render_scene: feature vector does not match config channels");
  const int size = config.view_size;
  const Geometry geo(size);

  core::SceneImage img;
  img.height = size;
  img.width = size;
  for (auto& view : img.views)
    view.assign(static_cast<std::size_t>(size) * size, kBaseIntensity);

  auto put = [&](int view, int row, int col, int value) {
    if (row < 0 || row >= size || col < 0 || col >= size) return;
    img.views[view][static_cast<std::size_t>(row) * size + col] =
        static_cast<std::uint8_t>(std::clamp(value, 0, 255));
  };

  for (std::size_t k = 0; k < config.channels.size(); ++k) {
    const auto& ch = config.channels[k];
    const double x = features[k];
    if (ch.name == "sky_openness") {
      const int intensity =
          std::clamp(static_cast<int>(std::lround(kSkyBaseline + kSkyGain * x)), 0, 255);
      for (int v = 0; v < 4; ++v)
        for (int r = 0; r < geo.sky_rows; ++r)
          for (int c = 0; c < size; ++c) put(v, r, c, intensity);
    } else if (is_vehicle_channel(ch.name)) {
      if (x >= 0.5) {
        const int rscale = std::max(1, size / 32), cscale = std::max(1, size / 32);
        for (int r = 0; r < kVehicleRows * rscale; ++r)
          for (int c = 0; c < kVehicleCols * cscale; ++c)
            if (kVehicleTemplate[r / rscale][c / cscale])
              put(0, geo.vehicle_row0 + r, geo.vehicle_col0 + c, kVehicleIntensity);
      }
    } else if (ch.name == "density_bars") {
      const int count = bar_count(x);
      const int in_view1 = (count + 1) / 2;
      for (int b = 0; b < count; ++b) {
        const int view = b < in_view1 ? 1 : 2;
        const int slot = b < in_view1 ? b : b - in_view1;
        const int col = geo.bar_col0 + slot * geo.bar_stride;
        for (int r = geo.bar_row0; r < geo.bar_row1; ++r)
          for (int w = 0; w < geo.bar_width; ++w) put(view, r, col + w, kBarIntensity);
      }
    } else if (ch.name == "flag") {
      if (x >= 0.5) {
        for (int r = geo.flag_row0; r < geo.flag_pole_row1; ++r)
          put(3, r, geo.flag_pole_col, kPoleIntensity);
        for (int r = geo.flag_row0; r < geo.flag_rect_row1; ++r)
          for (int c = geo.flag_pole_col + 1; c < geo.flag_rect_col1; ++c)
            put(3, r, c, kFlagIntensity);
      }
    }
    // Channels with no glyph rule contribute nothing to the rendering.
  }

  if (config.pixel_noise_std > 0.0) {
    for (int v = 0; v < 4; ++v)
      for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c) {
          const double noise = rng.normal(0.0, config.pixel_noise_std);
          const int base = img.views[v][static_cast<std::size_t>(r) * size + c];
          put(v, r, c, static_cast<int>(std::lround(base + noise)));
        }
  }
  return img;
}

// Pixel regions occupied by each glyph-bearing channel; used by occlusion
// geometry checks and the patch reports.
inline std::vector<PixelRegion> glyph_regions(const WorldConfig& config) {
  using namespace render_detail;
  const int size = config.view_size;
  const Geometry geo(size);
  std::vector<PixelRegion> regions;
  for (const auto& ch : config.channels) {
    if (ch.name == "sky_openness") {
      for (int v = 0; v < 4; ++v)
        regions.push_back({ch.name, v, 0, geo.sky_rows, 0, size});
    } else if (is_vehicle_channel(ch.name)) {
      const int scale = std::max(1, size / 32);
      regions.push_back({ch.name, 0, geo.vehicle_row0, geo.vehicle_row0 + kVehicleRows * scale,
                         geo.vehicle_col0, geo.vehicle_col0 + kVehicleCols * scale});
    } else if (ch.name == "density_bars") {
      const int max_per_view = (kMaxBars + 1) / 2;
      const int col1 = geo.bar_col0 + (max_per_view - 1) * geo.bar_stride + geo.bar_width;
      regions.push_back({ch.name, 1, geo.bar_row0, geo.bar_row1, geo.bar_col0, col1});
      regions.push_back({ch.name, 2, geo.bar_row0, geo.bar_row1, geo.bar_col0, col1});
    } else if (ch.name == "flag") {
      regions.push_back({ch.name, 3, geo.flag_row0, geo.flag_pole_row1, geo.flag_pole_col,
                         geo.flag_rect_col1});
    }
  }
  return regions;
}

// Hand-coded template detector for the vehicle glyph; test oracle for
// rendering recoverability.
inline bool detect_vehicle(const core::SceneImage& img) {
  using namespace render_detail;
  const int size = img.width;
  const Geometry geo(size);
  const int scale = std::max(1, size / 32);
  double on_sum = 0.0, off_sum = 0.0;
  int on_count = 0, off_count = 0;
  for (int r = 0; r < kVehicleRows * scale; ++r)
    for (int c = 0; c < kVehicleCols * scale; ++c) {
      const int row = geo.vehicle_row0 + r, col = geo.vehicle_col0 + c;
      if (row >= size || col >= size) continue;
      const double value = img.at(0, row, col);
      if (kVehicleTemplate[r / scale][c / scale]) {
        on_sum += value;
        ++on_count;
      } else {
        off_sum += value;
        ++off_count;
      }
    }
  if (on_count == 0 || off_count == 0) return false;
  return (on_sum / on_count) - (off_sum / off_count) > 0.5 * (kVehicleIntensity - kBaseIntensity);
}

}  // namespace judgelens::synth
