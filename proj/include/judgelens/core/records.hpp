#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "judgelens/common.hpp"

namespace judgelens::core {

// A location is represented by four views (fixed viewing angles), each an
// 8-bit grayscale grid. The composite lays the views side by side.
struct SceneImage {
  std::string image_id;
  int height = 32;
  int width = 32;
  std::array<std::vector<std::uint8_t>, 4> views;  // row-major height x width

  void validate() const {
    if (height <= 0 || width <= 0) throw DataError("image " + image_id + ": bad dimensions");
    for (const auto& v : views)
      if (v.size() != static_cast<std::size_t>(height) * width)
        throw DataError("image " + image_id + ": view size mismatch");
  }

  std::uint8_t at(int view, int row, int col) const {
    return views[view][static_cast<std::size_t>(row) * width + col];
  }

  // height x (4*width), views concatenated left to right.
  std::vector<std::uint8_t> composite() const {
    std::vector<std::uint8_t> out(static_cast<std::size_t>(height) * width * 4);
    for (int v = 0; v < 4; ++v)
      for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c)
          out[static_cast<std::size_t>(r) * (4 * width) + v * width + c] = at(v, r, c);
    return out;
  }
};

struct GroundTruthRecord {
  std::string image_id;
  double y_cont = 0.0;  // vote-share difference in [-1, 1]
  int y = 0;            // 1 iff y_cont > 0
  double density = 1.0; // positive population-density covariate

  void validate() const {
    if (y_cont < -1.0 || y_cont > 1.0)
      throw DataError("image " + image_id + ": y_cont outside [-1, 1]");
    if (!(density > 0.0)) throw DataError("image " + image_id + ": density must be positive");
    if (y != (y_cont > 0.0 ? 1 : 0))
      throw DataError("image " + image_id + ": y inconsistent with y_cont");
  }
};

struct JudgmentRecord {
  std::string image_id;
  std::string rater_id;
  int vote = 0;  // 1 = positive-class guess
};

struct AggregatedImageRecord {
  std::string image_id;
  double h_bar = 0.0;  // mean vote
  int n_raters = 0;
  double y_cont = 0.0;
  int y = 0;
  double density = 1.0;
};

enum class Split { train = 0, validation = 1, test = 2, holdout = 3 };

inline constexpr std::array<Split, 4> kAllSplits = {Split::train, Split::validation, Split::test,
                                                    Split::holdout};

inline const char* split_name(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::validation: return "validation";
    case Split::test: return "test";
    case Split::holdout: return "holdout";
  }
  return "?";
}

inline std::optional<Split> parse_split(std::string_view name) {
  for (const Split s : kAllSplits)
    if (name == split_name(s)) return s;
  return std::nullopt;
}

struct DatasetSplit {
  std::map<std::string, Split> assignment;

  std::array<std::size_t, 4> counts() const {
    std::array<std::size_t, 4> c{};
    for (const auto& [id, s] : assignment) ++c[static_cast<std::size_t>(s)];
    return c;
  }

  Split of(const std::string& image_id) const {
    const auto it = assignment.find(image_id);
    if (it == assignment.end()) throw DataError("no split assignment for image " + image_id);
    return it->second;
  }
};

}  // namespace judgelens::core
