#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "judgelens/core/records.hpp"
#include "judgelens/io/csv.hpp"
#include "judgelens/io/png.hpp"
#include "judgelens/rng.hpp"

namespace judgelens::core {

struct Manifest {
  std::filesystem::path images_dir;
  std::filesystem::path ground_truth;
  std::filesystem::path judgments;
  std::filesystem::path splits;  // optional, empty when absent
};

inline Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest: " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("invalid manifest JSON " + path.string() + ": " + e.what());
  }
  const auto base = path.parent_path();
  auto resolve = [&](const std::string& key, bool required) -> std::filesystem::path {
    if (!doc.contains(key)) {
      if (required) throw DataError("manifest missing key '" + key + "': " + path.string());
      return {};
    }
    std::filesystem::path p = doc.at(key).get<std::string>();
    return p.is_absolute() ? p : base / p;
  };
  Manifest m;
  m.images_dir = resolve("images_dir", true);
  m.ground_truth = resolve("ground_truth", true);
  m.judgments = resolve("judgments", true);
  m.splits = resolve("splits", false);
  return m;
}

inline void write_manifest(const std::filesystem::path& path, const Manifest& m) {
  nlohmann::ordered_json doc;
  const auto base = path.parent_path();
  auto rel = [&](const std::filesystem::path& p) {
    return p.lexically_proximate(base).generic_string();
  };
  doc["images_dir"] = rel(m.images_dir);
  doc["ground_truth"] = rel(m.ground_truth);
  doc["judgments"] = rel(m.judgments);
  if (!m.splits.empty()) doc["splits"] = rel(m.splits);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write manifest: " + path.string());
  out << doc.dump(2) << '\n';
}

struct Dataset {
  std::vector<SceneImage> images;           // sorted by image_id
  std::vector<GroundTruthRecord> truths;    // aligned with images
  std::vector<JudgmentRecord> judgments;    // sorted by (image_id, rater_id)
  DatasetSplit split;                       // empty when no splits file
  std::vector<std::string> warnings;

  std::size_t index_of(const std::string& image_id) const {
    const auto it = index_.find(image_id);
    if (it == index_.end()) throw DataError("unknown image_id: " + image_id);
    return it->second;
  }

  void rebuild_index() {
    index_.clear();
    for (std::size_t i = 0; i < truths.size(); ++i) index_[truths[i].image_id] = i;
  }

 private:
  std::unordered_map<std::string, std::size_t> index_;
};

inline std::vector<GroundTruthRecord> load_ground_truth(const std::filesystem::path& path) {
  const auto table = io::read_csv(path);
  const int c_id = table.require_column("image_id", path.string());
  const int c_ycont = table.require_column("y_cont", path.string());
  const int c_density = table.require_column("density", path.string());
  std::vector<GroundTruthRecord> records;
  records.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    GroundTruthRecord rec;
    rec.image_id = row[c_id];
    rec.y_cont = io::parse_double(row[c_ycont], path.string());
    rec.density = io::parse_double(row[c_density], path.string());
    rec.y = rec.y_cont > 0.0 ? 1 : 0;
    rec.validate();
    records.push_back(std::move(rec));
  }
  std::sort(records.begin(), records.end(),
            [](const auto& a, const auto& b) { return a.image_id < b.image_id; });
  for (std::size_t i = 1; i < records.size(); ++i)
    if (records[i].image_id == records[i - 1].image_id)
      throw DataError("duplicate image_id in ground truth: " + records[i].image_id);
  return records;
}

inline std::vector<JudgmentRecord> load_judgments(const std::filesystem::path& path) {
  const auto table = io::read_csv(path);
  const int c_id = table.require_column("image_id", path.string());
  const int c_rater = table.require_column("rater_id", path.string());
  const int c_vote = table.require_column("vote", path.string());
  std::vector<JudgmentRecord> records;
  records.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    JudgmentRecord rec;
    rec.image_id = row[c_id];
    rec.rater_id = row[c_rater];
    const long vote = io::parse_long(row[c_vote], path.string());
    if (vote != 0 && vote != 1)
      throw DataError("vote must be 0 or 1 for image " + rec.image_id + ", rater " +
                      rec.rater_id);
    rec.vote = static_cast<int>(vote);
    records.push_back(std::move(rec));
  }
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.image_id, a.rater_id) < std::tie(b.image_id, b.rater_id);
  });
  for (std::size_t i = 1; i < records.size(); ++i)
    if (records[i].image_id == records[i - 1].image_id &&
        records[i].rater_id == records[i - 1].rater_id)
      throw DataError("duplicate (image_id, rater_id) pair: " + records[i].image_id + ", " +
                      records[i].rater_id);
  return records;
}

inline SceneImage load_scene_image(const std::filesystem::path& images_dir,
                                   const std::string& image_id) {
  SceneImage img;
  img.image_id = image_id;
  for (int v = 0; v < 4; ++v) {
    const auto file = images_dir / (image_id + "_v" + std::to_string(v) + ".png");
    if (!std::filesystem::exists(file))
      throw DataError("missing image file: " + file.string());
    const auto gray = io::read_gray_png(file);
    if (v == 0) {
      img.height = gray.height;
      img.width = gray.width;
    } else if (gray.height != img.height || gray.width != img.width) {
      throw DataError("view dimensions differ across views for image " + image_id);
    }
    img.views[v] = std::move(gray.pixels);
  }
  img.validate();
  return img;
}

// Loads and cross-references a dataset. Judgments naming unknown images are a
// hard error listing the orphan ids; images with zero judgments produce a
// warning and are skipped by aggregation downstream.
inline Dataset load_dataset(const std::filesystem::path& manifest_path) {
  const Manifest manifest = load_manifest(manifest_path);
  Dataset ds;
  ds.truths = load_ground_truth(manifest.ground_truth);
  ds.judgments = load_judgments(manifest.judgments);

  std::unordered_set<std::string> known;
  known.reserve(ds.truths.size());
  for (const auto& t : ds.truths) known.insert(t.image_id);

  std::set<std::string> orphans;
  for (const auto& j : ds.judgments)
    if (!known.contains(j.image_id)) orphans.insert(j.image_id);
  if (!orphans.empty()) {
    std::string msg = "judgments reference unknown image ids:";
    for (const auto& id : orphans) msg += " " + id;
    throw DataError(msg);
  }

  ds.images.resize(ds.truths.size());
  parallel_for(ds.truths.size(), [&](std::size_t i) {
    ds.images[i] = load_scene_image(manifest.images_dir, ds.truths[i].image_id);
  });

  std::unordered_set<std::string> judged;
  for (const auto& j : ds.judgments) judged.insert(j.image_id);
  for (const auto& t : ds.truths)
    if (!judged.contains(t.image_id))
      ds.warnings.push_back("image " + t.image_id +
                            " has no judgments; excluded from aggregate analyses");

  if (!manifest.splits.empty()) {
    const auto table = io::read_csv(manifest.splits);
    const int c_id = table.require_column("image_id", manifest.splits.string());
    const int c_split = table.require_column("split", manifest.splits.string());
    for (const auto& row : table.rows) {
      if (!known.contains(row[c_id]))
        throw DataError("splits file references unknown image_id: " + row[c_id]);
      const auto split = parse_split(row[c_split]);
      if (!split) throw DataError("unknown split label '" + row[c_split] + "'");
      ds.split.assignment[row[c_id]] = *split;
    }
    for (const auto& t : ds.truths)
      if (!ds.split.assignment.contains(t.image_id))
        throw DataError("image " + t.image_id + " missing from splits file");
  }

  ds.rebuild_index();
  return ds;
}

// h_bar and rater counts per image, joined with ground truth. Only images
// with at least one judgment appear.
inline std::vector<AggregatedImageRecord> aggregate_judgments(
    const std::vector<JudgmentRecord>& judgments, const std::vector<GroundTruthRecord>& truths) {
  if (judgments.empty()) throw DataError("aggregate_judgments: no judgments");
  std::map<std::string, std::pair<int, int>> tally;  // id -> (votes_for_1, total)
  for (const auto& j : judgments) {
    auto& t = tally[j.image_id];
    t.first += j.vote;
    t.second += 1;
  }
  std::unordered_map<std::string, const GroundTruthRecord*> truth_by_id;
  for (const auto& t : truths) truth_by_id[t.image_id] = &t;

  std::vector<AggregatedImageRecord> out;
  out.reserve(tally.size());
  for (const auto& [id, counts] : tally) {
    const auto it = truth_by_id.find(id);
    if (it == truth_by_id.end()) throw DataError("judgments reference unknown image_id: " + id);
    AggregatedImageRecord rec;
    rec.image_id = id;
    rec.n_raters = counts.second;
    rec.h_bar = static_cast<double>(counts.first) / static_cast<double>(counts.second);
    rec.y_cont = it->second->y_cont;
    rec.y = it->second->y;
    rec.density = it->second->density;
    out.push_back(std::move(rec));
  }
  return out;
}

// Deterministic seeded partition. Sizes are the largest-remainder apportionment
// of proportions * N, so each is within one of its exact share.
inline DatasetSplit split_dataset(const std::vector<std::string>& image_ids,
                                  const std::array<double, 4>& proportions,
                                  std::uint64_t seed) {
  double sum = 0.0;
  for (const double p : proportions) {
    if (p < 0.0) throw ConfigError("split_dataset: negative proportion");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("split_dataset: proportions must sum to 1");

  std::vector<std::string> ids = image_ids;
  std::sort(ids.begin(), ids.end());
  Rng rng = Rng::keyed(seed, {hash_str("split")});
  rng.shuffle(ids);

  const std::size_t n = ids.size();
  std::array<std::size_t, 4> sizes{};
  std::array<double, 4> remainders{};
  std::size_t assigned = 0;
  for (std::size_t s = 0; s < 4; ++s) {
    const double exact = proportions[s] * static_cast<double>(n);
    sizes[s] = static_cast<std::size_t>(exact);
    remainders[s] = exact - static_cast<double>(sizes[s]);
    assigned += sizes[s];
  }
  std::array<std::size_t, 4> order = {0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
  for (std::size_t i = 0; assigned < n; ++i, ++assigned) ++sizes[order[i % 4]];

  DatasetSplit split;
  std::size_t cursor = 0;
  for (std::size_t s = 0; s < 4; ++s)
    for (std::size_t i = 0; i < sizes[s]; ++i)
      split.assignment[ids[cursor++]] = static_cast<Split>(s);
  return split;
}

inline void write_splits_csv(const std::filesystem::path& path, const DatasetSplit& split) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(split.assignment.size());
  for (const auto& [id, s] : split.assignment) rows.push_back({id, split_name(s)});
  io::write_csv(path, {"image_id", "split"}, rows);
}

}  // namespace judgelens::core
