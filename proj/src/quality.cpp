// Copyright 2026 The edgebench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "edgebench/quality.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>

#include <fmt/format.h>
#include <png.h>

#include "edgebench/csv.hpp"
#include "edgebench/error.hpp"
#include "edgebench/io.hpp"
#include "edgebench/stats.hpp"

namespace edgebench::quality {

BinaryMask::BinaryMask(std::size_t width, std::size_t height)
    : width_(width), height_(height), pixels_(width * height, 0) {
  if (width == 0 || height == 0) {
    throw Error(ErrorCode::kMalformedInput, "mask dimensions must be positive");
  }
}

BinaryMask::BinaryMask(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width == 0 || height == 0) {
    throw Error(ErrorCode::kMalformedInput, "mask dimensions must be positive");
  }
  if (pixels_.size() != width * height) {
    throw Error(ErrorCode::kMalformedInput,
                fmt::format("{}x{} mask needs {} pixels, got {}", width, height, width * height,
                            pixels_.size()));
  }
  for (auto& p : pixels_) p = p != 0 ? 1 : 0;
}

std::size_t BinaryMask::active() const {
  return static_cast<std::size_t>(std::count(pixels_.begin(), pixels_.end(), std::uint8_t{1}));
}

BinaryMask threshold_mask(std::size_t width, std::size_t height, std::span<const float> probabilities,
                          float threshold) {
  std::vector<std::uint8_t> px(probabilities.size());
  std::transform(probabilities.begin(), probabilities.end(), px.begin(),
                 [&](float p) { return static_cast<std::uint8_t>(p >= threshold ? 1 : 0); });
  return BinaryMask(width, height, std::move(px));
}

double dice(const BinaryMask& a, const BinaryMask& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error(ErrorCode::kDimensionMismatch,
                fmt::format("{}x{} vs {}x{}", a.width(), a.height(), b.width(), b.height()));
  }
  std::size_t both = 0, total = 0;
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    both += pa[i] & pb[i];
    total += pa[i] + pb[i];
  }
  if (total == 0) return 1.0;
  return 2.0 * static_cast<double>(both) / static_cast<double>(total);
}

QualityStats dice_pair_stats(std::span<const BinaryMask> reference,
                             std::span<const BinaryMask> candidate) {
  if (reference.size() != candidate.size()) {
    throw Error(ErrorCode::kLengthMismatch, fmt::format("{} reference masks vs {} candidate masks",
                                                        reference.size(), candidate.size()));
  }
  if (reference.empty()) throw Error(ErrorCode::kEmptyInput, "no masks to compare");
  std::vector<double> d;
  d.reserve(reference.size());
  for (std::size_t i = 0; i < reference.size(); ++i) d.push_back(dice(reference[i], candidate[i]));
  const auto ms = mean_std(d);
  return {ms.mean, ms.std, ms.count};
}

double classification_error(const ProbPair& reference, const ProbPair& candidate) {
  return std::max(std::abs(reference.p_glaucoma - candidate.p_glaucoma),
                  std::abs(reference.p_healthy - candidate.p_healthy));
}

QualityStats mean_classification_error(std::span<const std::pair<ProbPair, ProbPair>> pairs) {
  if (pairs.empty()) throw Error(ErrorCode::kEmptyInput, "no predictions to compare");
  std::vector<double> e;
  e.reserve(pairs.size());
  for (const auto& [ref, cand] : pairs) e.push_back(classification_error(ref, cand));
  const auto ms = mean_std(e);
  return {ms.mean, ms.std, ms.count};
}

Label predicted_label(const ProbPair& p) {
  return p.p_glaucoma >= p.p_healthy ? Label::kGlaucoma : Label::kHealthy;
}

bool predicted_label_agrees(const ProbPair& reference, const ProbPair& candidate) {
  return predicted_label(reference) == predicted_label(candidate);
}

ConfusionMatrix normalize_confusion(const ConfusionMatrix& counts) {
  ConfusionMatrix out{};
  for (std::size_t r = 0; r < 2; ++r) {
    if (counts[r][0] < 0.0 || counts[r][1] < 0.0) {
      throw Error(ErrorCode::kMalformedInput, "confusion counts must be non-negative");
    }
    const double sum = counts[r][0] + counts[r][1];
    if (!(sum > 0.0)) throw Error(ErrorCode::kZeroRow, fmt::format("row {} sums to zero", r));
    out[r][0] = counts[r][0] / sum;
    out[r][1] = counts[r][1] / sum;
  }
  return out;
}

// ---- Files ----------------------------------------------------------------

namespace {

class PgmReader {
 public:
  explicit PgmReader(std::string_view data) : data_(data) {}

  std::string_view token() {
    skip_space_and_comments();
    const auto start = pos_;
    while (pos_ < data_.size() && !std::isspace(static_cast<unsigned char>(data_[pos_]))) ++pos_;
    return data_.substr(start, pos_ - start);
  }

  std::size_t number(const std::filesystem::path& path) {
    long long v = 0;
    if (!parse_int(token(), v) || v <= 0) {
      throw Error(ErrorCode::kMalformedInput, "bad PGM header in " + path.string());
    }
    return static_cast<std::size_t>(v);
  }

  // Exactly one whitespace byte separates the header from raster data.
  std::string_view raster() const {
    return pos_ < data_.size() ? data_.substr(pos_ + 1) : std::string_view{};
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      if (std::isspace(static_cast<unsigned char>(data_[pos_]))) {
        ++pos_;
      } else if (data_[pos_] == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view data_;
  std::size_t pos_ = 0;
};

BinaryMask load_pgm(const std::string& bytes, const std::filesystem::path& path) {
  PgmReader reader(bytes);
  const auto magic = reader.token();
  if (magic != "P2" && magic != "P5") {
    throw Error(ErrorCode::kMalformedInput, "not a P2/P5 PGM: " + path.string());
  }
  const auto w = reader.number(path);
  const auto h = reader.number(path);
  const auto maxval = reader.number(path);
  if (maxval > 65535) throw Error(ErrorCode::kMalformedInput, "PGM maxval too large: " + path.string());
  std::vector<std::uint8_t> px(w * h);
  if (magic == "P2") {
    for (auto& p : px) {
      long long v = 0;
      if (!parse_int(reader.token(), v) || v < 0) {
        throw Error(ErrorCode::kMalformedInput, "truncated PGM raster: " + path.string());
      }
      p = v != 0 ? 1 : 0;
    }
  } else {
    const auto raster = reader.raster();
    const std::size_t bpp = maxval > 255 ? 2 : 1;
    if (raster.size() < px.size() * bpp) {
      throw Error(ErrorCode::kMalformedInput, "truncated PGM raster: " + path.string());
    }
    for (std::size_t i = 0; i < px.size(); ++i) {
      bool on = raster[i * bpp] != 0;
      if (bpp == 2) on = on || raster[i * bpp + 1] != 0;
      px[i] = on ? 1 : 0;
    }
  }
  return BinaryMask(w, h, std::move(px));
}

BinaryMask load_png(const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw Error(ErrorCode::kMalformedInput, fmt::format("cannot read PNG {}: {}", path.string(),
                                                        image.message));
  }
  image.format = PNG_FORMAT_GRAY;
  std::vector<std::uint8_t> px(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, px.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::kMalformedInput, fmt::format("cannot decode PNG {}: {}", path.string(), msg));
  }
  return BinaryMask(image.width, image.height, std::move(px));
}

bool is_mask_file(const std::filesystem::path& p) {
  auto ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".pgm" || ext == ".png";
}

std::set<std::string> mask_names(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kIoError, "not a directory: " + dir.string());
  }
  std::set<std::string> names;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && is_mask_file(entry.path())) {
      names.insert(entry.path().filename().string());
    }
  }
  return names;
}

}  // namespace

BinaryMask load_mask(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  if (bytes.size() >= 8 && bytes.compare(0, 8, "\x89PNG\r\n\x1a\n") == 0) return load_png(path);
  return load_pgm(bytes, path);
}

void save_mask_pgm(const BinaryMask& mask, const std::filesystem::path& path) {
  std::string out = fmt::format("P5\n{} {}\n255\n", mask.width(), mask.height());
  for (auto p : mask.pixels()) out.push_back(p ? static_cast<char>(255) : '\0');
  write_file_atomic(path, out);
}

MaskPairs load_mask_pairs(const std::filesystem::path& reference_dir,
                          const std::filesystem::path& candidate_dir) {
  const auto ref = mask_names(reference_dir);
  const auto cand = mask_names(candidate_dir);
  if (ref != cand) {
    std::vector<std::string> only;
    std::set_symmetric_difference(ref.begin(), ref.end(), cand.begin(), cand.end(),
                                  std::back_inserter(only));
    throw Error(ErrorCode::kLengthMismatch,
                fmt::format("masks not present in both directories: {}", fmt::join(only, ", ")));
  }
  MaskPairs pairs;
  for (const auto& name : ref) {
    pairs.names.push_back(name);
    pairs.reference.push_back(load_mask(reference_dir / name));
    pairs.candidate.push_back(load_mask(candidate_dir / name));
  }
  return pairs;
}

std::vector<NamedProb> parse_probabilities(std::string_view text) {
  const auto table = parse_csv(text);
  if (table.header.size() != 3 || table.header[0] != "image_id" ||
      table.header[1] != "p_glaucoma" || table.header[2] != "p_healthy") {
    throw Error(ErrorCode::kMalformedInput, fmt::format("expected header '{}'", kProbHeader));
  }
  std::vector<NamedProb> out;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const auto line = table.line_numbers[i];
    NamedProb p;
    if (row.size() != 3 || row[0].empty() || !parse_double(row[1], p.probs.p_glaucoma) ||
        !parse_double(row[2], p.probs.p_healthy)) {
      throw Error(ErrorCode::kMalformedInput, fmt::format("line {}: malformed probability row", line));
    }
    if (p.probs.p_glaucoma < 0.0 || p.probs.p_glaucoma > 1.0 || p.probs.p_healthy < 0.0 ||
        p.probs.p_healthy > 1.0) {
      throw Error(ErrorCode::kMalformedInput, fmt::format("line {}: probability outside [0, 1]", line));
    }
    p.image_id = row[0];
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<std::pair<ProbPair, ProbPair>> join_probabilities(const std::vector<NamedProb>& reference,
                                                               const std::vector<NamedProb>& candidate) {
  std::map<std::string, ProbPair> by_id;
  for (const auto& c : candidate) {
    if (!by_id.emplace(c.image_id, c.probs).second) {
      throw Error(ErrorCode::kMalformedInput, "duplicate image_id " + c.image_id);
    }
  }
  if (by_id.size() != reference.size()) {
    throw Error(ErrorCode::kLengthMismatch, fmt::format("{} reference vs {} candidate predictions",
                                                        reference.size(), candidate.size()));
  }
  std::vector<std::pair<ProbPair, ProbPair>> out;
  for (const auto& r : reference) {
    auto it = by_id.find(r.image_id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::kLengthMismatch, "no candidate prediction for " + r.image_id);
    }
    out.emplace_back(r.probs, it->second);
  }
  return out;
}

}  // namespace edgebench::quality
