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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace edgebench::quality {

/// Row-major binary grid; nonzero input pixels are stored as 1.
class BinaryMask {
 public:
  BinaryMask(std::size_t width, std::size_t height);
  BinaryMask(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  bool at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x] != 0; }
  void set(std::size_t x, std::size_t y, bool on) { pixels_[y * width_ + x] = on ? 1 : 0; }
  std::size_t active() const;
  std::span<const std::uint8_t> pixels() const { return pixels_; }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> pixels_;
};

/// Binarizes a probability map: pixel is active when p >= threshold.
BinaryMask threshold_mask(std::size_t width, std::size_t height, std::span<const float> probabilities,
                          float threshold = 0.5f);

/// 2|A ∩ B| / (|A| + |B|); two empty masks agree perfectly (1.0).
/// Throws DimensionMismatch.
double dice(const BinaryMask& a, const BinaryMask& b);

struct QualityStats {
  double mean = 0.0;
  double std = 0.0;  // population
  std::size_t count = 0;
};

/// Per-image Dice between reference and candidate, aggregated.
/// Throws EmptyInput, LengthMismatch, DimensionMismatch.
QualityStats dice_pair_stats(std::span<const BinaryMask> reference,
                             std::span<const BinaryMask> candidate);

struct ProbPair {
  double p_glaucoma = 0.0;
  double p_healthy = 0.0;
};

/// max(|Δp_glaucoma|, |Δp_healthy|).
double classification_error(const ProbPair& reference, const ProbPair& candidate);

QualityStats mean_classification_error(std::span<const std::pair<ProbPair, ProbPair>> pairs);

/// Argmax agreement; equal probabilities classify as glaucoma.
bool predicted_label_agrees(const ProbPair& reference, const ProbPair& candidate);

enum class Label { kGlaucoma = 0, kHealthy = 1 };
Label predicted_label(const ProbPair& p);

/// Rows are the true label, columns the predicted one, both ordered
/// {glaucoma, healthy}.
using ConfusionMatrix = std::array<std::array<double, 2>, 2>;

/// Divides each row by its sum. Throws ZeroRow.
ConfusionMatrix normalize_confusion(const ConfusionMatrix& counts);

// ---- Files ----------------------------------------------------------------

/// Reads a PGM (P2 or P5, 8 or 16 bit) or single-channel PNG mask.
BinaryMask load_mask(const std::filesystem::path& path);

/// Writes a binary P5 PGM with active pixels at 255.
void save_mask_pgm(const BinaryMask& mask, const std::filesystem::path& path);

struct MaskPairs {
  std::vector<std::string> names;
  std::vector<BinaryMask> reference;
  std::vector<BinaryMask> candidate;
};

/// Loads masks present in both directories, matched by filename and sorted
/// by name. Files present on one side only are an error (LengthMismatch).
MaskPairs load_mask_pairs(const std::filesystem::path& reference_dir,
                          const std::filesystem::path& candidate_dir);

inline constexpr std::string_view kProbHeader = "image_id,p_glaucoma,p_healthy";

struct NamedProb {
  std::string image_id;
  ProbPair probs;
};

std::vector<NamedProb> parse_probabilities(std::string_view text);

/// Joins two probability files on image_id, in reference order.
/// Throws LengthMismatch when the id sets differ.
std::vector<std::pair<ProbPair, ProbPair>> join_probabilities(const std::vector<NamedProb>& reference,
                                                               const std::vector<NamedProb>& candidate);

}  // namespace edgebench::quality
