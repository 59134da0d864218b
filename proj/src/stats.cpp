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

#include "edgebench/stats.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

namespace edgebench {

MeanStd mean_std(std::span<const double> values) {
  MeanStd out;
  out.count = values.size();
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) {
    const double d = v - out.mean;
    sq += d * d;
  }
  out.std = std::sqrt(sq / static_cast<double>(values.size()));
  return out;
}

double round_half_away(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  double scaled = value * scale;
  // Nudge by a relative 1e-9 so representation error does not flip a tie.
  scaled += std::copysign(std::abs(scaled) * 1e-9, scaled);
  return std::round(scaled) / scale;
}

std::string format_fixed(double value, int decimals) {
  double rounded = round_half_away(value, decimals);
  if (rounded == 0.0) rounded = 0.0;  // no "-0.0"
  return fmt::format("{:.{}f}", rounded, decimals);
}

std::string format_pm(double mean, double std, int decimals) {
  return format_fixed(mean, decimals) + " ± " + format_fixed(std, decimals);
}

bool parse_double(std::string_view text, double& out) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

bool parse_int(std::string_view text, long long& out) {
  if (text.empty()) return false;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace edgebench
