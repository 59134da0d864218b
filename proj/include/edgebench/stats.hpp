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

#include <span>
#include <string>

namespace edgebench {

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // population form (divide by N)
  std::size_t count = 0;
};

// Two-pass mean and population standard deviation. Empty input yields a
// zero-count result; callers that need a non-empty sample check first.
MeanStd mean_std(std::span<const double> values);

// Rounds half away from zero at `decimals` places, treating the input as
// the decimal it was meant to be: 2.675 rounds to 2.68 even though its
// binary value is slightly below.
double round_half_away(double value, int decimals);

// Rounds with round_half_away, then prints exactly `decimals` places.
std::string format_fixed(double value, int decimals);

// "4.6 ± 0.2" style cell.
std::string format_pm(double mean, double std, int decimals);

// Strict parse of a decimal number; the whole field must be consumed.
bool parse_double(std::string_view text, double& out);
bool parse_int(std::string_view text, long long& out);

}  // namespace edgebench
