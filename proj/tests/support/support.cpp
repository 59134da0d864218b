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

#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "edgebench/error.hpp"
#include "edgebench/quality.hpp"
#include "edgebench/stats.hpp"
#include "edgebench/timing.hpp"

namespace edgebench::testing {

namespace fs = std::filesystem;

fs::path fixture_path(std::string_view name) { return fs::path(EDGEBENCH_TEST_FIXTURES) / name; }
fs::path golden_path(std::string_view name) { return fs::path(EDGEBENCH_TEST_GOLDEN) / name; }
fs::path mock_runner_path() { return fs::path(EDGEBENCH_MOCK_RUNNER); }

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TempDir::TempDir() {
  static std::mt19937_64 rng(std::random_device{}());
  for (;;) {
    path_ = fs::temp_directory_path() / fmt::format("edgebench-test-{:016x}", rng());
    if (fs::create_directory(path_)) break;
  }
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

trace::PowerTrace build_trace(const std::vector<Segment>& segments, double noise_w, std::mt19937_64* rng) {
  trace::PowerTrace out;
  std::uniform_real_distribution<double> noise(-noise_w, noise_w);
  std::size_t k = 0;
  for (const auto& seg : segments) {
    for (std::size_t i = 0; i < seg.samples; ++i, ++k) {
      double w = seg.watts;
      if (rng != nullptr && noise_w > 0.0) w += noise(*rng);
      out.samples.push_back({static_cast<double>(k), 5.0, w / 5.0});
    }
  }
  return out;
}

// Load levels stay below floor + 0.5 * (4.6 - floor) = 3.3 W, so with any
// inference level in [4.6, 6.0] a load never reads as inference.
KnownTrace random_experiment(std::mt19937_64& rng, std::size_t datasets, bool engine_prelude) {
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  auto level = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  const double floor_w = 2.0;

  KnownTrace known;
  std::vector<Segment> segs;
  std::size_t cursor = 0;  // next sample index
  std::size_t window_start = 0;
  if (engine_prelude) {
    const std::size_t lead = pick(3, 8), engine = pick(4, 8);
    segs.push_back({lead, floor_w});
    segs.push_back({engine, level(2.9, 3.2)});
    known.windows.push_back({trace::PhaseKind::kEngineLoad, lead, lead + engine, std::nullopt});
    cursor = lead + engine;
    window_start = cursor;
  }
  for (std::size_t d = 0; d < datasets; ++d) {
    const std::size_t idle = pick(10, 14), load = pick(3, 6), gap = 5, inf = pick(8, 20);
    const double inf_w = level(4.6, 6.0);
    segs.push_back({idle, floor_w});
    segs.push_back({load, level(2.9, 3.2)});
    segs.push_back({gap, floor_w});
    segs.push_back({inf, inf_w});
    const std::size_t load_begin = cursor + idle;
    const std::size_t inf_begin = load_begin + load + gap;
    known.windows.push_back({trace::PhaseKind::kIdle, window_start, load_begin, d});
    known.windows.push_back({trace::PhaseKind::kDatasetLoad, load_begin, load_begin + load, d});
    known.windows.push_back({trace::PhaseKind::kInference, inf_begin, inf_begin + inf, d});
    known.inference_watts.push_back(inf_w);
    cursor = inf_begin + inf;
    window_start = cursor;
  }
  segs.push_back({pick(4, 10), floor_w});
  known.power = build_trace(segs, 0.03, &rng);
  return known;
}

OracleFit oracle_fit(const std::vector<analysis::SeriesPoint>& points, bool inverse_size_weights) {
  long double sw = 0, sx = 0, sxx = 0, st = 0, sxt = 0;
  for (const auto& p : points) {
    const long double n = static_cast<long double>(p.dataset_size);
    const long double w = inverse_size_weights ? 1.0L / n : 1.0L;
    const long double x = 1.0L / n;
    const long double t = p.per_image_ms;
    sw += w;
    sx += w * x;
    sxx += w * x * x;
    st += w * t;
    sxt += w * x * t;
  }
  // | sxx sx | |ot|   |sxt|
  // | sx  sw | |it| = |st |
  const long double det = sxx * sw - sx * sx;
  return {(sxt * sw - sx * st) / det, (sxx * st - sx * sxt) / det};
}

namespace {

bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

quality::BinaryMask random_mask(std::mt19937_64& rng, std::size_t w, std::size_t h, double density) {
  std::bernoulli_distribution on(density);
  std::vector<std::uint8_t> px(w * h);
  for (auto& p : px) p = on(rng) ? 1 : 0;
  return quality::BinaryMask(w, h, std::move(px));
}

}  // namespace

PropertyOutcome dice_properties(std::uint64_t seed, std::size_t pairs) {
  std::mt19937_64 rng(seed);
  PropertyOutcome out;
  std::uniform_int_distribution<std::size_t> side(1, 12);
  std::uniform_real_distribution<double> dens(0.0, 1.0);
  for (std::size_t i = 0; i < pairs; ++i, ++out.cases) {
    const std::size_t w = side(rng), h = side(rng);
    const auto a = random_mask(rng, w, h, dens(rng));
    // A quarter of the pairs are near-copies so the "== 1 iff equal" side is exercised.
    auto b = random_mask(rng, w, h, dens(rng));
    if (i % 4 == 0) {
      b = a;
      if (i % 8 == 0) b.set(0, 0, !b.at(0, 0));
    }
    const double ab = quality::dice(a, b);
    const double ba = quality::dice(b, a);
    if (ab != ba) out.fail(fmt::format("pair {}: dice not symmetric ({} vs {})", i, ab, ba));
    if (!(ab >= 0.0 && ab <= 1.0)) out.fail(fmt::format("pair {}: dice {} outside [0,1]", i, ab));
    if (quality::dice(a, a) != 1.0) out.fail(fmt::format("pair {}: dice(a,a) != 1", i));
    if ((ab == 1.0) != (a == b)) out.fail(fmt::format("pair {}: dice==1 disagrees with equality", i));
  }
  return out;
}

PropertyOutcome timing_scaling_properties(std::uint64_t seed, std::size_t runs) {
  std::mt19937_64 rng(seed);
  PropertyOutcome out;
  std::uniform_real_distribution<double> ms(0.5, 100.0);
  std::uniform_real_distribution<double> log_c(-3.0, 3.0);
  std::uniform_int_distribution<int> proto(0, 2);
  std::uniform_int_distribution<std::size_t> size(1, 60);
  for (std::size_t i = 0; i < runs; ++i, ++out.cases) {
    timing::TimingRun run;
    run.device = make_device("Device");
    run.device.protocol = static_cast<Protocol>(proto(rng));
    run.dataset_size = size(rng);
    const std::size_t count = std::uniform_int_distribution<std::size_t>(2, 14)(rng);
    for (std::size_t k = 0; k < count; ++k) run.wall_ms.push_back(ms(rng));
    const double c = std::pow(10.0, log_c(rng));

    const auto base = timing::per_image(run, 10);
    auto scaled_run = run;
    for (auto& v : scaled_run.wall_ms) v *= c;
    const auto scaled = timing::per_image(scaled_run, 10);
    if (!close_rel(scaled.per_image_ms, c * base.per_image_ms, 1e-12) ||
        !(std::abs(scaled.std_ms - c * base.std_ms) <= 1e-12 * c * base.per_image_ms)) {
      out.fail(fmt::format("run {} ({}): scaling by {} gave {} ± {}, expected {} ± {}", i,
                           protocol_name(run.device.protocol), c, scaled.per_image_ms, scaled.std_ms,
                           c * base.per_image_ms, c * base.std_ms));
    }

    // Prepending a warm-up makes the old warm-up count.
    if (run.device.protocol != Protocol::kBatched) {
      auto longer = run;
      longer.wall_ms.insert(longer.wall_ms.begin(), 1e6);
      const auto rec = timing::per_image(longer, 10);
      std::vector<double> expect_vals;
      const double div = run.device.protocol == Protocol::kWholeDataset ? static_cast<double>(run.dataset_size) : 1.0;
      for (double v : run.wall_ms) expect_vals.push_back(v / div);
      const auto expect = mean_std(expect_vals);
      if (!close_rel(rec.per_image_ms, expect.mean, 1e-12)) {
        out.fail(fmt::format("run {}: prepended warm-up changed more than the discarded value", i));
      }
    }

    // Constant measurements: zero spread, constant / divisor.
    auto flat = run;
    std::fill(flat.wall_ms.begin(), flat.wall_ms.end(), 40.0);
    const auto f = timing::per_image(flat, 10);
    if (f.std_ms > 1e-12 && run.device.protocol != Protocol::kBatched) {
      out.fail(fmt::format("run {}: constant run has std {}", i, f.std_ms));
    }
    if (run.device.protocol == Protocol::kWholeDataset &&
        !close_rel(f.per_image_ms, 40.0 / static_cast<double>(run.dataset_size), 1e-12)) {
      out.fail(fmt::format("run {}: constant whole-dataset run gave {}", i, f.per_image_ms));
    }
    if (run.device.protocol == Protocol::kBatched && run.dataset_size % 10 == 0 &&
        (!close_rel(f.per_image_ms, 4.0, 1e-12) || f.std_ms > 1e-12)) {
      out.fail(fmt::format("run {}: constant full-batch run gave {} ± {}", i, f.per_image_ms, f.std_ms));
    }
  }
  return out;
}

PropertyOutcome speedup_scaling_properties(std::uint64_t seed, std::size_t cases) {
  std::mt19937_64 rng(seed);
  PropertyOutcome out;
  std::uniform_real_distribution<double> ms(1.0, 100.0);
  std::uniform_real_distribution<double> log_c(-3.0, 3.0);
  for (std::size_t i = 0; i < cases; ++i, ++out.cases) {
    std::vector<analysis::SeriesPoint> slow, fast;
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 30)(rng);
    for (std::size_t k = 1; k <= n; ++k) {
      slow.push_back({k * 10, ms(rng)});
      fast.push_back({k * 10, ms(rng)});
    }
    const double c = std::pow(10.0, log_c(rng));
    const auto base = analysis::min_speedup(slow, fast, TaskKind::kOdSegmentation);
    auto slow_c = slow, fast_c = fast;
    for (auto& p : slow_c) p.per_image_ms *= c;
    for (auto& p : fast_c) p.per_image_ms *= c;
    const auto both = analysis::min_speedup(slow_c, fast_c, TaskKind::kOdSegmentation);
    if (both.argmin_dataset_size != base.argmin_dataset_size || !close_rel(both.value, base.value, 1e-12)) {
      out.fail(fmt::format("case {}: scaling both series by {} moved the minimum", i, c));
    }
    const auto slow_only = analysis::min_speedup(slow_c, fast, TaskKind::kOdSegmentation);
    if (slow_only.argmin_dataset_size != base.argmin_dataset_size ||
        !close_rel(slow_only.value, c * base.value, 1e-12)) {
      out.fail(fmt::format("case {}: scaling the slow series by {} gave {} (expected {})", i, c,
                           slow_only.value, c * base.value));
    }
  }
  return out;
}

PropertyOutcome std_and_rounding_properties(std::uint64_t seed, std::size_t cases) {
  std::mt19937_64 rng(seed);
  PropertyOutcome out;
  std::uniform_real_distribution<double> val(-1000.0, 1000.0);
  for (std::size_t i = 0; i < cases; ++i, ++out.cases) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 40)(rng);
    std::vector<double> xs(n);
    for (auto& x : xs) x = val(rng);
    long double sum = 0;
    for (double x : xs) sum += x;
    const long double mean = sum / n;
    long double sq = 0;
    for (double x : xs) sq += (x - mean) * (x - mean);
    const double pop = static_cast<double>(std::sqrt(sq / n));
    const auto ms = mean_std(xs);
    if (std::abs(ms.mean - static_cast<double>(mean)) > 1e-9 || std::abs(ms.std - pop) > 1e-9) {
      out.fail(fmt::format("case {}: mean_std gave {} ± {}, population oracle {} ± {}", i, ms.mean, ms.std,
                           static_cast<double>(mean), pop));
    }

    // Exact ties k + 0.5 units at d decimals round away from zero.
    const int d = std::uniform_int_distribution<int>(0, 3)(rng);
    const long long k = std::uniform_int_distribution<long long>(0, 99999)(rng);
    const bool negative = (i % 2) == 1;
    const double scale = std::pow(10.0, d);
    const double tie = (static_cast<double>(k) + 0.5) / scale * (negative ? -1.0 : 1.0);
    const long long away = k + 1;
    const std::string digits = std::to_string(away);
    std::string expect;
    if (d == 0) {
      expect = digits;
    } else {
      const std::string padded = std::string(std::max<int>(0, d + 1 - static_cast<int>(digits.size())), '0') + digits;
      expect = padded.substr(0, padded.size() - d) + "." + padded.substr(padded.size() - d);
    }
    if (negative) expect = "-" + expect;
    const auto got = format_fixed(tie, d);
    if (got != expect) out.fail(fmt::format("case {}: format_fixed({}, {}) = {}, expected {}", i, tie, d, got, expect));
    const double once = round_half_away(ms.mean, d);
    if (round_half_away(once, d) != once) out.fail(fmt::format("case {}: rounding is not idempotent", i));
  }
  return out;
}

PropertyOutcome trace_roundtrip_properties(std::uint64_t seed, std::size_t traces) {
  std::mt19937_64 rng(seed);
  PropertyOutcome out;
  std::uniform_real_distribution<double> step(0.3, 2.0);
  std::uniform_real_distribution<double> volts(4.5, 5.5);
  std::uniform_real_distribution<double> amps(0.0, 2.5);
  for (std::size_t i = 0; i < traces; ++i, ++out.cases) {
    trace::PowerTrace t;
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 200)(rng);
    double now = (i % 3 == 0) ? 0.0 : step(rng);
    for (std::size_t k = 0; k < n; ++k) {
      // Mix full-precision doubles with meter-like short decimals.
      double v = volts(rng), a = amps(rng);
      if (k % 2 == 0) {
        v = std::round(v * 100.0) / 100.0;
        a = std::round(a * 1000.0) / 1000.0;
      }
      t.samples.push_back({now, v, a});
      now += step(rng);
    }
    const auto text = trace::serialize_power_log(t);
    const auto back = trace::parse_power_log(text);
    if (back.samples != t.samples) out.fail(fmt::format("trace {}: parse(serialize(t)) != t", i));
    if (trace::serialize_power_log(back) != text) out.fail(fmt::format("trace {}: serialization not stable", i));
  }
  return out;
}

PropertyOutcome segmentation_properties(std::uint64_t seed, std::size_t traces) {
  std::mt19937_64 rng(seed);
  PropertyOutcome out;
  for (std::size_t i = 0; i < traces; ++i, ++out.cases) {
    const std::size_t datasets = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
    const bool prelude = std::bernoulli_distribution(0.3)(rng);
    const auto known = random_experiment(rng, datasets, prelude);
    trace::ExperimentTimeline tl;
    tl.dataset_count = datasets;
    tl.has_engine_load_prelude = prelude;
    std::vector<trace::PhaseWindow> got;
    try {
      got = trace::segment_phases(known.power, tl);
    } catch (const Error& e) {
      out.fail(fmt::format("trace {} ({} datasets{}): {}", i, datasets, prelude ? ", prelude" : "", e.what()));
      continue;
    }
    if (got != known.windows) {
      out.fail(fmt::format("trace {} ({} datasets): windows differ from the construction", i, datasets));
      continue;
    }
    for (std::size_t w = 1; w < got.size(); ++w) {
      if (got[w].start_index < got[w - 1].end_index) out.fail(fmt::format("trace {}: overlapping windows", i));
    }
    if (!got.empty() && got.back().end_index > known.power.size()) {
      out.fail(fmt::format("trace {}: window beyond the trace", i));
    }
    // Scaling every current by c scales each stable power by c.
    const double c = std::uniform_real_distribution<double>(0.1, 10.0)(rng);
    auto scaled = known.power;
    for (auto& s : scaled.samples) s.current *= c;
    for (const auto& w : trace::inference_windows(got)) {
      const auto a = trace::mean_stable_power(known.power, w);
      const auto b = trace::mean_stable_power(scaled, w);
      if (!close_rel(b.mean_watts, c * a.mean_watts, 1e-12)) {
        out.fail(fmt::format("trace {}: current scaling by {} gave {} W, expected {} W", i, c, b.mean_watts,
                             c * a.mean_watts));
      }
      if (std::abs(a.mean_watts - known.inference_watts[*w.dataset_ordinal]) > 0.03) {
        out.fail(fmt::format("trace {}: stable power {} W far from the plateau level", i, a.mean_watts));
      }
    }
  }
  return out;
}

PropertyOutcome fit_oracle_properties(std::uint64_t seed, std::size_t cases) {
  std::mt19937_64 rng(seed);
  PropertyOutcome out;
  std::uniform_real_distribution<double> ot_dist(0.0, 2000.0);
  std::uniform_real_distribution<double> it_dist(0.5, 50.0);
  std::uniform_real_distribution<double> noise(-0.3, 0.3);
  for (std::size_t i = 0; i < cases; ++i, ++out.cases) {
    std::set<std::size_t> sizes;
    const std::size_t want = std::uniform_int_distribution<std::size_t>(2, 40)(rng);
    while (sizes.size() < want) sizes.insert(std::uniform_int_distribution<std::size_t>(1, 2000)(rng));
    const double ot = ot_dist(rng), it = it_dist(rng);
    std::vector<analysis::SeriesPoint> exact, noisy;
    double tmax = 0.0;
    for (auto n : sizes) {
      const double t = ot / static_cast<double>(n) + it;
      exact.push_back({n, t});
      noisy.push_back({n, t * (1.0 + noise(rng))});
      tmax = std::max(tmax, t);
    }
    // Members of the model family are recovered exactly.
    const auto fe = analysis::fit_hyperbolic(exact);
    if (!close_rel(fe.overload_term_ot, ot, 1e-9) && std::abs(fe.overload_term_ot - ot) > 1e-9 * tmax) {
      out.fail(fmt::format("case {}: OT {} recovered as {}", i, ot, fe.overload_term_ot));
    }
    if (!close_rel(fe.independent_term_it, it, 1e-9)) {
      out.fail(fmt::format("case {}: IT {} recovered as {}", i, it, fe.independent_term_it));
    }
    if (fe.residual_rms > 1e-12 * tmax) out.fail(fmt::format("case {}: residual {} on exact data", i, fe.residual_rms));

    // Arbitrary data agrees with the long-double normal-equation oracle.
    for (bool weighted : {false, true}) {
      const auto f = analysis::fit_hyperbolic(
          noisy, weighted ? analysis::FitWeighting::kInverseSize : analysis::FitWeighting::kUniform);
      const auto o = oracle_fit(noisy, weighted);
      const double scale = tmax;
      if (std::abs(f.overload_term_ot - static_cast<double>(o.ot)) >
              1e-9 * std::max(std::abs(static_cast<double>(o.ot)), scale) ||
          std::abs(f.independent_term_it - static_cast<double>(o.it)) >
              1e-9 * std::max(std::abs(static_cast<double>(o.it)), scale)) {
        out.fail(fmt::format("case {}{}: fit ({}, {}) vs oracle ({}, {})", i, weighted ? " weighted" : "",
                             f.overload_term_ot, f.independent_term_it, static_cast<double>(o.ot),
                             static_cast<double>(o.it)));
      }
    }
  }
  return out;
}

}  // namespace edgebench::testing
