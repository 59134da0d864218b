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

#include "edgebench/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "edgebench/analysis.hpp"
#include "edgebench/error.hpp"
#include "edgebench/formats.hpp"
#include "edgebench/harness.hpp"
#include "edgebench/io.hpp"
#include "edgebench/quality.hpp"
#include "edgebench/report.hpp"
#include "edgebench/stats.hpp"
#include "edgebench/subprocess.hpp"
#include "edgebench/trace.hpp"

#ifndef EDGEBENCH_DEFAULT_FIXTURE_DIR
#define EDGEBENCH_DEFAULT_FIXTURE_DIR "fixtures"
#endif

namespace edgebench::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_json(const fs::path& path) {
  const auto text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kMalformedInput, fmt::format("{}: {}", path.string(), e.what()));
  }
}

TaskKind task_or_usage(const std::string& text) {
  auto t = parse_task(text);
  if (!t) throw UsageError(fmt::format("unknown task '{}' (od_segmentation, oc_segmentation, fundus_classification)", text));
  return *t;
}

// Option values for every subcommand. CLI11 binds to these members, so the
// struct outlives parsing.
struct Options {
  std::string config;

  std::string plan, runner, bench_out;
  bool no_sleep = false;
  double reply_timeout = 0.0;

  std::string log, trace_plan, trace_out, trace_latency;
  double trim_fraction = 0.1;
  std::size_t trim_min = 1;

  std::string series, fit_out, fit_task, fit_device, fit_mode;
  bool weighted = false;
  double edge_ms = 0.0;

  std::string slow, fast, su_task = "od_segmentation", su_label, su_out;

  std::string q_ref, q_cand, q_task, q_label, q_out, counts;

  std::string report_in, report_out = "report", report_format = "markdown";

  std::string fixture, replay_task, replay_device, replay_mode, replay_format = "records", replay_out;

  std::string conv_in, conv_out, time_col, volt_col, curr_col, delimiter;
  bool decimal_comma = false;
  double current_scale = 0.0, voltage_scale = 0.0;
};

struct Command {
  CLI::App* app = nullptr;
  std::vector<std::string> required;  // long flag names checked after config merge
};

void check_required(const Command& cmd) {
  for (const auto& name : cmd.required) {
    if (cmd.app->get_option(name)->count() == 0) {
      throw UsageError(fmt::format("{} is required", name));
    }
  }
}

// Fills options the command line left unset from the config object. Keys
// are long flag names without dashes.
void merge_config(CLI::App* leaf, const json& config) {
  if (!config.is_object()) throw UsageError("config file must hold a JSON object");
  for (const auto& [key, value] : config.items()) {
    auto* opt = leaf->get_option_no_throw("--" + key);
    if (opt == nullptr || key == "help" || key == "config") {
      throw UsageError(fmt::format("unknown config key '{}' for '{}'", key, leaf->get_name()));
    }
    if (opt->count() > 0) continue;
    if (value.is_string()) {
      opt->add_result(value.get<std::string>());
    } else if (value.is_boolean()) {
      if (!value.get<bool>() && opt->get_type_size() == 0) continue;
      opt->add_result(value.get<bool>() ? "true" : "false");
    } else if (value.is_number()) {
      opt->add_result(value.dump());
    } else {
      throw UsageError(fmt::format("config key '{}' must be a string, number or boolean", key));
    }
    opt->run_callback();
  }
}

void print_full_help(CLI::App* app, std::ostream& out, const std::string& prefix = "") {
  out << app->help(prefix);
  const auto path = prefix.empty() ? app->get_name() : prefix + " " + app->get_name();
  for (auto* sub : app->get_subcommands([](CLI::App*) { return true; })) {
    out << "\n";
    print_full_help(sub, out, path);
  }
}

CLI::App* leaf_subcommand(CLI::App* app) {
  for (;;) {
    auto subs = app->get_subcommands();
    if (subs.empty()) return app;
    app = subs.front();
  }
}

// ---- subcommands ------------------------------------------------------------

void cmd_bench_run(const Options& o, std::ostream& out) {
  const auto plan = harness::BenchPlan::from_json(load_json(o.plan));
  harness::RunnerSpec runner{split_command(o.runner), plan.model, plan.input_shape};
  harness::BenchOptions options;
  options.sleep = !o.no_sleep;
  options.reply_timeout_s = o.reply_timeout;
  const auto result = harness::run_benchmark(plan, runner, options);
  const auto records = harness::latency_records(result);
  const fs::path dir(o.bench_out);
  write_file_atomic(dir / "latency.csv", formats::write_latency(records));
  write_file_atomic(dir / "result.json", result.to_json().dump(2) + "\n");
  for (const auto& r : records) {
    if (r.measured()) {
      fmt::print(out, "{} {}: {} ms{}\n", plan.device.label(), r.dataset_size, format_pm(r.per_image_ms, r.std_ms, 2),
                 r.anomalous ? " (anomalous)" : "");
    } else {
      fmt::print(out, "{} {}: {} (anomalous)\n", plan.device.label(), r.dataset_size, r.error);
    }
  }
  fmt::print(out, "wrote {}\n", (dir / "latency.csv").string());
}

void cmd_trace_analyze(const Options& o, std::ostream& out) {
  const auto plan = harness::BenchPlan::from_json(load_json(o.trace_plan));
  const auto power = trace::parse_power_log(read_file(o.log));
  const trace::TrimPolicy trim{o.trim_fraction, o.trim_min};
  const auto aligned = harness::align_trace(plan, power, {}, trim);

  auto timeline = plan.timeline;
  timeline.dataset_count = plan.dataset_sizes.size();
  std::string phases = "dataset_ordinal,kind,start_index,end_index,start_s,end_s\n";
  for (const auto& w : trace::detect_phases(power, timeline)) {
    phases += fmt::format("{},{},{},{},{},{}\n", w.dataset_ordinal ? std::to_string(*w.dataset_ordinal) : "",
                          trace::phase_kind_name(w.kind), w.start_index, w.end_index,
                          power.samples[w.start_index].t, power.samples[w.end_index - 1].t);
  }
  std::string powers = "dataset_size,mean_power_w,power_std_w,samples_used\n";
  for (const auto& a : aligned) {
    powers += fmt::format("{},{},{},{}\n", a.dataset_size, a.power.mean_watts, a.power.std_watts,
                          a.power.samples_used);
    fmt::print(out, "dataset {}: {} W over {} samples\n", a.dataset_size,
               format_pm(a.power.mean_watts, a.power.std_watts, 2), a.power.samples_used);
  }
  const fs::path dir(o.trace_out);
  write_file_atomic(dir / "phases.csv", phases);
  write_file_atomic(dir / "power.csv", powers);
  if (!o.trace_latency.empty()) {
    const auto latency = formats::parse_latency(read_file(o.trace_latency));
    const auto energy = harness::energy_records(plan, aligned, latency);
    write_file_atomic(dir / "energy.csv", formats::write_energy(energy));
    for (const auto& e : energy) {
      fmt::print(out, "dataset {}: {} mJ per image\n", e.row.dataset_size, format_fixed(e.row.energy_mj, 0));
    }
  }
}

void cmd_fit(const Options& o, std::ostream& out) {
  if (!o.fit_out.empty() && (o.fit_task.empty() || o.fit_device.empty())) {
    throw UsageError("--out needs --task and --device");
  }
  const auto points = formats::parse_series(read_file(resolve_fixture(o.series)));
  const auto weighting = o.weighted ? analysis::FitWeighting::kInverseSize : analysis::FitWeighting::kUniform;
  const auto fit = analysis::fit_hyperbolic(points, weighting);
  fmt::print(out, "OT = {} ms x images\n", format_fixed(fit.overload_term_ot, 3));
  fmt::print(out, "IT = {} ms\n", format_fixed(fit.independent_term_it, 3));
  fmt::print(out, "residual_rms = {} ms over {} points ({})\n", format_fixed(fit.residual_rms, 3), fit.points,
             o.weighted ? "1/n weighted" : "unweighted");
  if (o.edge_ms > 0.0) {
    fmt::print(out, "asymptotic speed-up = {}\n", format_fixed(analysis::asymptotic_speedup(o.edge_ms, fit), 2));
  }
  if (!o.fit_out.empty()) {
    formats::FitEntry entry{task_or_usage(o.fit_task), make_device(o.fit_device, o.fit_mode), fit};
    write_file_atomic(o.fit_out, formats::write_fits({entry}));
  }
}

void cmd_speedup(const Options& o, std::ostream& out) {
  const auto task = task_or_usage(o.su_task);
  const auto slow_path = resolve_fixture(o.slow);
  const auto fast_path = resolve_fixture(o.fast);
  const auto slow = formats::parse_series(read_file(slow_path));
  const auto fast = formats::parse_series(read_file(fast_path));
  const auto result = analysis::min_speedup(slow, fast, task);
  fmt::print(out, "{} at dataset size {}\n", format_fixed(result.value, 2), result.argmin_dataset_size);
  fmt::print(out, "note: inputs are rounded per-image times; expect up to ±0.02 against unrounded measurements\n");
  if (!o.su_out.empty()) {
    const auto label = o.su_label.empty()
                           ? fmt::format("{} vs. {}", fast_path.stem().string(), slow_path.stem().string())
                           : o.su_label;
    write_file_atomic(o.su_out, formats::write_speedups({{task, label, result.value, result.argmin_dataset_size}}));
  }
}

void write_quality_entry(const Options& o, const std::string& metric, const quality::QualityStats& stats) {
  if (o.q_out.empty()) return;
  formats::QualityEntry e{metric, o.q_task, o.q_label.empty() ? fmt::format("{} vs. {}", o.q_ref, o.q_cand) : o.q_label,
                          stats.mean, stats.std, stats.count};
  write_file_atomic(o.q_out, formats::write_quality({e}));
}

void cmd_quality_dice(Options o, std::ostream& out) {
  if (o.q_task.empty()) o.q_task = std::string(task_name(TaskKind::kOdSegmentation));
  const auto pairs = quality::load_mask_pairs(o.q_ref, o.q_cand);
  const auto stats = quality::dice_pair_stats(pairs.reference, pairs.candidate);
  fmt::print(out, "dice {} over {} images\n", format_pm(stats.mean, stats.std, 3), stats.count);
  write_quality_entry(o, "dice", stats);
}

void cmd_quality_classify(Options o, std::ostream& out) {
  if (o.q_task.empty()) o.q_task = std::string(task_name(TaskKind::kFundusClassification));
  const auto ref = quality::parse_probabilities(read_file(o.q_ref));
  const auto cand = quality::parse_probabilities(read_file(o.q_cand));
  const auto pairs = quality::join_probabilities(ref, cand);
  const auto stats = quality::mean_classification_error(pairs);
  std::size_t agree = 0;
  for (const auto& [r, c] : pairs) agree += quality::predicted_label_agrees(r, c) ? 1 : 0;
  fmt::print(out, "classification error {} over {} predictions\n", format_pm(stats.mean, stats.std, 3), stats.count);
  fmt::print(out, "predicted labels agree on {} of {}\n", agree, pairs.size());
  write_quality_entry(o, "classification_error", stats);
}

void cmd_quality_confusion(const Options& o, std::ostream& out) {
  std::vector<double> v;
  std::stringstream ss(o.counts);
  std::string field;
  while (std::getline(ss, field, ',')) {
    double x = 0.0;
    if (!parse_double(field, x) || x < 0.0) throw UsageError(fmt::format("bad count '{}'", field));
    v.push_back(x);
  }
  if (v.size() != 4) throw UsageError("--counts takes four comma-separated counts");
  const auto m = quality::normalize_confusion({{{v[0], v[1]}, {v[2], v[3]}}});
  fmt::print(out, "true\\predicted glaucoma healthy\n");
  fmt::print(out, "glaucoma {} {}\n", format_fixed(m[0][0], 2), format_fixed(m[0][1], 2));
  fmt::print(out, "healthy {} {}\n", format_fixed(m[1][0], 2), format_fixed(m[1][1], 2));
}

void cmd_report(const Options& o, std::ostream& out) {
  const auto bundle = report::load_bundle(o.report_in);
  const auto format = o.report_format == "csv" ? report::Format::kCsv : report::Format::kMarkdown;
  const auto files = report::render_tables(bundle, format);
  report::write_report(files, o.report_out);
  for (const auto& f : files) fmt::print(out, "{}\n", (fs::path(o.report_out) / f.path).string());
}

void cmd_replay(const Options& o, std::ostream& out) {
  const auto path = resolve_fixture(o.fixture);
  harness::ReplayFilter filter;
  filter.task = task_or_usage(o.replay_task);
  if (!o.replay_device.empty()) filter.device = o.replay_device;
  if (!o.replay_mode.empty()) filter.power_mode = o.replay_mode;

  std::string text;
  std::error_code ec;
  const bool is_energy = fs::is_regular_file(path, ec) &&
                         formats::detect_kind(read_file(path)) == formats::FileKind::kEnergy;
  if (is_energy) {
    if (o.replay_format == "series") throw UsageError("--format series applies to latency fixtures only");
    text = formats::write_energy(harness::replay_energy_fixture(path, filter));
  } else {
    const auto records = harness::replay_fixture(path, filter);
    text = o.replay_format == "series" ? formats::write_series(analysis::to_series(records))
                                       : formats::write_latency(records);
  }
  if (o.replay_out.empty()) {
    out << text;
  } else {
    write_file_atomic(o.replay_out, text);
  }
}

void cmd_convert_log(const Options& o, std::ostream& out) {
  trace::TesterExportFormat format;
  format.time_column = o.time_col;
  format.voltage_column = o.volt_col;
  format.current_column = o.curr_col;
  if (!o.delimiter.empty()) {
    if (o.delimiter == "tab" || o.delimiter == "\\t") {
      format.delimiter = '\t';
    } else if (o.delimiter.size() == 1) {
      format.delimiter = o.delimiter[0];
    } else {
      throw UsageError("--delimiter takes one character or 'tab'");
    }
  }
  if (o.decimal_comma) format.decimal_comma = true;
  format.current_scale = o.current_scale;
  format.voltage_scale = o.voltage_scale;
  const auto power = trace::convert_tester_export(read_file(o.conv_in), format);
  write_file_atomic(o.conv_out, trace::serialize_power_log(power));
  fmt::print(out, "{} samples written to {}\n", power.size(), o.conv_out);
}

}  // namespace

void configure_logging() {
  auto logger = spdlog::get("edgebench");
  if (!logger) {
    logger = spdlog::stderr_color_mt("edgebench");
    spdlog::set_default_logger(logger);
  }
  auto level = spdlog::level::warn;
  if (const char* env = std::getenv("EDGEBENCH_LOG")) {
    const std::string v(env);
    if (v == "error") {
      level = spdlog::level::err;
    } else if (v == "warn") {
      level = spdlog::level::warn;
    } else if (v == "info") {
      level = spdlog::level::info;
    } else if (v == "debug") {
      level = spdlog::level::debug;
    } else {
      spdlog::warn("EDGEBENCH_LOG='{}' is not one of error, warn, info, debug; using warn", v);
    }
  }
  spdlog::set_level(level);
}

fs::path resolve_fixture(const std::string& name) {
  std::error_code ec;
  if (fs::exists(name, ec)) return name;
  fs::path dir = EDGEBENCH_DEFAULT_FIXTURE_DIR;
  if (const char* env = std::getenv("EDGEBENCH_FIXTURES")) dir = env;
  static const std::regex table(R"(([ab])([123]))");
  std::smatch m;
  if (std::regex_match(name, m, table)) {
    return dir / fmt::format("{}_{}{}.csv", m[1] == "a" ? "latency" : "energy", m[1].str(), m[2].str());
  }
  if (name.find('/') == std::string::npos) {
    auto candidate = dir / (fs::path(name).has_extension() ? name : name + ".csv");
    if (fs::exists(candidate, ec)) return candidate;
  }
  return name;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  configure_logging();
  Options o;
  CLI::App app{"Latency, power and quality analysis for edge ML accelerators.", "edgebench"};
  app.require_subcommand(1);
  app.add_option("--config", o.config, "JSON file with option values for the subcommand (flags win)");

  std::vector<Command> commands;
  auto* bench = app.add_subcommand("bench", "Live benchmark campaigns")->require_subcommand(1);
  auto* bench_run = bench->add_subcommand("run", "Run a plan against a runner process");
  bench_run->add_option("--plan", o.plan, "Plan JSON file (required)");
  bench_run->add_option("--runner", o.runner, "Runner launch command, quoted (required)");
  bench_run->add_flag("--no-sleep", o.no_sleep, "Skip the idle guard periods");
  bench_run->add_option("--out", o.bench_out, "Output directory (required)");
  bench_run->add_option("--reply-timeout", o.reply_timeout, "Seconds to wait for each reply; 0 waits forever")
      ->check(CLI::NonNegativeNumber);
  commands.push_back({bench_run, {"--plan", "--runner", "--out"}});

  auto* tr = app.add_subcommand("trace", "Power trace analysis")->require_subcommand(1);
  auto* analyze = tr->add_subcommand("analyze", "Segment a power log and compute stable powers");
  analyze->add_option("--log", o.log, "Canonical power log CSV (required)");
  analyze->add_option("--plan", o.trace_plan, "Plan JSON the log was recorded with (required)");
  analyze->add_option("--out", o.trace_out, "Output directory (required)");
  analyze->add_option("--latency", o.trace_latency, "Latency CSV; adds per-image energies");
  analyze->add_option("--trim-fraction", o.trim_fraction, "Fraction trimmed from each window end")
      ->check(CLI::Range(0.0, 0.49));
  analyze->add_option("--trim-min", o.trim_min, "Minimum samples trimmed from each end");
  commands.push_back({analyze, {"--log", "--plan", "--out"}});

  auto* fit = app.add_subcommand("fit", "Fit t(n) = OT/n + IT to a latency series");
  fit->add_option("--series", o.series, "Series or latency CSV (required)");
  fit->add_flag("--weighted", o.weighted, "Weight points by 1/n");
  fit->add_option("--edge-ms", o.edge_ms, "Edge per-image time; prints the asymptotic speed-up");
  fit->add_option("--out", o.fit_out, "Write the fit as CSV");
  fit->add_option("--task", o.fit_task, "Task of the fitted series (with --out)");
  fit->add_option("--device", o.fit_device, "Device of the fitted series (with --out)");
  fit->add_option("--power-mode", o.fit_mode, "Power mode of the device");
  commands.push_back({fit, {"--series"}});

  auto* su = app.add_subcommand("speedup", "Minimum speed-up of a fast series over a slow one");
  su->add_option("--slow", o.slow, "Series of the slower configuration (required)");
  su->add_option("--fast", o.fast, "Series of the faster configuration (required)");
  su->add_option("--task", o.su_task, "Scenario task name");
  su->add_option("--label", o.su_label, "Comparison label for the output CSV");
  su->add_option("--out", o.su_out, "Write the speed-up as CSV");
  commands.push_back({su, {"--slow", "--fast"}});

  auto* q = app.add_subcommand("quality", "Output agreement between two devices")->require_subcommand(1);
  auto* qd = q->add_subcommand("dice", "Dice ratios between two mask directories");
  auto* qc = q->add_subcommand("classify", "Classification error between two probability files");
  for (auto* sub : {qd, qc}) {
    sub->add_option("--ref", o.q_ref, "Reference masks or probabilities (required)");
    sub->add_option("--cand", o.q_cand, "Candidate masks or probabilities (required)");
    sub->add_option("--task", o.q_task, "Row label for the output CSV");
    sub->add_option("--label", o.q_label, "Comparison label for the output CSV");
    sub->add_option("--out", o.q_out, "Write the statistic as CSV");
    commands.push_back({sub, {"--ref", "--cand"}});
  }
  auto* qm = q->add_subcommand("confusion", "Row-normalize a 2x2 confusion matrix");
  qm->add_option("--counts", o.counts, "Counts gg,gh,hg,hh (rows are true labels) (required)");
  commands.push_back({qm, {"--counts"}});

  auto* rep = app.add_subcommand("report", "Render tables and plot series from result CSVs");
  rep->add_option("--in", o.report_in, "Directory of result CSVs (required)");
  rep->add_option("--out", o.report_out, "Report directory")->capture_default_str();
  rep->add_option("--format", o.report_format, "csv or markdown")->check(CLI::IsMember({"csv", "markdown"}));
  commands.push_back({rep, {"--in"}});

  auto* rp = app.add_subcommand("replay", "Emit bundled fixture rows as if measured");
  rp->add_option("--fixture", o.fixture, "Fixture CSV, or a1..a3 / b1..b3 (required)");
  rp->add_option("--task", o.replay_task, "Task to select (required)");
  rp->add_option("--device", o.replay_device, "Device name to select");
  rp->add_option("--power-mode", o.replay_mode, "Power mode to select");
  rp->add_option("--format", o.replay_format, "records or series")->check(CLI::IsMember({"records", "series"}));
  rp->add_option("--out", o.replay_out, "Output file; stdout when absent");
  commands.push_back({rp, {"--fixture", "--task"}});

  auto* conv = app.add_subcommand("convert-log", "Convert a USB tester export to the canonical power log");
  conv->add_option("--in", o.conv_in, "Tester export (required)");
  conv->add_option("--out", o.conv_out, "Canonical power log CSV (required)");
  conv->add_option("--time-column", o.time_col, "Time column name (substring match)");
  conv->add_option("--voltage-column", o.volt_col, "Voltage column name (substring match)");
  conv->add_option("--current-column", o.curr_col, "Current column name (substring match)");
  conv->add_option("--delimiter", o.delimiter, "Field delimiter: one character or 'tab'");
  conv->add_flag("--decimal-comma", o.decimal_comma, "Numbers use a decimal comma");
  conv->add_option("--current-scale", o.current_scale, "Multiplier to amperes")->check(CLI::NonNegativeNumber);
  conv->add_option("--voltage-scale", o.voltage_scale, "Multiplier to volts")->check(CLI::NonNegativeNumber);
  commands.push_back({conv, {"--in", "--out"}});

  // Top-level help expands every subcommand, nested ones included.
  if (!args.empty() && (args.front() == "-h" || args.front() == "--help")) {
    print_full_help(&app, out);
    return kExitOk;
  }

  std::vector<std::string> argv_store{"edgebench"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitUsage;
    }
    CLI::App* leaf = leaf_subcommand(&app);
    if (!o.config.empty()) {
      json config;
      try {
        config = json::parse(read_file(o.config));
      } catch (const json::parse_error& e) {
        throw UsageError(fmt::format("config file {}: {}", o.config, e.what()));
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      merge_config(leaf, config);
    }
    for (const auto& cmd : commands) {
      if (cmd.app == leaf) check_required(cmd);
    }

    if (leaf == bench_run) {
      cmd_bench_run(o, out);
    } else if (leaf == analyze) {
      cmd_trace_analyze(o, out);
    } else if (leaf == fit) {
      cmd_fit(o, out);
    } else if (leaf == su) {
      cmd_speedup(o, out);
    } else if (leaf == qd) {
      cmd_quality_dice(o, out);
    } else if (leaf == qc) {
      cmd_quality_classify(o, out);
    } else if (leaf == qm) {
      cmd_quality_confusion(o, out);
    } else if (leaf == rep) {
      cmd_report(o, out);
    } else if (leaf == rp) {
      cmd_replay(o, out);
    } else if (leaf == conv) {
      cmd_convert_log(o, out);
    }
    return kExitOk;
  } catch (const UsageError& e) {
    fmt::print(err, "UsageError: {}\n", e.what());
    return kExitUsage;
  } catch (const CLI::Error& e) {
    fmt::print(err, "UsageError: {}\n", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    fmt::print(err, "{}: {}\n", e.name(), e.what());
    return kExitDomainError;
  }
}

}  // namespace edgebench::cli
