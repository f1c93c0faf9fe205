// Copyright 2026 The detailprior Authors.
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

#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "detailprior/baselines.hpp"
#include "detailprior/color.hpp"
#include "detailprior/dataset.hpp"
#include "detailprior/detail_prior.hpp"
#include "detailprior/error.hpp"
#include "detailprior/image_io.hpp"
#include "detailprior/metrics.hpp"
#include "detailprior/resample.hpp"

namespace detailprior::cli {
namespace fs = std::filesystem;
namespace {

constexpr std::size_t kOracleCropEdge = 64;

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

nlohmann::json json_number(double v) {
  if (std::isinf(v)) return format_number(v);
  return v;
}

void add_solver_flags(CLI::App& sub, SolverParams& params) {
  sub.add_option("--alpha", params.alpha, "Gradient amplification (>= 0)");
  sub.add_option("--lambda", params.lambda, "Fidelity weight (> 0)");
  sub.add_option("--gamma", params.gamma, "Sensitivity exponent, (0, 2]");
  sub.add_option("--eps", params.epsilon, "Noise-exclusion floor (> 0)");
  sub.add_option("--iters", params.iterations, "Alternating iterations T (>= 1)");
}

void add_threads_flag(CLI::App& sub, std::size_t& threads) {
  sub.add_option("--threads", threads,
                 "Worker threads; output does not depend on it (env DETAILPRIOR_THREADS)");
}

void print_stats(std::ostream& out, const SparsityStats& stats, const std::string& prefix = "") {
  out << prefix << "l1_mean " << format_number(stats.l1_mean) << "\n";
  out << prefix << "near_zero_fraction " << format_number(stats.near_zero_fraction) << "\n";
  out << prefix << "threshold " << format_number(stats.threshold) << "\n";
}

nlohmann::json stats_json(const SparsityStats& stats) {
  return {{"l1_mean", stats.l1_mean},
          {"near_zero_fraction", stats.near_zero_fraction},
          {"threshold", stats.threshold}};
}

fs::path channel_path(const fs::path& path, std::size_t c) {
  fs::path out = path;
  out.replace_filename(path.stem().string() + "_c" + std::to_string(c) + path.extension().string());
  return out;
}

// ---------------------------------------------------------------------------

struct ExtractOptions {
  std::string input;
  std::string output;
  std::string viz;
  double threshold = 0.01;
  bool exact = false;
  bool json = false;
};

int cmd_extract(const ExtractOptions& o, const SolverParams& params, std::size_t threads,
                std::ostream& out) {
  const RasterImage image = load_image(o.input);
  const DetailLayer detail =
      o.exact ? extract_detail_exact(image, params) : extract_detail(image, params, threads);
  write_dpln(detail.values, o.output);
  if (!o.viz.empty()) save_plane_visualization(detail.values, o.viz);
  const SparsityStats stats = sparsity_stats(detail.values, DetailMode::kMultiplicative, o.threshold);
  if (o.json) {
    out << stats_json(stats).dump() << "\n";
  } else {
    print_stats(out, stats);
  }
  return kExitOk;
}

struct EnhanceOptions {
  std::string input;
  std::string detail;
  std::string output;
  double gain = 1.0;
};

int cmd_enhance(const EnhanceOptions& o, std::ostream&) {
  const RasterImage image = load_image(o.input);
  const Plane detail = read_dpln(o.detail);
  save_image(enhance(image, detail, EnhancementConfig{o.gain}), o.output);
  return kExitOk;
}

struct DecomposeOptions {
  std::string input;
  std::string method = "gif";
  BaselineParams params;
  std::string base;
  std::string detail;
  std::string merged;
  double gain = 1.0;
  double threshold = 0.01;
  bool per_channel = false;
  bool json = false;
};

int cmd_decompose(const DecomposeOptions& o, std::size_t threads, std::ostream& out) {
  const RasterImage image = load_image(o.input);
  const BaselineMethod method = parse_baseline_method(o.method);

  std::vector<AdditiveDecomposition> parts;
  if (o.per_channel) {
    parts = additive_decompose_channels(image, method, o.params, threads);
  } else {
    parts.push_back(additive_decompose(image, method, o.params, threads));
  }

  nlohmann::json report = nlohmann::json::array();
  for (std::size_t c = 0; c < parts.size(); ++c) {
    auto name = [&](const std::string& p) { return o.per_channel ? channel_path(p, c) : fs::path(p); };
    if (!o.base.empty()) write_dpln(parts[c].base, name(o.base));
    if (!o.detail.empty()) write_dpln(parts[c].detail, name(o.detail));
    const SparsityStats stats = sparsity_stats(parts[c].detail, DetailMode::kAdditive, o.threshold);
    if (o.json) {
      report.push_back(stats_json(stats));
    } else {
      print_stats(out, stats, o.per_channel ? "channel" + std::to_string(c) + "." : "");
    }
  }
  if (!o.merged.empty()) {
    RasterImage merged;
    if (o.per_channel) {
      std::vector<Plane> details;
      for (const auto& p : parts) details.push_back(p.detail);
      merged = additive_merge_channels(image, details, o.gain);
    } else {
      merged = additive_merge(image, parts.front().detail, o.gain);
    }
    save_image(merged, o.merged);
  }
  if (o.json) out << (o.per_channel ? report : report.front()).dump() << "\n";
  return kExitOk;
}

struct DegradeOptions {
  std::string input;
  std::string output;
  std::size_t scale = 4;
};

int cmd_degrade(const DegradeOptions& o) {
  save_image(degrade(load_image(o.input), o.scale), o.output);
  return kExitOk;
}

struct PrepareOptions {
  std::string input_dir;
  std::string output_dir;
  std::size_t scale = 4;
};

int cmd_prepare(const PrepareOptions& o, const SolverParams& params, std::size_t threads,
                std::ostream& out, std::ostream& err) {
  const PairManifest manifest = prepare_pairs(o.input_dir, o.output_dir, o.scale, params, threads);
  for (const PairEntry& e : manifest.entries) out << "ok " << e.hr_path << "\n";
  for (const PairFailure& f : manifest.failures) err << "failed " << f.file << ": " << f.message << "\n";
  out << "entries " << manifest.entries.size() << "\n";
  out << "failures " << manifest.failures.size() << "\n";
  return kExitOk;
}

struct MetricsOptions {
  std::string reference;
  std::string test;
  std::string detail;
  std::string mode = "multiplicative";
  double threshold = 0.01;
  std::size_t crop_border = 4;
  bool json = false;
};

int cmd_metrics(const MetricsOptions& o, std::ostream& out, std::ostream& err) {
  const bool images = !o.reference.empty() || !o.test.empty();
  if (images && (o.reference.empty() || o.test.empty())) {
    err << "metrics: both REFERENCE and TEST images are required\n";
    return kExitFailure;
  }
  if (!images && o.detail.empty()) {
    err << "metrics: give REFERENCE TEST images and/or --detail\n";
    return kExitFailure;
  }
  nlohmann::json report = nlohmann::json::object();
  if (images) {
    const RasterImage a = shave_border(load_image(o.reference), o.crop_border);
    const RasterImage b = shave_border(load_image(o.test), o.crop_border);
    const double p = psnr(a, b);
    const double s = ssim(luminance(a), luminance(b));
    report["psnr_rgb"] = json_number(p);
    report["ssim_y"] = s;
    if (!o.json) {
      out << "psnr-rgb " << format_number(p) << "\n";
      out << "ssim-y " << format_number(s) << "\n";
    }
  }
  if (!o.detail.empty()) {
    const SparsityStats stats =
        sparsity_stats(read_dpln(o.detail), parse_detail_mode(o.mode), o.threshold);
    report["l1_mean"] = stats.l1_mean;
    report["near_zero_fraction"] = stats.near_zero_fraction;
    if (!o.json) print_stats(out, stats);
  }
  if (o.json) out << report.dump() << "\n";
  return kExitOk;
}

struct OracleOptions {
  std::string input;
  double tolerance = 1.10;
};

int cmd_oracle_check(const OracleOptions& o, const SolverParams& params, std::size_t threads,
                     std::ostream& out) {
  params.validate();
  RasterImage image = load_image(o.input);
  if (image.pixel_count() > kDenseSolveMaxPixels) {
    image = center_crop(image, kOracleCropEdge, kOracleCropEdge);
  }
  const VectorField field = build_vector_field(luminance(image), params.alpha);
  const FidelityWeights weights = fidelity_weights(field, params.gamma, params.epsilon);
  const LogDetailPlane fast = solve_fast(field, weights, params, threads);
  const LogDetailPlane dense = solve_dense(field, weights, params.lambda);
  const double fast_obj = objective_value(fast, field, weights, params.lambda);
  const double dense_obj = objective_value(dense, field, weights, params.lambda);
  double ratio = 1.0;
  if (dense_obj > 0.0) {
    ratio = fast_obj / dense_obj;
  } else if (fast_obj > 0.0) {
    ratio = std::numeric_limits<double>::infinity();
  }
  out << "size " << image.width() << "x" << image.height() << "\n";
  out << "objective_fast " << format_number(fast_obj) << "\n";
  out << "objective_dense " << format_number(dense_obj) << "\n";
  out << "ratio " << format_number(ratio) << "\n";
  out << "tolerance " << format_number(o.tolerance) << "\n";
  const bool pass = ratio <= o.tolerance;
  out << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kExitOk : kExitValidation;
}

struct BenchOptions {
  std::vector<std::size_t> sizes = {256, 512, 1024};
  int repeats = 3;
  std::uint32_t seed = 1;
};

int cmd_bench(const BenchOptions& o, const SolverParams& params, std::size_t threads,
              std::ostream& out, std::ostream& err) {
  for (std::size_t s : o.sizes) {
    if (s < 16) {
      err << "bench: sizes must be >= 16\n";
      return kExitFailure;
    }
  }
  if (o.repeats < 1) {
    err << "bench: --repeats must be >= 1\n";
    return kExitFailure;
  }
  for (const BenchSample& s : run_bench(o.sizes, o.repeats, params, threads, o.seed)) {
    char line[96];
    std::snprintf(line, sizeof(line), "%zu %.3f\n", s.size, s.ns_per_pixel);
    out << line;
  }
  return kExitOk;
}

}  // namespace

std::size_t default_threads() {
  if (const char* env = std::getenv("DETAILPRIOR_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<BenchSample> run_bench(const std::vector<std::size_t>& sizes, int repeats,
                                   const SolverParams& params, std::size_t threads,
                                   std::uint32_t seed) {
  params.validate();
  std::vector<BenchSample> results;
  for (std::size_t size : sizes) {
    std::mt19937 rng(seed + static_cast<std::uint32_t>(size));
    std::uniform_real_distribution<double> noise(0.0, 255.0);
    Plane y(size, size);
    for (double& s : y.samples()) s = noise(rng);
    const VectorField field = build_vector_field(y, params.alpha);
    const FidelityWeights weights = fidelity_weights(field, params.gamma, params.epsilon);

    std::vector<double> timings;
    for (int r = 0; r < repeats; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      const LogDetailPlane solution = solve_fast(field, weights, params, threads);
      const auto t1 = std::chrono::steady_clock::now();
      if (solution.values.size() != size * size) throw InternalError("bench: bad solution size");
      timings.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count() /
                        static_cast<double>(size * size));
    }
    std::sort(timings.begin(), timings.end());
    results.push_back({size, timings[timings.size() / 2]});
  }
  return results;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Log-domain detail-layer extraction, enhancement and SR pair preparation",
               "detailprior"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  SolverParams params;
  std::size_t threads = default_threads();

  ExtractOptions extract_opts;
  auto* extract = app.add_subcommand("extract", "Extract the multiplicative detail layer to DPLN");
  extract->add_option("input", extract_opts.input, "Input image (PNG/PGM/PPM)")->required();
  extract->add_option("output", extract_opts.output, "Output DPLN path")->required();
  extract->add_option("--viz", extract_opts.viz, "Also write a normalised 16-bit PNG (+ .range)");
  extract->add_option("--threshold", extract_opts.threshold, "Near-zero cutoff on |log2 D|");
  extract->add_flag("--exact", extract_opts.exact, "Use the dense solver (<= 4096 pixels)");
  extract->add_flag("--json", extract_opts.json, "Print statistics as JSON");
  add_solver_flags(*extract, params);
  add_threads_flag(*extract, threads);

  EnhanceOptions enhance_opts;
  auto* enhance_cmd = app.add_subcommand("enhance", "Multiply a detail layer back into an image");
  enhance_cmd->add_option("input", enhance_opts.input, "Input image")->required();
  enhance_cmd->add_option("detail", enhance_opts.detail, "Detail layer (DPLN)")->required();
  enhance_cmd->add_option("output", enhance_opts.output, "Output PNG")->required();
  enhance_cmd->add_option("--gain", enhance_opts.gain, "Exponent applied to the detail layer");

  DecomposeOptions decompose_opts;
  auto* decompose = app.add_subcommand("decompose", "Additive baseline decomposition");
  decompose->add_option("input", decompose_opts.input, "Input image")->required();
  decompose->add_option("--method", decompose_opts.method, "Baseline smoother")
      ->check(CLI::IsMember({"gif", "msdm"}));
  decompose->add_option("--radius", decompose_opts.params.radius, "Guided filter radius");
  decompose->add_option("--gif-eps", decompose_opts.params.gif_epsilon,
                        "Guided filter regulariser (unit scale)");
  decompose->add_option("--msdm-lambda", decompose_opts.params.msdm_lambda, "WLS smoothing weight");
  decompose->add_option("--msdm-alpha", decompose_opts.params.msdm_alpha, "WLS gradient exponent");
  decompose->add_option("--base", decompose_opts.base, "Output base layer (DPLN)");
  decompose->add_option("--detail", decompose_opts.detail, "Output signed detail (DPLN)");
  decompose->add_option("--merged", decompose_opts.merged, "Output PNG with luminance Y + gain * detail");
  decompose->add_option("--gain", decompose_opts.gain, "Gain for --merged");
  decompose->add_option("--threshold", decompose_opts.threshold, "Near-zero cutoff on |d|/range");
  decompose->add_flag("--per-channel", decompose_opts.per_channel,
                      "Decompose each RGB channel instead of luminance");
  decompose->add_flag("--json", decompose_opts.json, "Print statistics as JSON");
  add_threads_flag(*decompose, threads);

  DegradeOptions degrade_opts;
  auto* degrade_cmd = app.add_subcommand("degrade", "Bicubic antialiased downscale");
  degrade_cmd->add_option("input", degrade_opts.input, "HR image")->required();
  degrade_cmd->add_option("output", degrade_opts.output, "LR PNG")->required();
  degrade_cmd->add_option("--scale", degrade_opts.scale, "Downscale factor")
      ->check(CLI::Range(std::size_t{2}, std::size_t{64}));

  PrepareOptions prepare_opts;
  auto* prepare = app.add_subcommand("prepare", "Build LR/HR/detail training quadruples");
  prepare->add_option("input_dir", prepare_opts.input_dir, "Directory of HR images")->required();
  prepare->add_option("output_dir", prepare_opts.output_dir, "Output directory")->required();
  prepare->add_option("--scale", prepare_opts.scale, "SR scale factor")
      ->check(CLI::Range(std::size_t{2}, std::size_t{64}));
  add_solver_flags(*prepare, params);
  add_threads_flag(*prepare, threads);

  MetricsOptions metrics_opts;
  auto* metrics = app.add_subcommand("metrics", "PSNR / SSIM and detail sparsity");
  metrics->add_option("reference", metrics_opts.reference, "Reference image");
  metrics->add_option("test", metrics_opts.test, "Test image");
  metrics->add_option("--detail", metrics_opts.detail, "Detail plane (DPLN) for sparsity stats");
  metrics->add_option("--mode", metrics_opts.mode, "Detail semantics")
      ->check(CLI::IsMember({"multiplicative", "additive"}));
  metrics->add_option("--threshold", metrics_opts.threshold, "Near-zero cutoff");
  metrics->add_option("--crop-border", metrics_opts.crop_border,
                      "Pixels shaved from each side before PSNR/SSIM");
  metrics->add_flag("--json", metrics_opts.json, "Print a JSON object");

  OracleOptions oracle_opts;
  auto* oracle = app.add_subcommand("oracle-check", "Compare the fast solver with the dense one");
  oracle->add_option("input", oracle_opts.input, "Input image (centre-cropped to 64x64 if larger)")
      ->required();
  oracle->add_option("--tolerance", oracle_opts.tolerance, "Maximum fast/dense objective ratio");
  add_solver_flags(*oracle, params);
  add_threads_flag(*oracle, threads);

  BenchOptions bench_opts;
  auto* bench = app.add_subcommand("bench", "Time the fast solver (ns per pixel)");
  bench->add_option("--sizes", bench_opts.sizes, "Edge lengths of square noise planes")
      ->delimiter(',');
  bench->add_option("--repeats", bench_opts.repeats, "Runs per size; the median is reported");
  bench->add_option("--seed", bench_opts.seed, "Noise seed");
  add_solver_flags(*bench, params);
  add_threads_flag(*bench, threads);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitFailure;
  }

  try {
    if (threads == 0) threads = 1;
    if (*extract) return cmd_extract(extract_opts, params, threads, out);
    if (*enhance_cmd) return cmd_enhance(enhance_opts, out);
    if (*decompose) return cmd_decompose(decompose_opts, threads, out);
    if (*degrade_cmd) return cmd_degrade(degrade_opts);
    if (*prepare) return cmd_prepare(prepare_opts, params, threads, out, err);
    if (*metrics) return cmd_metrics(metrics_opts, out, err);
    if (*oracle) return cmd_oracle_check(oracle_opts, params, threads, out);
    if (*bench) return cmd_bench(bench_opts, params, threads, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace detailprior::cli
