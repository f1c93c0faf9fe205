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

#include "detailprior/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <string>

#include "detailprior/detail_prior.hpp"
#include "detailprior/error.hpp"
#include "detailprior/image_io.hpp"
#include "detailprior/resample.hpp"

namespace detailprior {
namespace fs = std::filesystem;
namespace {

bool is_image_candidate(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png" || ext == ".pgm" || ext == ".ppm" || ext == ".pnm";
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError(IoError::Kind::kWriteFailed, dir, "cannot create directory");
  }
}

nlohmann::json params_to_json(const SolverParams& p) {
  return {{"alpha", p.alpha},
          {"lambda", p.lambda},
          {"gamma", p.gamma},
          {"epsilon", p.epsilon},
          {"iterations", p.iterations}};
}

}  // namespace

RasterImage degrade(const RasterImage& hr, std::size_t scale) {
  if (scale < 2) throw InvalidArgument("degrade: scale must be >= 2");
  if (hr.width() % scale != 0 || hr.height() % scale != 0 || hr.width() == 0 ||
      hr.height() == 0) {
    throw InvalidArgument("degrade: " + std::to_string(hr.width()) + "x" +
                          std::to_string(hr.height()) + " is not divisible by scale " +
                          std::to_string(scale) + " (mod_crop first)");
  }
  return bicubic_resize(hr, hr.width() / scale, hr.height() / scale);
}

nlohmann::json to_json(const PairManifest& manifest) {
  nlohmann::json entries = nlohmann::json::array();
  for (const PairEntry& e : manifest.entries) {
    entries.push_back({{"hr_path", e.hr_path},
                       {"lr_path", e.lr_path},
                       {"hr_detail_path", e.hr_detail_path},
                       {"lr_detail_path", e.lr_detail_path},
                       {"width", e.width},
                       {"height", e.height},
                       {"scale", e.scale}});
  }
  nlohmann::json failures = nlohmann::json::array();
  for (const PairFailure& f : manifest.failures) {
    failures.push_back({{"file", f.file}, {"message", f.message}});
  }
  return {{"version", 1},
          {"scale", manifest.scale},
          {"params", params_to_json(manifest.params)},
          {"entries", std::move(entries)},
          {"failures", std::move(failures)}};
}

PairManifest manifest_from_json(const nlohmann::json& json) {
  PairManifest m;
  m.scale = json.at("scale").get<std::size_t>();
  const auto& p = json.at("params");
  m.params.alpha = p.at("alpha").get<double>();
  m.params.lambda = p.at("lambda").get<double>();
  m.params.gamma = p.at("gamma").get<double>();
  m.params.epsilon = p.at("epsilon").get<double>();
  m.params.iterations = p.at("iterations").get<int>();
  for (const auto& e : json.at("entries")) {
    m.entries.push_back({e.at("hr_path").get<std::string>(), e.at("lr_path").get<std::string>(),
                         e.at("hr_detail_path").get<std::string>(),
                         e.at("lr_detail_path").get<std::string>(),
                         e.at("width").get<std::size_t>(), e.at("height").get<std::size_t>(),
                         e.at("scale").get<std::size_t>()});
  }
  if (json.contains("failures")) {
    for (const auto& f : json.at("failures")) {
      m.failures.push_back({f.at("file").get<std::string>(), f.at("message").get<std::string>()});
    }
  }
  return m;
}

PairManifest prepare_pairs(const fs::path& input_dir, const fs::path& output_dir,
                           std::size_t scale, const SolverParams& params, std::size_t threads) {
  params.validate();
  if (scale < 2) throw InvalidArgument("prepare_pairs: scale must be >= 2");
  if (!fs::is_directory(input_dir)) {
    throw IoError(IoError::Kind::kUnreadable, input_dir, "not a directory");
  }

  std::vector<fs::path> inputs;
  for (const auto& entry : fs::directory_iterator(input_dir)) {
    if (entry.is_regular_file() && is_image_candidate(entry.path())) inputs.push_back(entry.path());
  }
  std::sort(inputs.begin(), inputs.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  if (inputs.empty()) {
    throw InvalidArgument("prepare_pairs: no PNG/PGM/PPM files in " + input_dir.string());
  }

  for (const char* sub : {"HR", "LR", "HR_detail", "LR_detail"}) ensure_directory(output_dir / sub);

  PairManifest manifest;
  manifest.params = params;
  manifest.scale = scale;
  std::set<std::string> stems;
  for (const fs::path& input : inputs) {
    const std::string stem = input.stem().string();
    if (!stems.insert(stem).second) {
      manifest.failures.push_back({input.filename().string(), "duplicate file stem '" + stem + "'"});
      continue;
    }
    try {
      const RasterImage hr = quantize_8bit(mod_crop(load_image(input), scale));
      const RasterImage lr = quantize_8bit(degrade(hr, scale));
      const DetailLayer hr_detail = extract_detail(hr, params, threads);
      const DetailLayer lr_detail = extract_detail(lr, params, threads);

      PairEntry entry{"HR/" + stem + ".png",
                      "LR/" + stem + ".png",
                      "HR_detail/" + stem + ".dpln",
                      "LR_detail/" + stem + ".dpln",
                      hr.width(),
                      hr.height(),
                      scale};
      save_image(hr, output_dir / entry.hr_path);
      save_image(lr, output_dir / entry.lr_path);
      write_dpln(hr_detail.values, output_dir / entry.hr_detail_path);
      write_dpln(lr_detail.values, output_dir / entry.lr_detail_path);
      manifest.entries.push_back(std::move(entry));
    } catch (const Error& e) {
      manifest.failures.push_back({input.filename().string(), e.what()});
    }
  }

  if (manifest.entries.empty()) {
    std::string reasons;
    for (const auto& f : manifest.failures) reasons += "\n  " + f.file + ": " + f.message;
    throw InvalidArgument("prepare_pairs: no image could be processed" + reasons);
  }

  const std::string text = to_json(manifest).dump(2) + "\n";
  write_file_atomic(output_dir / kManifestName,
                    std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  return manifest;
}

}  // namespace detailprior
