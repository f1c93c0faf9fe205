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

#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "detailprior/detail_solver.hpp"
#include "detailprior/plane.hpp"

namespace detailprior {

/// Bicubic antialiased downscale by exactly 1/scale per axis.
/// Dimensions must already be divisible by scale (see mod_crop).
RasterImage degrade(const RasterImage& hr, std::size_t scale);

struct PairEntry {
  std::string hr_path;  // all paths relative to the output directory
  std::string lr_path;
  std::string hr_detail_path;
  std::string lr_detail_path;
  std::size_t width = 0;  // HR size
  std::size_t height = 0;
  std::size_t scale = 0;
};

struct PairFailure {
  std::string file;
  std::string message;
};

struct PairManifest {
  std::vector<PairEntry> entries;
  std::vector<PairFailure> failures;
  SolverParams params;
  std::size_t scale = 0;
};

nlohmann::json to_json(const PairManifest& manifest);
PairManifest manifest_from_json(const nlohmann::json& json);

inline constexpr const char* kManifestName = "manifest.json";

/// For every PNG/PGM/PPM in input_dir (sorted by filename): mod-crop, write
/// HR and its bicubic LR as 8-bit PNGs, extract the detail layer of each and
/// write it as DPLN, then record the quadruple. Layout:
///   output_dir/{HR,LR,HR_detail,LR_detail}/<stem>.{png,dpln}
///   output_dir/manifest.json
/// Files that fail are collected in `failures` and skipped.
PairManifest prepare_pairs(const std::filesystem::path& input_dir,
                           const std::filesystem::path& output_dir, std::size_t scale,
                           const SolverParams& params = {}, std::size_t threads = 1);

}  // namespace detailprior
