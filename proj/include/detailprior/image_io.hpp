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

#include <cstdint>
#include <filesystem>
#include <span>

#include "detailprior/plane.hpp"

namespace detailprior {

/// Reads an 8/16-bit PNG (gray or RGB; alpha is dropped, palettes expanded)
/// or a binary PGM (P5) / PPM (P6). Samples are returned on the [0, 255]
/// scale; 16-bit data is scaled by 255/65535.
///
/// Throws IoError with kind kUnreadable, kUnsupportedFormat or kCorrupt.
RasterImage load_image(const std::filesystem::path& path);

/// Writes an 8-bit PNG. Samples are clamped to [0, 255] and rounded half
/// away from zero. The file appears atomically (temp file + rename).
void save_image(const RasterImage& image, const std::filesystem::path& path);

/// DPLN plane interchange: "DPLN", u32 version (1), u32 height, u32 width,
/// then height*width float32 samples, all little-endian, row-major.
inline constexpr std::uint32_t kDplnVersion = 1;

std::vector<std::uint8_t> encode_dpln(const Plane& plane);
Plane decode_dpln(std::span<const std::uint8_t> bytes, const std::filesystem::path& origin = {});

void write_dpln(const Plane& plane, const std::filesystem::path& path);
Plane read_dpln(const std::filesystem::path& path);

/// Writes a 16-bit grayscale PNG mapping [min, max] affinely onto
/// [0, 65535], plus a sidecar "<stem>.range" holding "min max".
void save_plane_visualization(const Plane& plane, const std::filesystem::path& png_path);

/// Path of the sidecar written next to a visualization PNG.
std::filesystem::path range_sidecar_path(const std::filesystem::path& png_path);

/// Writes bytes to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace detailprior
