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

#include "detailprior/plane.hpp"

namespace detailprior {

struct YCbCrPlanes {
  Plane y;
  Plane cb;
  Plane cr;
};

/// BT.601 studio-swing conversion (Y in [16, 235], chroma centred at 128).
YCbCrPlanes rgb_to_ycbcr(const RasterImage& image);

/// Exact algebraic inverse of rgb_to_ycbcr, clamped to [0, 255].
RasterImage ycbcr_to_rgb(const Plane& y, const Plane& cb, const Plane& cr);
inline RasterImage ycbcr_to_rgb(const YCbCrPlanes& planes) {
  return ycbcr_to_rgb(planes.y, planes.cb, planes.cr);
}

/// Luminance used throughout the library: studio-swing Y for RGB input,
/// the single channel itself for grayscale input.
Plane luminance(const RasterImage& image);

/// Replaces the luminance of `image` with `y`, keeping chroma. For RGB
/// the image goes through YCbCr and back; grayscale is written directly.
/// `y` is clamped to [0, 255] first.
RasterImage with_luminance(const RasterImage& image, const Plane& y);

}  // namespace detailprior
