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

#include "detailprior/plane.hpp"

namespace detailprior {

/// Cubic-convolution resize (a = -0.5). When shrinking, the kernel is
/// stretched by the scale factor so it also acts as an antialiasing filter.
/// Pixel centres are aligned (x_in = (x_out + 0.5) / s - 0.5) and samples
/// outside the plane replicate the nearest edge.
Plane bicubic_resize(const Plane& plane, std::size_t out_width, std::size_t out_height);

/// Channel-wise bicubic_resize; the result is clamped to [0, 255].
RasterImage bicubic_resize(const RasterImage& image, std::size_t out_width,
                           std::size_t out_height);

/// Crops from the top-left so both dimensions are multiples of `factor`.
RasterImage mod_crop(const RasterImage& image, std::size_t factor);

RasterImage crop(const RasterImage& image, std::size_t x0, std::size_t y0, std::size_t width,
                 std::size_t height);
Plane crop(const Plane& plane, std::size_t x0, std::size_t y0, std::size_t width,
           std::size_t height);

/// Centred crop of at most width x height (smaller images pass through).
RasterImage center_crop(const RasterImage& image, std::size_t width, std::size_t height);

}  // namespace detailprior
