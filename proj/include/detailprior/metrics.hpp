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
#include <string_view>

#include "detailprior/plane.hpp"

namespace detailprior {

/// 10 log10(255^2 / MSE) over every sample. Identical images give +infinity.
double psnr(const RasterImage& a, const RasterImage& b);

/// Single-scale SSIM: 11x11 Gaussian window (sigma 1.5), K1 = 0.01,
/// K2 = 0.03, L = 255, averaged over window positions fully inside the plane.
double ssim(const Plane& a, const Plane& b);

enum class DetailMode {
  kMultiplicative,  // magnitude |log2 d|, d must be > 0
  kAdditive,        // magnitude |d| / (max - min), raw |d| for flat input
};

std::string_view to_string(DetailMode mode) noexcept;
DetailMode parse_detail_mode(std::string_view name);

struct SparsityStats {
  double l1_mean = 0.0;
  double near_zero_fraction = 0.0;
  double threshold = 0.0;
};

SparsityStats sparsity_stats(const Plane& detail, DetailMode mode, double threshold = 0.01);

/// Removes `border` pixels from every side (no-op for 0).
RasterImage shave_border(const RasterImage& image, std::size_t border);

}  // namespace detailprior
