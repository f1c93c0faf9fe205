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
#include <vector>

#include "detailprior/plane.hpp"

namespace detailprior {

/// Additive edge-preserving decompositions used for comparison.
enum class BaselineMethod {
  kGuidedFilter,  // "gif"
  kWlsSmooth,     // "msdm"
};

std::string_view to_string(BaselineMethod method) noexcept;
/// Accepts "gif" and "msdm"; throws InvalidArgument otherwise.
BaselineMethod parse_baseline_method(std::string_view name);

struct BaselineParams {
  int radius = 2;             // guided filter window radius
  double gif_epsilon = 0.3;   // guided filter regulariser on the [0, 1] scale
  double msdm_lambda = 1.0;   // WLS smoothing weight
  double msdm_alpha = 1.2;    // WLS gradient exponent
};

struct AdditiveDecomposition {
  Plane base;
  Plane detail;  // signed; base + detail == source
  BaselineMethod method = BaselineMethod::kGuidedFilter;
  BaselineParams params;
};

/// Guided filter with square windows of side 2r+1. Inputs are on the
/// [0, 255] scale and are normalised to [0, 1] internally, so `eps` is on the
/// unit scale. Windows shrink at the borders.
Plane guided_filter(const Plane& p, const Plane& guide, int radius, double eps);

/// Mean over the (2r+1)^2 window clipped to the plane, via an integral image.
Plane box_mean(const Plane& plane, int radius);

/// Edge-preserving WLS smoothing:
///   min sum (u - y)^2 + lambda_s * sum w (du)^2,
///   w = 1 / (|d log10(y/255 + 1e-4)|^alpha_exp + 1e-4).
/// Planes up to 4096 pixels are solved exactly; larger ones with the
/// separable alternating scheme (T = 4).
Plane wls_smooth(const Plane& y, double lambda_s, double alpha_exp, std::size_t threads = 1);

/// base = smoother(Y), detail = Y - base.
AdditiveDecomposition additive_decompose(const RasterImage& image, BaselineMethod method,
                                         const BaselineParams& params = {},
                                         std::size_t threads = 1);

/// Per-channel variant: one decomposition for each colour channel of the
/// raw image instead of luminance.
std::vector<AdditiveDecomposition> additive_decompose_channels(const RasterImage& image,
                                                               BaselineMethod method,
                                                               const BaselineParams& params = {},
                                                               std::size_t threads = 1);

/// Y' = clamp(Y + gain * detail, 0, 255); chroma untouched.
RasterImage additive_merge(const RasterImage& image, const Plane& detail, double gain = 1.0);

/// Y' = clamp(base + gain * detail, 0, 255) with the chroma of `image`, so
/// gain 1 rebuilds the decomposed source.
RasterImage additive_merge(const RasterImage& image, const AdditiveDecomposition& parts,
                           double gain = 1.0);

/// Channel-wise counterpart of additive_merge for additive_decompose_channels.
RasterImage additive_merge_channels(const RasterImage& image, const std::vector<Plane>& details,
                                    double gain = 1.0);

}  // namespace detailprior
