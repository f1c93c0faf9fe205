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

#include "detailprior/detail_solver.hpp"
#include "detailprior/plane.hpp"

namespace detailprior {

/// Strictly positive, single-channel multiplicative detail layer
/// (2 raised to the log-domain solution) with the parameters that made it.
struct DetailLayer {
  Plane values;
  SolverParams params;
};

struct EnhancementConfig {
  double gain = 1.0;  // exponent applied to the detail layer, >= 0
};

/// Luminance -> vector field -> fast separable solve -> 2^x.
DetailLayer extract_detail(const RasterImage& image, const SolverParams& params = {},
                           std::size_t threads = 1);

/// Same pipeline with the dense solver. Limited to kDenseSolveMaxPixels.
DetailLayer extract_detail_exact(const RasterImage& image, const SolverParams& params = {});

/// Elementwise 2^x.
Plane exponentiate(const LogDetailPlane& log_detail);

/// Y' = clamp(Y * detail^gain, 0, 255) on luminance; chroma untouched.
RasterImage enhance(const RasterImage& image, const DetailLayer& detail,
                    const EnhancementConfig& config = {});
RasterImage enhance(const RasterImage& image, const Plane& detail,
                    const EnhancementConfig& config = {});

/// Y / detail, so that base * detail reproduces Y.
Plane base_layer(const RasterImage& image, const DetailLayer& detail);
Plane base_layer(const RasterImage& image, const Plane& detail);

}  // namespace detailprior
