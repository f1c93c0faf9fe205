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

#include "detailprior/detail_prior.hpp"

#include <cmath>
#include <string>

#include "detailprior/color.hpp"
#include "detailprior/error.hpp"

namespace detailprior {
namespace {

void check_extractable(const RasterImage& image) {
  if (image.width() < 2 || image.height() < 2) {
    throw InvalidArgument("detail extraction needs an image of at least 2x2, got " +
                          std::to_string(image.width()) + "x" + std::to_string(image.height()));
  }
}

void check_detail_shape(const RasterImage& image, const Plane& detail) {
  if (detail.width() != image.width() || detail.height() != image.height()) {
    throw DimensionMismatch("detail layer is " + std::to_string(detail.width()) + "x" +
                            std::to_string(detail.height()) + " but image is " +
                            std::to_string(image.width()) + "x" + std::to_string(image.height()));
  }
}

}  // namespace

Plane exponentiate(const LogDetailPlane& log_detail) {
  Plane out = log_detail.values;
  for (double& s : out.samples()) s = std::exp2(s);
  return out;
}

DetailLayer extract_detail(const RasterImage& image, const SolverParams& params,
                           std::size_t threads) {
  params.validate();
  check_extractable(image);
  const VectorField field = build_vector_field(luminance(image), params.alpha);
  const FidelityWeights weights = fidelity_weights(field, params.gamma, params.epsilon);
  return {exponentiate(solve_fast(field, weights, params, threads)), params};
}

DetailLayer extract_detail_exact(const RasterImage& image, const SolverParams& params) {
  params.validate();
  check_extractable(image);
  if (image.pixel_count() > kDenseSolveMaxPixels) {
    throw InvalidArgument("exact extraction is limited to " +
                          std::to_string(kDenseSolveMaxPixels) + " pixels");
  }
  const VectorField field = build_vector_field(luminance(image), params.alpha);
  const FidelityWeights weights = fidelity_weights(field, params.gamma, params.epsilon);
  return {exponentiate(solve_dense(field, weights, params.lambda)), params};
}

RasterImage enhance(const RasterImage& image, const DetailLayer& detail,
                    const EnhancementConfig& config) {
  return enhance(image, detail.values, config);
}

RasterImage enhance(const RasterImage& image, const Plane& detail,
                    const EnhancementConfig& config) {
  if (!(config.gain >= 0.0) || !std::isfinite(config.gain)) {
    throw InvalidArgument("enhancement gain must be finite and >= 0");
  }
  check_detail_shape(image, detail);
  Plane y = luminance(image);
  auto ys = y.samples();
  auto ds = detail.samples();
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (!(ds[i] > 0.0)) throw InvalidArgument("detail layer must be strictly positive");
    ys[i] *= std::pow(ds[i], config.gain);
  }
  return with_luminance(image, y);
}

Plane base_layer(const RasterImage& image, const DetailLayer& detail) {
  return base_layer(image, detail.values);
}

Plane base_layer(const RasterImage& image, const Plane& detail) {
  check_detail_shape(image, detail);
  Plane y = luminance(image);
  auto ys = y.samples();
  auto ds = detail.samples();
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (!(ds[i] > 0.0)) throw InvalidArgument("detail layer must be strictly positive");
    ys[i] /= ds[i];
  }
  return y;
}

}  // namespace detailprior
