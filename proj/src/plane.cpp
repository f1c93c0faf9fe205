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

#include "detailprior/plane.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "detailprior/error.hpp"

namespace detailprior {

Plane::Plane(std::size_t width, std::size_t height, std::vector<double> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
  if (samples_.size() != width * height) {
    throw DimensionMismatch("plane of " + std::to_string(width) + "x" + std::to_string(height) +
                            " given " + std::to_string(samples_.size()) + " samples");
  }
}

RasterImage::RasterImage(std::size_t width, std::size_t height, std::size_t channels, double fill)
    : width_(width), height_(height), channels_(channels),
      samples_(width * height * channels, fill) {
  if (channels != 1 && channels != 3) {
    throw InvalidArgument("image must have 1 or 3 channels, got " + std::to_string(channels));
  }
}

RasterImage::RasterImage(std::size_t width, std::size_t height, std::size_t channels,
                         std::vector<double> samples)
    : width_(width), height_(height), channels_(channels), samples_(std::move(samples)) {
  if (channels != 1 && channels != 3) {
    throw InvalidArgument("image must have 1 or 3 channels, got " + std::to_string(channels));
  }
  if (samples_.size() != width * height * channels) {
    throw DimensionMismatch("image of " + std::to_string(width) + "x" + std::to_string(height) +
                            "x" + std::to_string(channels) + " given " +
                            std::to_string(samples_.size()) + " samples");
  }
}

Plane RasterImage::channel(std::size_t c) const {
  if (c >= channels_) throw InvalidArgument("channel index out of range");
  Plane out(width_, height_);
  auto dst = out.samples();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = samples_[i * channels_ + c];
  return out;
}

void RasterImage::set_channel(std::size_t c, const Plane& plane) {
  if (c >= channels_) throw InvalidArgument("channel index out of range");
  if (plane.width() != width_ || plane.height() != height_) {
    throw DimensionMismatch("plane does not match image size");
  }
  auto src = plane.samples();
  for (std::size_t i = 0; i < src.size(); ++i) samples_[i * channels_ + c] = src[i];
}

void clamp_samples(RasterImage& image) noexcept {
  for (double& s : image.samples()) s = std::clamp(s, 0.0, 255.0);
}

RasterImage quantize_8bit(const RasterImage& image) {
  RasterImage out = image;
  for (double& s : out.samples()) s = std::round(std::clamp(s, 0.0, 255.0));
  return out;
}

}  // namespace detailprior
