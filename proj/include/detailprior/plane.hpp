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
#include <span>
#include <vector>

namespace detailprior {

/// Row-major 2-D grid of real samples. Used for luminance, chroma, gradient
/// fields, weights and detail layers alike.
class Plane {
 public:
  Plane() = default;
  Plane(std::size_t width, std::size_t height, double fill = 0.0)
      : width_(width), height_(height), samples_(width * height, fill) {}
  /// Takes ownership of `samples`; throws DimensionMismatch if the length is
  /// not width * height.
  Plane(std::size_t width, std::size_t height, std::vector<double> samples);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }

  double& at(std::size_t x, std::size_t y) noexcept { return samples_[y * width_ + x]; }
  double at(std::size_t x, std::size_t y) const noexcept { return samples_[y * width_ + x]; }

  std::span<double> row(std::size_t y) noexcept {
    return {samples_.data() + y * width_, width_};
  }
  std::span<const double> row(std::size_t y) const noexcept {
    return {samples_.data() + y * width_, width_};
  }

  std::span<double> samples() noexcept { return samples_; }
  std::span<const double> samples() const noexcept { return samples_; }

  bool same_shape(const Plane& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> samples_;
};

/// Interleaved image with 1 (gray) or 3 (RGB) channels and samples on the
/// 8-bit scale [0, 255].
class RasterImage {
 public:
  RasterImage() = default;
  RasterImage(std::size_t width, std::size_t height, std::size_t channels, double fill = 0.0);
  RasterImage(std::size_t width, std::size_t height, std::size_t channels,
              std::vector<double> samples);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t channels() const noexcept { return channels_; }
  std::size_t pixel_count() const noexcept { return width_ * height_; }

  double& at(std::size_t x, std::size_t y, std::size_t c) noexcept {
    return samples_[(y * width_ + x) * channels_ + c];
  }
  double at(std::size_t x, std::size_t y, std::size_t c) const noexcept {
    return samples_[(y * width_ + x) * channels_ + c];
  }

  std::span<double> samples() noexcept { return samples_; }
  std::span<const double> samples() const noexcept { return samples_; }

  /// Copies one channel out as a plane.
  Plane channel(std::size_t c) const;
  /// Overwrites one channel from a plane of matching size.
  void set_channel(std::size_t c, const Plane& plane);

  bool same_shape(const RasterImage& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_ && channels_ == other.channels_;
  }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::size_t channels_ = 0;
  std::vector<double> samples_;
};

/// Clamps every sample to [0, 255].
void clamp_samples(RasterImage& image) noexcept;

/// Rounds every sample half away from zero after clamping to [0, 255].
RasterImage quantize_8bit(const RasterImage& image);

}  // namespace detailprior
