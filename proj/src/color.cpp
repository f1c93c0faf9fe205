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

#include "detailprior/color.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "detailprior/error.hpp"

namespace detailprior {
namespace {

using Matrix3 = std::array<std::array<double, 3>, 3>;

// Rows produce (Y, Cb, Cr) offsets from RGB on the 8-bit scale.
constexpr Matrix3 kForward = {{
    {65.481 / 255.0, 128.553 / 255.0, 24.966 / 255.0},
    {-37.797 / 255.0, -74.203 / 255.0, 112.0 / 255.0},
    {112.0 / 255.0, -93.786 / 255.0, -18.214 / 255.0},
}};
constexpr std::array<double, 3> kOffset = {16.0, 128.0, 128.0};

constexpr Matrix3 invert(const Matrix3& m) {
  const double c00 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  const double c01 = m[1][2] * m[2][0] - m[1][0] * m[2][2];
  const double c02 = m[1][0] * m[2][1] - m[1][1] * m[2][0];
  const double det = m[0][0] * c00 + m[0][1] * c01 + m[0][2] * c02;
  Matrix3 inv{};
  inv[0][0] = c00 / det;
  inv[1][0] = c01 / det;
  inv[2][0] = c02 / det;
  inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
  inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
  inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
  inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
  inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
  inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
  return inv;
}

constexpr Matrix3 kInverse = invert(kForward);

}  // namespace

YCbCrPlanes rgb_to_ycbcr(const RasterImage& image) {
  if (image.channels() != 3) {
    throw InvalidArgument("rgb_to_ycbcr needs 3 channels, got " +
                          std::to_string(image.channels()));
  }
  const std::size_t w = image.width();
  const std::size_t h = image.height();
  YCbCrPlanes out{Plane(w, h), Plane(w, h), Plane(w, h)};
  auto src = image.samples();
  auto y = out.y.samples();
  auto cb = out.cb.samples();
  auto cr = out.cr.samples();
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = src[3 * i], g = src[3 * i + 1], b = src[3 * i + 2];
    y[i] = kOffset[0] + kForward[0][0] * r + kForward[0][1] * g + kForward[0][2] * b;
    cb[i] = kOffset[1] + kForward[1][0] * r + kForward[1][1] * g + kForward[1][2] * b;
    cr[i] = kOffset[2] + kForward[2][0] * r + kForward[2][1] * g + kForward[2][2] * b;
  }
  return out;
}

RasterImage ycbcr_to_rgb(const Plane& y, const Plane& cb, const Plane& cr) {
  if (!y.same_shape(cb) || !y.same_shape(cr)) {
    throw DimensionMismatch("ycbcr_to_rgb: Y, Cb and Cr planes differ in size");
  }
  RasterImage out(y.width(), y.height(), 3);
  auto dst = out.samples();
  auto ys = y.samples();
  auto cbs = cb.samples();
  auto crs = cr.samples();
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double d0 = ys[i] - kOffset[0], d1 = cbs[i] - kOffset[1], d2 = crs[i] - kOffset[2];
    for (std::size_t c = 0; c < 3; ++c) {
      const double v = kInverse[c][0] * d0 + kInverse[c][1] * d1 + kInverse[c][2] * d2;
      dst[3 * i + c] = std::clamp(v, 0.0, 255.0);
    }
  }
  return out;
}

Plane luminance(const RasterImage& image) {
  if (image.channels() == 1) return image.channel(0);
  return rgb_to_ycbcr(image).y;
}

RasterImage with_luminance(const RasterImage& image, const Plane& y) {
  if (y.width() != image.width() || y.height() != image.height()) {
    throw DimensionMismatch("luminance plane does not match image size");
  }
  Plane clamped = y;
  for (double& s : clamped.samples()) s = std::clamp(s, 0.0, 255.0);
  if (image.channels() == 1) {
    RasterImage out = image;
    out.set_channel(0, clamped);
    return out;
  }
  YCbCrPlanes planes = rgb_to_ycbcr(image);
  planes.y = std::move(clamped);
  return ycbcr_to_rgb(planes);
}

}  // namespace detailprior
