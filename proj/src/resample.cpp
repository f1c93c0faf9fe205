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

#include "detailprior/resample.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "detailprior/error.hpp"

namespace detailprior {
namespace {

constexpr double kCubicA = -0.5;

double cubic(double x) {
  const double ax = std::abs(x);
  const double ax2 = ax * ax;
  const double ax3 = ax2 * ax;
  if (ax <= 1.0) return (kCubicA + 2.0) * ax3 - (kCubicA + 3.0) * ax2 + 1.0;
  if (ax < 2.0) return kCubicA * ax3 - 5.0 * kCubicA * ax2 + 8.0 * kCubicA * ax - 4.0 * kCubicA;
  return 0.0;
}

// Normalised taps contributing to one output sample.
struct Contribution {
  std::vector<std::size_t> index;
  std::vector<double> weight;
};

std::vector<Contribution> contributions(std::size_t in_size, std::size_t out_size) {
  const double scale = static_cast<double>(out_size) / static_cast<double>(in_size);
  const double stretch = scale < 1.0 ? scale : 1.0;
  const double half_width = 2.0 / stretch;
  const auto last = static_cast<long long>(in_size) - 1;

  std::vector<Contribution> out(out_size);
  for (std::size_t i = 0; i < out_size; ++i) {
    const double center = (static_cast<double>(i) + 0.5) / scale - 0.5;
    const auto first = static_cast<long long>(std::floor(center - half_width));
    const auto end = static_cast<long long>(std::ceil(center + half_width));
    Contribution& c = out[i];
    double total = 0.0;
    for (long long j = first; j <= end; ++j) {
      const double w = stretch * cubic(stretch * (center - static_cast<double>(j)));
      if (w == 0.0) continue;
      c.index.push_back(static_cast<std::size_t>(std::clamp(j, 0LL, last)));
      c.weight.push_back(w);
      total += w;
    }
    for (double& w : c.weight) w /= total;
  }
  return out;
}

}  // namespace

Plane bicubic_resize(const Plane& plane, std::size_t out_width, std::size_t out_height) {
  if (out_width == 0 || out_height == 0) {
    throw InvalidArgument("bicubic_resize: output size must be at least 1x1");
  }
  if (plane.empty()) throw InvalidArgument("bicubic_resize: empty input plane");

  const auto cols = contributions(plane.width(), out_width);
  const auto rows = contributions(plane.height(), out_height);

  Plane horizontal(out_width, plane.height());
  for (std::size_t y = 0; y < plane.height(); ++y) {
    auto src = plane.row(y);
    auto dst = horizontal.row(y);
    for (std::size_t x = 0; x < out_width; ++x) {
      const Contribution& c = cols[x];
      double acc = 0.0;
      for (std::size_t k = 0; k < c.index.size(); ++k) acc += c.weight[k] * src[c.index[k]];
      dst[x] = acc;
    }
  }

  Plane out(out_width, out_height);
  for (std::size_t y = 0; y < out_height; ++y) {
    const Contribution& c = rows[y];
    auto dst = out.row(y);
    for (std::size_t k = 0; k < c.index.size(); ++k) {
      auto src = horizontal.row(c.index[k]);
      const double w = c.weight[k];
      for (std::size_t x = 0; x < out_width; ++x) dst[x] += w * src[x];
    }
  }
  return out;
}

RasterImage bicubic_resize(const RasterImage& image, std::size_t out_width,
                           std::size_t out_height) {
  RasterImage out(out_width, out_height, image.channels());
  for (std::size_t c = 0; c < image.channels(); ++c) {
    out.set_channel(c, bicubic_resize(image.channel(c), out_width, out_height));
  }
  clamp_samples(out);
  return out;
}

RasterImage crop(const RasterImage& image, std::size_t x0, std::size_t y0, std::size_t width,
                 std::size_t height) {
  if (x0 + width > image.width() || y0 + height > image.height()) {
    throw InvalidArgument("crop window exceeds image bounds");
  }
  RasterImage out(width, height, image.channels());
  const std::size_t ch = image.channels();
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      for (std::size_t c = 0; c < ch; ++c) out.at(x, y, c) = image.at(x0 + x, y0 + y, c);
    }
  }
  return out;
}

Plane crop(const Plane& plane, std::size_t x0, std::size_t y0, std::size_t width,
           std::size_t height) {
  if (x0 + width > plane.width() || y0 + height > plane.height()) {
    throw InvalidArgument("crop window exceeds plane bounds");
  }
  Plane out(width, height);
  for (std::size_t y = 0; y < height; ++y) {
    auto src = plane.row(y0 + y).subspan(x0, width);
    std::copy(src.begin(), src.end(), out.row(y).begin());
  }
  return out;
}

RasterImage mod_crop(const RasterImage& image, std::size_t factor) {
  if (factor == 0) throw InvalidArgument("mod_crop: factor must be >= 1");
  if (image.width() < factor || image.height() < factor) {
    throw InvalidArgument("mod_crop: " + std::to_string(image.width()) + "x" +
                          std::to_string(image.height()) + " image is smaller than factor " +
                          std::to_string(factor));
  }
  const std::size_t w = image.width() - image.width() % factor;
  const std::size_t h = image.height() - image.height() % factor;
  if (w == image.width() && h == image.height()) return image;
  return crop(image, 0, 0, w, h);
}

RasterImage center_crop(const RasterImage& image, std::size_t width, std::size_t height) {
  const std::size_t w = std::min(width, image.width());
  const std::size_t h = std::min(height, image.height());
  return crop(image, (image.width() - w) / 2, (image.height() - h) / 2, w, h);
}

}  // namespace detailprior
