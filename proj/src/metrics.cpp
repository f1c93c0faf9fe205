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

#include "detailprior/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "detailprior/error.hpp"
#include "detailprior/resample.hpp"

namespace detailprior {
namespace {

constexpr std::size_t kSsimWindow = 11;
constexpr double kSsimSigma = 1.5;
constexpr double kSsimC1 = (0.01 * 255.0) * (0.01 * 255.0);
constexpr double kSsimC2 = (0.03 * 255.0) * (0.03 * 255.0);

std::array<double, kSsimWindow> gaussian_taps() {
  std::array<double, kSsimWindow> taps{};
  double total = 0.0;
  const double center = (kSsimWindow - 1) / 2.0;
  for (std::size_t i = 0; i < kSsimWindow; ++i) {
    const double d = static_cast<double>(i) - center;
    taps[i] = std::exp(-d * d / (2.0 * kSsimSigma * kSsimSigma));
    total += taps[i];
  }
  for (double& t : taps) t /= total;
  return taps;
}

// Separable "valid" Gaussian filtering: output is (W-10) x (H-10).
Plane filter_valid(const Plane& in, const std::array<double, kSsimWindow>& taps) {
  const std::size_t ow = in.width() - kSsimWindow + 1;
  const std::size_t oh = in.height() - kSsimWindow + 1;
  Plane horizontal(ow, in.height());
  for (std::size_t y = 0; y < in.height(); ++y) {
    auto src = in.row(y);
    for (std::size_t x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (std::size_t k = 0; k < kSsimWindow; ++k) acc += taps[k] * src[x + k];
      horizontal.at(x, y) = acc;
    }
  }
  Plane out(ow, oh);
  for (std::size_t y = 0; y < oh; ++y) {
    for (std::size_t x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (std::size_t k = 0; k < kSsimWindow; ++k) acc += taps[k] * horizontal.at(x, y + k);
      out.at(x, y) = acc;
    }
  }
  return out;
}

Plane product(const Plane& a, const Plane& b) {
  Plane out(a.width(), a.height());
  for (std::size_t i = 0; i < a.size(); ++i) out.samples()[i] = a.samples()[i] * b.samples()[i];
  return out;
}

}  // namespace

double psnr(const RasterImage& a, const RasterImage& b) {
  if (!a.same_shape(b)) throw DimensionMismatch("psnr: images differ in size or channels");
  if (a.samples().empty()) throw InvalidArgument("psnr: empty images");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.samples().size(); ++i) {
    const double d = a.samples()[i] - b.samples()[i];
    sum += d * d;
  }
  const double mse = sum / static_cast<double>(a.samples().size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double ssim(const Plane& a, const Plane& b) {
  if (!a.same_shape(b)) throw DimensionMismatch("ssim: planes differ in size");
  if (a.width() < kSsimWindow || a.height() < kSsimWindow) {
    throw InvalidArgument("ssim: planes must be at least 11x11");
  }
  static const auto taps = gaussian_taps();
  const Plane mu_a = filter_valid(a, taps);
  const Plane mu_b = filter_valid(b, taps);
  const Plane e_aa = filter_valid(product(a, a), taps);
  const Plane e_bb = filter_valid(product(b, b), taps);
  const Plane e_ab = filter_valid(product(a, b), taps);

  double total = 0.0;
  for (std::size_t i = 0; i < mu_a.size(); ++i) {
    const double ma = mu_a.samples()[i];
    const double mb = mu_b.samples()[i];
    const double var_a = e_aa.samples()[i] - ma * ma;
    const double var_b = e_bb.samples()[i] - mb * mb;
    const double cov = e_ab.samples()[i] - ma * mb;
    const double num = (2.0 * ma * mb + kSsimC1) * (2.0 * cov + kSsimC2);
    const double den = (ma * ma + mb * mb + kSsimC1) * (var_a + var_b + kSsimC2);
    total += num / den;
  }
  return total / static_cast<double>(mu_a.size());
}

std::string_view to_string(DetailMode mode) noexcept {
  return mode == DetailMode::kMultiplicative ? "multiplicative" : "additive";
}

DetailMode parse_detail_mode(std::string_view name) {
  if (name == "multiplicative" || name == "mult") return DetailMode::kMultiplicative;
  if (name == "additive" || name == "add") return DetailMode::kAdditive;
  throw InvalidArgument("unknown detail mode '" + std::string(name) +
                        "' (expected multiplicative or additive)");
}

SparsityStats sparsity_stats(const Plane& detail, DetailMode mode, double threshold) {
  if (detail.empty()) throw InvalidArgument("sparsity_stats: empty plane");
  if (!(threshold >= 0.0)) throw InvalidArgument("sparsity_stats: threshold must be >= 0");
  auto samples = detail.samples();
  double scale = 1.0;
  if (mode == DetailMode::kAdditive) {
    const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
    if (*hi > *lo) scale = *hi - *lo;
  }
  double sum = 0.0;
  std::size_t below = 0;
  for (double s : samples) {
    double m = 0.0;
    if (mode == DetailMode::kMultiplicative) {
      if (!(s > 0.0)) {
        throw InvalidArgument("sparsity_stats: multiplicative detail must be strictly positive");
      }
      m = std::abs(std::log2(s));
    } else {
      m = std::abs(s) / scale;
    }
    sum += m;
    if (m < threshold) ++below;
  }
  const auto n = static_cast<double>(samples.size());
  return {sum / n, static_cast<double>(below) / n, threshold};
}

RasterImage shave_border(const RasterImage& image, std::size_t border) {
  if (border == 0) return image;
  if (image.width() <= 2 * border || image.height() <= 2 * border) {
    throw InvalidArgument("shave_border: border " + std::to_string(border) +
                          " leaves nothing of a " + std::to_string(image.width()) + "x" +
                          std::to_string(image.height()) + " image");
  }
  return crop(image, border, border, image.width() - 2 * border, image.height() - 2 * border);
}

}  // namespace detailprior
