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

#include "detailprior/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "detailprior/color.hpp"
#include "detailprior/detail_solver.hpp"
#include "detailprior/error.hpp"
#include "linear_system.hpp"

namespace detailprior {
namespace {

constexpr double kWlsLogFloor = 1e-4;
constexpr double kWlsWeightFloor = 1e-4;
constexpr int kWlsIterations = 4;

Plane smooth_with(const Plane& y, BaselineMethod method, const BaselineParams& params,
                  std::size_t threads) {
  switch (method) {
    case BaselineMethod::kGuidedFilter:
      return guided_filter(y, y, params.radius, params.gif_epsilon);
    case BaselineMethod::kWlsSmooth:
      return wls_smooth(y, params.msdm_lambda, params.msdm_alpha, threads);
  }
  throw InvalidArgument("unknown baseline method");
}

AdditiveDecomposition decompose_plane(const Plane& y, BaselineMethod method,
                                      const BaselineParams& params, std::size_t threads) {
  AdditiveDecomposition out;
  out.base = smooth_with(y, method, params, threads);
  out.detail = y;
  for (std::size_t i = 0; i < y.size(); ++i) out.detail.samples()[i] -= out.base.samples()[i];
  out.method = method;
  out.params = params;
  return out;
}

}  // namespace

std::string_view to_string(BaselineMethod method) noexcept {
  switch (method) {
    case BaselineMethod::kGuidedFilter:
      return "gif";
    case BaselineMethod::kWlsSmooth:
      return "msdm";
  }
  return "unknown";
}

BaselineMethod parse_baseline_method(std::string_view name) {
  if (name == "gif") return BaselineMethod::kGuidedFilter;
  if (name == "msdm") return BaselineMethod::kWlsSmooth;
  throw InvalidArgument("unknown baseline method '" + std::string(name) +
                        "' (expected gif or msdm)");
}

Plane box_mean(const Plane& plane, int radius) {
  if (radius < 0) throw InvalidArgument("box_mean: radius must be >= 0");
  const std::size_t w = plane.width();
  const std::size_t h = plane.height();
  // integral[(y) * (w+1) + x] = sum of plane over [0, x) x [0, y)
  std::vector<double> integral((w + 1) * (h + 1), 0.0);
  for (std::size_t y = 0; y < h; ++y) {
    double row_sum = 0.0;
    for (std::size_t x = 0; x < w; ++x) {
      row_sum += plane.at(x, y);
      integral[(y + 1) * (w + 1) + x + 1] = integral[y * (w + 1) + x + 1] + row_sum;
    }
  }
  const auto r = static_cast<std::size_t>(radius);
  Plane out(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    const std::size_t y0 = y > r ? y - r : 0;
    const std::size_t y1 = std::min(h, y + r + 1);
    for (std::size_t x = 0; x < w; ++x) {
      const std::size_t x0 = x > r ? x - r : 0;
      const std::size_t x1 = std::min(w, x + r + 1);
      const double sum = integral[y1 * (w + 1) + x1] - integral[y0 * (w + 1) + x1] -
                         integral[y1 * (w + 1) + x0] + integral[y0 * (w + 1) + x0];
      out.at(x, y) = sum / static_cast<double>((y1 - y0) * (x1 - x0));
    }
  }
  return out;
}

Plane guided_filter(const Plane& p, const Plane& guide, int radius, double eps) {
  if (!p.same_shape(guide)) throw DimensionMismatch("guided_filter: input and guide differ in size");
  if (radius < 1) throw InvalidArgument("guided_filter: radius must be >= 1");
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw InvalidArgument("guided_filter: eps must be finite and > 0");
  }
  const std::size_t n = p.size();
  Plane in(p.width(), p.height());
  Plane gd(p.width(), p.height());
  Plane gp(p.width(), p.height());
  Plane gg(p.width(), p.height());
  for (std::size_t i = 0; i < n; ++i) {
    const double pi = p.samples()[i] / 255.0;
    const double gi = guide.samples()[i] / 255.0;
    in.samples()[i] = pi;
    gd.samples()[i] = gi;
    gp.samples()[i] = gi * pi;
    gg.samples()[i] = gi * gi;
  }
  const Plane mean_g = box_mean(gd, radius);
  const Plane mean_p = box_mean(in, radius);
  const Plane corr_gp = box_mean(gp, radius);
  const Plane corr_gg = box_mean(gg, radius);

  Plane a(p.width(), p.height());
  Plane b(p.width(), p.height());
  for (std::size_t i = 0; i < n; ++i) {
    const double mg = mean_g.samples()[i];
    const double mp = mean_p.samples()[i];
    const double cov = corr_gp.samples()[i] - mg * mp;
    const double var = std::max(corr_gg.samples()[i] - mg * mg, 0.0);
    a.samples()[i] = cov / (var + eps);
    b.samples()[i] = mp - a.samples()[i] * mg;
  }
  const Plane mean_a = box_mean(a, radius);
  const Plane mean_b = box_mean(b, radius);

  Plane out(p.width(), p.height());
  for (std::size_t i = 0; i < n; ++i) {
    out.samples()[i] = 255.0 * (mean_a.samples()[i] * gd.samples()[i] + mean_b.samples()[i]);
  }
  return out;
}

Plane wls_smooth(const Plane& y, double lambda_s, double alpha_exp, std::size_t threads) {
  if (!(lambda_s >= 0.0) || !std::isfinite(lambda_s)) {
    throw InvalidArgument("wls_smooth: lambda_s must be finite and >= 0");
  }
  if (!(alpha_exp > 0.0) || !std::isfinite(alpha_exp)) {
    throw InvalidArgument("wls_smooth: alpha_exp must be finite and > 0");
  }
  if (lambda_s == 0.0 || y.empty()) return y;

  const std::size_t w = y.width();
  const std::size_t h = y.height();
  Plane log_y(w, h);
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double s = y.samples()[i];
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw InvalidArgument("wls_smooth: samples must be finite and >= 0");
    }
    log_y.samples()[i] = std::log10(s / 255.0 + kWlsLogFloor);
  }
  auto weight = [&](double a, double b) {
    return 1.0 / (std::pow(std::abs(b - a), alpha_exp) + kWlsWeightFloor);
  };
  Plane wh(w - 1, h);
  Plane wv(w, h - 1);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c + 1 < w; ++c) wh.at(c, r) = weight(log_y.at(c, r), log_y.at(c + 1, r));
  }
  for (std::size_t r = 0; r + 1 < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) wv.at(c, r) = weight(log_y.at(c, r), log_y.at(c, r + 1));
  }

  if (y.size() <= kDenseSolveMaxPixels) {
    const Eigen::VectorXd rhs =
        Eigen::Map<const Eigen::VectorXd>(y.samples().data(), static_cast<Eigen::Index>(y.size()));
    const Eigen::VectorXd u = internal::solve_dense_spd(w, h, wh, wv, lambda_s, rhs);
    return Plane(w, h, std::vector<double>(u.data(), u.data() + u.size()));
  }
  Plane u = y;
  const auto schedule = lambda_schedule(lambda_s, kWlsIterations);
  internal::separable_passes(u, nullptr, wh, nullptr, wv, schedule, threads);
  return u;
}

AdditiveDecomposition additive_decompose(const RasterImage& image, BaselineMethod method,
                                         const BaselineParams& params, std::size_t threads) {
  return decompose_plane(luminance(image), method, params, threads);
}

std::vector<AdditiveDecomposition> additive_decompose_channels(const RasterImage& image,
                                                               BaselineMethod method,
                                                               const BaselineParams& params,
                                                               std::size_t threads) {
  std::vector<AdditiveDecomposition> out;
  out.reserve(image.channels());
  for (std::size_t c = 0; c < image.channels(); ++c) {
    out.push_back(decompose_plane(image.channel(c), method, params, threads));
  }
  return out;
}

RasterImage additive_merge(const RasterImage& image, const Plane& detail, double gain) {
  if (detail.width() != image.width() || detail.height() != image.height()) {
    throw DimensionMismatch("additive_merge: detail does not match image size");
  }
  Plane y = luminance(image);
  for (std::size_t i = 0; i < y.size(); ++i) y.samples()[i] += gain * detail.samples()[i];
  return with_luminance(image, y);
}

RasterImage additive_merge(const RasterImage& image, const AdditiveDecomposition& parts,
                           double gain) {
  if (!parts.base.same_shape(parts.detail) || parts.base.width() != image.width() ||
      parts.base.height() != image.height()) {
    throw DimensionMismatch("additive_merge: decomposition does not match image size");
  }
  Plane y = parts.base;
  for (std::size_t i = 0; i < y.size(); ++i) y.samples()[i] += gain * parts.detail.samples()[i];
  return with_luminance(image, y);
}

RasterImage additive_merge_channels(const RasterImage& image, const std::vector<Plane>& details,
                                    double gain) {
  if (details.size() != image.channels()) {
    throw DimensionMismatch("additive_merge_channels: need one detail plane per channel");
  }
  RasterImage out = image;
  for (std::size_t c = 0; c < image.channels(); ++c) {
    const Plane& d = details[c];
    if (d.width() != image.width() || d.height() != image.height()) {
      throw DimensionMismatch("additive_merge_channels: detail does not match image size");
    }
    Plane ch = image.channel(c);
    for (std::size_t i = 0; i < ch.size(); ++i) {
      ch.samples()[i] = std::clamp(ch.samples()[i] + gain * d.samples()[i], 0.0, 255.0);
    }
    out.set_channel(c, ch);
  }
  return out;
}

}  // namespace detailprior
