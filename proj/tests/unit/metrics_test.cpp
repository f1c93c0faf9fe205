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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "detailprior/error.hpp"
#include "detailprior/metrics.hpp"
#include "test_support.hpp"

namespace detailprior {
namespace {

TEST(Psnr, ReferenceValues) {
  std::mt19937 rng(1);
  const RasterImage a = testing::random_image(16, 16, 3, rng);
  EXPECT_EQ(psnr(a, a), std::numeric_limits<double>::infinity());

  RasterImage b = a;
  for (double& s : b.samples()) s += (s < 255.0) ? 1.0 : -1.0;
  EXPECT_NEAR(psnr(a, b), 20.0 * std::log10(255.0), 1e-9);
  EXPECT_NEAR(psnr(a, b), 48.1308, 1e-3);

  EXPECT_NEAR(psnr(RasterImage(4, 4, 1, 0.0), RasterImage(4, 4, 1, 255.0)), 0.0, 1e-12);
}

TEST(Psnr, SymmetricAndValidated) {
  std::mt19937 rng(2);
  for (int i = 0; i < 10; ++i) {
    const RasterImage a = testing::random_image(9, 7, 3, rng);
    const RasterImage b = testing::random_image(9, 7, 3, rng);
    EXPECT_EQ(psnr(a, b), psnr(b, a));
  }
  EXPECT_THROW(psnr(RasterImage(2, 2, 1), RasterImage(2, 2, 3)), DimensionMismatch);
  EXPECT_THROW(psnr(RasterImage(2, 2, 1), RasterImage(3, 2, 1)), DimensionMismatch);
}

TEST(Ssim, IdentityAndSymmetry) {
  std::mt19937 rng(3);
  for (int i = 0; i < 5; ++i) {
    const Plane a = testing::random_plane(24, 20, rng);
    const Plane b = testing::random_plane(24, 20, rng);
    EXPECT_NEAR(ssim(a, a), 1.0, 1e-12);
    EXPECT_NEAR(ssim(a, b), ssim(b, a), 1e-12);
    EXPECT_LT(ssim(a, b), 0.5);
  }
  EXPECT_NEAR(ssim(Plane(16, 16, 128.0), Plane(16, 16, 128.0)), 1.0, 1e-12);
}

TEST(Ssim, MeanShiftIsPenalised) {
  std::mt19937 rng(4);
  const Plane a = testing::random_plane(20, 20, rng, 50.0, 150.0);
  Plane b = a;
  for (double& s : b.samples()) s += 40.0;
  const double score = ssim(a, b);
  EXPECT_LT(score, 1.0);
  EXPECT_GT(score, 0.5);
}

TEST(Ssim, RejectsSmallOrMismatchedPlanes) {
  EXPECT_THROW(ssim(Plane(10, 20), Plane(10, 20)), InvalidArgument);
  EXPECT_THROW(ssim(Plane(20, 20), Plane(21, 20)), DimensionMismatch);
}

TEST(Sparsity, ReferenceCases) {
  const SparsityStats unit = sparsity_stats(Plane(8, 8, 1.0), DetailMode::kMultiplicative);
  EXPECT_EQ(unit.l1_mean, 0.0);
  EXPECT_EQ(unit.near_zero_fraction, 1.0);
  EXPECT_EQ(unit.threshold, 0.01);

  const SparsityStats zero = sparsity_stats(Plane(8, 8, 0.0), DetailMode::kAdditive);
  EXPECT_EQ(zero.near_zero_fraction, 1.0);

  const SparsityStats half =
      sparsity_stats(Plane(4, 1, std::vector<double>{1.0, 2.0, 1.0, 2.0}), DetailMode::kMultiplicative);
  EXPECT_EQ(half.near_zero_fraction, 0.5);
  EXPECT_EQ(half.l1_mean, 0.5);
}

TEST(Sparsity, AdditiveNormalisesByRange) {
  const Plane d(4, 1, std::vector<double>{-50.0, 0.5, 50.0, 0.9});
  const SparsityStats s = sparsity_stats(d, DetailMode::kAdditive, 0.01);
  EXPECT_EQ(s.near_zero_fraction, 0.5);
  EXPECT_NEAR(s.l1_mean, (0.5 + 0.005 + 0.5 + 0.009) / 4.0, 1e-15);
}

TEST(Sparsity, BoundsAndValidation) {
  std::mt19937 rng(5);
  const Plane d = testing::random_plane(10, 10, rng, 0.1, 4.0);
  for (double t : {0.0, 0.01, 0.5, 10.0}) {
    const SparsityStats s = sparsity_stats(d, DetailMode::kMultiplicative, t);
    EXPECT_GE(s.near_zero_fraction, 0.0);
    EXPECT_LE(s.near_zero_fraction, 1.0);
    EXPECT_GE(s.l1_mean, 0.0);
  }
  EXPECT_THROW(sparsity_stats(Plane(2, 2, 0.0), DetailMode::kMultiplicative), InvalidArgument);
  EXPECT_THROW(sparsity_stats(d, DetailMode::kMultiplicative, -1.0), InvalidArgument);
}

TEST(DetailModeNames, Parse) {
  EXPECT_EQ(parse_detail_mode("multiplicative"), DetailMode::kMultiplicative);
  EXPECT_EQ(parse_detail_mode("mult"), DetailMode::kMultiplicative);
  EXPECT_EQ(parse_detail_mode("additive"), DetailMode::kAdditive);
  EXPECT_EQ(parse_detail_mode("add"), DetailMode::kAdditive);
  EXPECT_EQ(parse_detail_mode(to_string(DetailMode::kAdditive)), DetailMode::kAdditive);
  EXPECT_THROW(parse_detail_mode("log"), InvalidArgument);
}

TEST(ShaveBorder, CropsEverySide) {
  const RasterImage img(10, 8, 3, 1.0);
  const RasterImage s = shave_border(img, 2);
  EXPECT_EQ(s.width(), 6u);
  EXPECT_EQ(s.height(), 4u);
  EXPECT_EQ(shave_border(img, 0), img);
  EXPECT_THROW(shave_border(img, 4), InvalidArgument);
}

}  // namespace
}  // namespace detailprior
