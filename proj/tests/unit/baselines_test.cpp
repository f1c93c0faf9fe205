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

#include <algorithm>
#include <random>

#include "detailprior/baselines.hpp"
#include "detailprior/color.hpp"
#include "detailprior/error.hpp"
#include "test_support.hpp"

namespace detailprior {
namespace {

TEST(BaselineMethodNames, RoundTrip) {
  for (auto m : {BaselineMethod::kGuidedFilter, BaselineMethod::kWlsSmooth}) {
    EXPECT_EQ(parse_baseline_method(to_string(m)), m);
  }
  EXPECT_THROW(parse_baseline_method("bilateral"), InvalidArgument);
}

TEST(BoxMean, ShrinkingWindows) {
  const Plane p(3, 1, std::vector<double>{1.0, 2.0, 6.0});
  const Plane m = box_mean(p, 1);
  EXPECT_DOUBLE_EQ(m.samples()[0], 1.5);
  EXPECT_DOUBLE_EQ(m.samples()[1], 3.0);
  EXPECT_DOUBLE_EQ(m.samples()[2], 4.0);
  EXPECT_EQ(box_mean(p, 0), p);
}

TEST(GuidedFilter, ConstantInputIsFixed) {
  const Plane c(9, 7, 42.0);
  const Plane out = guided_filter(c, c, 2, 0.3);
  for (double s : out.samples()) EXPECT_NEAR(s, 42.0, 1e-9);
}

TEST(GuidedFilter, FlatGuideGivesDoubleBoxMean) {
  std::mt19937 rng(1);
  const Plane p = testing::random_plane(16, 16, rng);
  const Plane expected = box_mean(box_mean(p, 2), 2);
  const Plane flat_guide = guided_filter(p, Plane(16, 16, 10.0), 2, 0.3);
  EXPECT_LE(testing::max_abs_diff(flat_guide.samples(), expected.samples()), 1e-9);

  const Plane loose = guided_filter(p, testing::random_plane(16, 16, rng), 2, 1e9);
  EXPECT_LE(testing::max_abs_diff(loose.samples(), expected.samples()), 1e-6 * 255.0);
}

TEST(GuidedFilter, SelfGuidedStaysInRange) {
  for (const auto& path : testing::corpus_files()) {
    const Plane y = luminance(load_image(path));
    const auto [lo, hi] = std::minmax_element(y.samples().begin(), y.samples().end());
    for (double eps : {1e-4, 0.01, 0.3}) {
      for (const auto held = guided_filter(y, y, 2, eps); double s : held.samples()) {
        ASSERT_GE(s, *lo - 1e-9);
        ASSERT_LE(s, *hi + 1e-9);
      }
    }
  }
}

TEST(GuidedFilter, Validation) {
  EXPECT_THROW(guided_filter(Plane(3, 3), Plane(3, 4), 1, 0.1), DimensionMismatch);
  EXPECT_THROW(guided_filter(Plane(3, 3), Plane(3, 3), -1, 0.1), InvalidArgument);
  EXPECT_THROW(guided_filter(Plane(3, 3), Plane(3, 3), 1, 0.0), InvalidArgument);
}

TEST(WlsSmooth, IdentityCases) {
  std::mt19937 rng(2);
  const Plane y = testing::random_plane(20, 14, rng);
  EXPECT_EQ(wls_smooth(y, 0.0, 1.2), y);
  const Plane c(20, 14, 60.0);
  for (const auto held = wls_smooth(c, 1.0, 1.2); double s : held.samples()) EXPECT_NEAR(s, 60.0, 1e-9);
  const Plane big(90, 70, 60.0);
  for (const auto held = wls_smooth(big, 1.0, 1.2); double s : held.samples()) EXPECT_NEAR(s, 60.0, 1e-9);
}

TEST(WlsSmooth, TwoSampleClosedForm) {
  const Plane y(2, 1, std::vector<double>{0.0, 100.0});
  const double dl = std::log10(100.0 / 255.0 + 1e-4) - std::log10(1e-4);
  const double w = 1.0 / (std::pow(dl, 1.2) + 1e-4);
  EXPECT_NEAR(w, 0.2154563171708961, 1e-13);
  const double shift = 100.0 * w / (1.0 + 2.0 * w);
  const Plane u = wls_smooth(y, 1.0, 1.2);
  EXPECT_NEAR(u.samples()[0], shift, 1e-10);
  EXPECT_NEAR(u.samples()[1], 100.0 - shift, 1e-10);
  EXPECT_NEAR(u.samples()[0], 15.057265691836186, 1e-9);
}

TEST(WlsSmooth, LargePlanesUseDeterministicSeparableScheme) {
  std::mt19937 rng(3);
  const Plane y = testing::random_plane(80, 60, rng);
  const Plane one = wls_smooth(y, 1.0, 1.2, 1);
  EXPECT_EQ(one, wls_smooth(y, 1.0, 1.2, 4));
  const auto [lo, hi] = std::minmax_element(y.samples().begin(), y.samples().end());
  for (double s : one.samples()) {
    EXPECT_GE(s, *lo - 1e-9);
    EXPECT_LE(s, *hi + 1e-9);
  }
}

TEST(AdditiveDecompose, ConstantImagesHaveZeroDetail) {
  for (auto m : {BaselineMethod::kGuidedFilter, BaselineMethod::kWlsSmooth}) {
    const AdditiveDecomposition d = additive_decompose(RasterImage(12, 10, 3, 99.0), m);
    for (double s : d.detail.samples()) EXPECT_NEAR(s, 0.0, 1e-9);
    EXPECT_EQ(d.method, m);
  }
}

TEST(AdditiveDecompose, ReconstructsAndRoundTrips) {
  for (const auto& path : testing::corpus_files()) {
    const RasterImage img = load_image(path);
    const Plane y = luminance(img);
    for (auto m : {BaselineMethod::kGuidedFilter, BaselineMethod::kWlsSmooth}) {
      const AdditiveDecomposition d = additive_decompose(img, m);
      for (std::size_t i = 0; i < y.size(); ++i) {
        ASSERT_NEAR(d.base.samples()[i] + d.detail.samples()[i], y.samples()[i], 1e-9);
      }
      const RasterImage merged = quantize_8bit(additive_merge(img, d, 1.0));
      ASSERT_LE(testing::max_abs_diff(img.samples(), merged.samples()), 0.5) << path;
      const RasterImage same = quantize_8bit(additive_merge(img, d.detail, 0.0));
      ASSERT_LE(testing::max_abs_diff(img.samples(), same.samples()), 0.5) << path;
    }
  }
}

TEST(AdditiveDecompose, GuidedFilterDetailHasNegativeEntries) {
  const RasterImage img = load_image(testing::corpus_files().front());
  const AdditiveDecomposition d = additive_decompose(img, BaselineMethod::kGuidedFilter);
  EXPECT_LT(*std::min_element(d.detail.samples().begin(), d.detail.samples().end()), 0.0);
}

TEST(AdditiveMerge, ZeroDetailIsIdentityForAnyGain) {
  std::mt19937 rng(4);
  const RasterImage img = testing::random_image(10, 6, 3, rng);
  const RasterImage out = quantize_8bit(additive_merge(img, Plane(10, 6), 2.0));
  EXPECT_LE(testing::max_abs_diff(img.samples(), out.samples()), 0.5);
  EXPECT_THROW(additive_merge(img, Plane(10, 5), 1.0), DimensionMismatch);
}

TEST(AdditiveMerge, GainScalesDetailOnTopOfTheInput) {
  const RasterImage img(2, 1, 1, std::vector<double>{100.0, 100.0});
  const RasterImage out = additive_merge(img, Plane(2, 1, std::vector<double>{3.0, -500.0}), 2.0);
  EXPECT_EQ(out.samples()[0], 106.0);
  EXPECT_EQ(out.samples()[1], 0.0);
}

TEST(AdditiveChannels, PerChannelRoundTrip) {
  std::mt19937 rng(5);
  const RasterImage img = testing::random_image(14, 11, 3, rng);
  const auto parts = additive_decompose_channels(img, BaselineMethod::kGuidedFilter);
  ASSERT_EQ(parts.size(), 3u);
  std::vector<Plane> details;
  RasterImage bases(14, 11, 3);
  for (std::size_t c = 0; c < 3; ++c) {
    const Plane ch = img.channel(c);
    for (std::size_t i = 0; i < ch.size(); ++i) {
      ASSERT_NEAR(parts[c].base.samples()[i] + parts[c].detail.samples()[i], ch.samples()[i], 1e-9);
    }
    details.push_back(parts[c].detail);
    bases.set_channel(c, parts[c].base);
  }
  const RasterImage merged = additive_merge_channels(bases, details, 1.0);
  EXPECT_LE(testing::max_abs_diff(img.samples(), merged.samples()), 1e-9);
}

}  // namespace
}  // namespace detailprior
