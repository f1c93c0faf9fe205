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
#include <random>

#include "detailprior/color.hpp"
#include "detailprior/error.hpp"
#include "detailprior/image_io.hpp"
#include "detailprior/resample.hpp"
#include "test_support.hpp"

namespace detailprior {
namespace {

using testing::TempDir;

IoError::Kind load_error_kind(const std::filesystem::path& path) {
  try {
    load_image(path);
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find(path.string()), std::string::npos);
    return e.kind();
  }
  ADD_FAILURE() << "expected IoError for " << path;
  return IoError::Kind::kWriteFailed;
}

// ---------------------------------------------------------------------------
// load / save

TEST(LoadImage, White8BitPng) {
  const RasterImage img = load_image(testing::fixture_dir() / "white_2x2.png");
  EXPECT_EQ(img.width(), 2u);
  EXPECT_EQ(img.height(), 2u);
  EXPECT_EQ(img.channels(), 3u);
  for (double s : img.samples()) EXPECT_EQ(s, 255.0);
}

TEST(LoadImage, BlackPgm) {
  const RasterImage img = load_image(testing::fixture_dir() / "black_1x1.pgm");
  EXPECT_EQ(img.width(), 1u);
  EXPECT_EQ(img.height(), 1u);
  EXPECT_EQ(img.channels(), 1u);
  EXPECT_EQ(img.samples()[0], 0.0);
}

TEST(LoadImage, SixteenBitInputsAreScaled) {
  const RasterImage png = load_image(testing::fixture_dir() / "gray16_3x1.png");
  ASSERT_EQ(png.channels(), 1u);
  EXPECT_DOUBLE_EQ(png.samples()[0], 0.0);
  EXPECT_DOUBLE_EQ(png.samples()[1], 255.0);
  EXPECT_DOUBLE_EQ(png.samples()[2], 32768.0 * 255.0 / 65535.0);

  const RasterImage ppm = load_image(testing::fixture_dir() / "rgb16_1x1.ppm");
  ASSERT_EQ(ppm.channels(), 3u);
  EXPECT_DOUBLE_EQ(ppm.samples()[0], 255.0);
  EXPECT_DOUBLE_EQ(ppm.samples()[1], 0.0);
  EXPECT_DOUBLE_EQ(ppm.samples()[2], 32768.0 * 255.0 / 65535.0);
}

TEST(LoadImage, AlphaIsDroppedAndPaletteExpanded) {
  const RasterImage rgba = load_image(testing::fixture_dir() / "rgba_2x1.png");
  ASSERT_EQ(rgba.channels(), 3u);
  EXPECT_EQ(rgba.at(0, 0, 0), 10.0);
  EXPECT_EQ(rgba.at(1, 0, 2), 50.0);

  const RasterImage pal = load_image(testing::fixture_dir() / "palette_2x1.png");
  ASSERT_EQ(pal.channels(), 3u);
  EXPECT_EQ(pal.at(0, 0, 0), 255.0);
  EXPECT_EQ(pal.at(1, 0, 2), 255.0);
  EXPECT_EQ(pal.at(1, 0, 0), 0.0);
}

TEST(LoadImage, ErrorsAreDistinctAndCarryThePath) {
  TempDir dir("load_errors");
  EXPECT_EQ(load_error_kind(dir / "missing.png"), IoError::Kind::kUnreadable);

  testing::write_text(dir / "text.png", "definitely not an image");
  EXPECT_EQ(load_error_kind(dir / "text.png"), IoError::Kind::kUnsupportedFormat);

  auto bytes = testing::read_bytes(testing::fixture_dir() / "white_2x2.png");
  bytes.resize(bytes.size() / 2);
  testing::write_bytes(dir / "truncated.png", bytes);
  EXPECT_EQ(load_error_kind(dir / "truncated.png"), IoError::Kind::kCorrupt);

  bytes.resize(20);
  testing::write_bytes(dir / "header_only.png", bytes);
  EXPECT_EQ(load_error_kind(dir / "header_only.png"), IoError::Kind::kCorrupt);

  testing::write_text(dir / "short.pgm", "P5\n4 4\n255\n\x01\x02");
  EXPECT_EQ(load_error_kind(dir / "short.pgm"), IoError::Kind::kCorrupt);

  testing::write_text(dir / "bad_header.ppm", "P6\nfour four\n255\n");
  EXPECT_EQ(load_error_kind(dir / "bad_header.ppm"), IoError::Kind::kCorrupt);
}

TEST(SaveImage, RoundTripIsExactOn8BitData) {
  TempDir dir("save_roundtrip");
  std::mt19937 rng(7);
  for (std::size_t channels : {1u, 3u}) {
    const RasterImage img = testing::random_image(13, 9, channels, rng);
    const auto path = dir / ("img" + std::to_string(channels) + ".png");
    save_image(img, path);
    EXPECT_EQ(load_image(path), img);
    EXPECT_FALSE(std::filesystem::exists(path.string() + ".partial"));
  }
}

TEST(SaveImage, ClampsAndRoundsHalfAwayFromZero) {
  TempDir dir("save_rounding");
  RasterImage img(4, 1, 1, std::vector<double>{255.7, 127.5, -3.0, 126.4999});
  save_image(img, dir / "r.png");
  const RasterImage back = load_image(dir / "r.png");
  EXPECT_EQ(back.samples()[0], 255.0);
  EXPECT_EQ(back.samples()[1], 128.0);
  EXPECT_EQ(back.samples()[2], 0.0);
  EXPECT_EQ(back.samples()[3], 126.0);
}

TEST(SaveImage, UnwritableDirectoryIsAnIoError) {
  RasterImage img(2, 2, 1, 5.0);
  try {
    save_image(img, "/nonexistent_dir_for_detailprior/x.png");
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_EQ(e.kind(), IoError::Kind::kWriteFailed);
  }
}

// ---------------------------------------------------------------------------
// DPLN

TEST(Dpln, HeaderLayoutIsLittleEndian) {
  Plane p(3, 2, std::vector<double>{1.0, -2.0, 0.5, 3.0, 4.0, 1e-3});
  const auto bytes = encode_dpln(p);
  ASSERT_EQ(bytes.size(), 16u + 4u * 6u);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "DPLN");
  const std::vector<std::uint8_t> version{1, 0, 0, 0}, height{2, 0, 0, 0}, width{3, 0, 0, 0};
  EXPECT_EQ(std::vector<std::uint8_t>(bytes.begin() + 4, bytes.begin() + 8), version);
  EXPECT_EQ(std::vector<std::uint8_t>(bytes.begin() + 8, bytes.begin() + 12), height);
  EXPECT_EQ(std::vector<std::uint8_t>(bytes.begin() + 12, bytes.begin() + 16), width);
  // 1.0f == 0x3f800000
  const std::vector<std::uint8_t> one{0x00, 0x00, 0x80, 0x3f};
  EXPECT_EQ(std::vector<std::uint8_t>(bytes.begin() + 16, bytes.begin() + 20), one);
}

TEST(Dpln, RoundTripPreservesFloat32Values) {
  std::mt19937 rng(3);
  Plane p = testing::random_plane(7, 5, rng, -10.0, 10.0);
  for (double& s : p.samples()) s = static_cast<float>(s);
  EXPECT_EQ(decode_dpln(encode_dpln(p)), p);

  TempDir dir("dpln");
  write_dpln(p, dir / "p.dpln");
  EXPECT_EQ(read_dpln(dir / "p.dpln"), p);
}

TEST(Dpln, RejectsMalformedPayloads) {
  auto bytes = encode_dpln(Plane(2, 2, 1.0));
  auto truncated = bytes;
  truncated.pop_back();
  EXPECT_THROW(decode_dpln(truncated), IoError);
  auto wrong_magic = bytes;
  wrong_magic[0] = 'X';
  EXPECT_THROW(decode_dpln(wrong_magic), IoError);
  auto wrong_version = bytes;
  wrong_version[4] = 2;
  EXPECT_THROW(decode_dpln(wrong_version), IoError);
}

TEST(Visualization, Writes16BitPngAndRangeSidecar) {
  TempDir dir("viz");
  Plane p(2, 1, std::vector<double>{0.5, 2.0});
  save_plane_visualization(p, dir / "d.png");
  const RasterImage img = load_image(dir / "d.png");
  EXPECT_DOUBLE_EQ(img.samples()[0], 0.0);
  EXPECT_DOUBLE_EQ(img.samples()[1], 255.0);
  std::ifstream in(range_sidecar_path(dir / "d.png"));
  double lo = 0.0, hi = 0.0;
  in >> lo >> hi;
  EXPECT_EQ(lo, 0.5);
  EXPECT_EQ(hi, 2.0);
  EXPECT_EQ(range_sidecar_path(dir / "d.png").filename(), "d.range");
}

// ---------------------------------------------------------------------------
// colour

TEST(Color, ReferencePoints) {
  RasterImage white(1, 1, 3, 255.0);
  RasterImage black(1, 1, 3, 0.0);
  const auto w = rgb_to_ycbcr(white);
  const auto b = rgb_to_ycbcr(black);
  EXPECT_NEAR(w.y.samples()[0], 235.0, 1e-9);
  EXPECT_NEAR(b.y.samples()[0], 16.0, 1e-12);
  EXPECT_NEAR(b.cb.samples()[0], 128.0, 1e-12);
  EXPECT_NEAR(b.cr.samples()[0], 128.0, 1e-12);

  for (double c : {0.0, 17.0, 128.0, 254.0}) {
    const auto g = rgb_to_ycbcr(RasterImage(1, 1, 3, c));
    EXPECT_NEAR(g.cb.samples()[0], 128.0, 1e-9) << c;
    EXPECT_NEAR(g.cr.samples()[0], 128.0, 1e-9) << c;
  }
}

TEST(Color, InverseReferencePoints) {
  const RasterImage white = ycbcr_to_rgb(Plane(1, 1, 235.0), Plane(1, 1, 128.0), Plane(1, 1, 128.0));
  const RasterImage black = ycbcr_to_rgb(Plane(1, 1, 16.0), Plane(1, 1, 128.0), Plane(1, 1, 128.0));
  for (double s : white.samples()) EXPECT_NEAR(s, 255.0, 0.5);
  for (double s : black.samples()) EXPECT_NEAR(s, 0.0, 0.5);
}

TEST(Color, RoundTripWithinHalfAfterRounding) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const RasterImage img = testing::random_image(8, 8, 3, rng);
    const RasterImage back = quantize_8bit(ycbcr_to_rgb(rgb_to_ycbcr(img)));
    EXPECT_LE(testing::max_abs_diff(img.samples(), back.samples()), 0.5);
  }
}

TEST(Color, ErrorsOnWrongShapes) {
  EXPECT_THROW(rgb_to_ycbcr(RasterImage(2, 2, 1)), InvalidArgument);
  EXPECT_THROW(ycbcr_to_rgb(Plane(2, 2), Plane(2, 2), Plane(3, 2)), DimensionMismatch);
}

TEST(Color, GrayscaleLuminanceIsTheChannel) {
  std::mt19937 rng(2);
  const RasterImage img = testing::random_image(5, 4, 1, rng);
  EXPECT_EQ(luminance(img), img.channel(0));
}

// ---------------------------------------------------------------------------
// resampling

TEST(BicubicResize, ConstantPlaneStaysConstant) {
  const Plane p(9, 7, 42.5);
  for (auto [w, h] : {std::pair{3u, 2u}, std::pair{18u, 14u}, std::pair{9u, 7u}, std::pair{1u, 1u},
                      std::pair{25u, 3u}}) {
    const Plane r = bicubic_resize(p, w, h);
    ASSERT_EQ(r.width(), w);
    ASSERT_EQ(r.height(), h);
    for (double s : r.samples()) EXPECT_NEAR(s, 42.5, 1e-9);
  }
}

TEST(BicubicResize, UpscalingReproducesLinearRampsInTheInterior) {
  Plane ramp(16, 4);
  for (std::size_t y = 0; y < 4; ++y) {
    for (std::size_t x = 0; x < 16; ++x) ramp.at(x, y) = 3.0 * x + 1.0;
  }
  const Plane up = bicubic_resize(ramp, 32, 8);
  // Output x maps to input (x + 0.5) / 2 - 0.5; taps reach 2 input pixels out.
  for (std::size_t y = 0; y < 8; ++y) {
    for (std::size_t x = 6; x < 26; ++x) {
      const double u = (x + 0.5) / 2.0 - 0.5;
      EXPECT_NEAR(up.at(x, y), 3.0 * u + 1.0, 1e-9);
    }
  }
}

TEST(BicubicResize, CheckerboardDownscaleAveragesWithAntialiasing) {
  const Plane board(2, 2, std::vector<double>{0.0, 255.0, 255.0, 0.0});
  const Plane small = bicubic_resize(board, 1, 1);
  EXPECT_NEAR(small.samples()[0], 127.5, 0.5);
}

TEST(BicubicResize, IdentityScaleIsExact) {
  std::mt19937 rng(5);
  const Plane p = testing::random_plane(6, 5, rng);
  const Plane r = bicubic_resize(p, 6, 5);
  EXPECT_LE(testing::max_abs_diff(p.samples(), r.samples()), 1e-12);
}

TEST(BicubicResize, RejectsZeroSizedOutput) {
  EXPECT_THROW(bicubic_resize(Plane(4, 4), 0, 2), InvalidArgument);
  EXPECT_THROW(bicubic_resize(Plane(4, 4), 2, 0), InvalidArgument);
}

TEST(ModCrop, FloorsToMultiples) {
  const RasterImage img(9, 7, 3, 1.0);
  const RasterImage c = mod_crop(img, 4);
  EXPECT_EQ(c.width(), 8u);
  EXPECT_EQ(c.height(), 4u);
  const RasterImage same(8, 8, 1, 2.0);
  EXPECT_EQ(mod_crop(same, 4), same);
  EXPECT_THROW(mod_crop(RasterImage(3, 3, 1), 4), InvalidArgument);
}

TEST(ModCrop, KeepsTheTopLeftCorner) {
  std::mt19937 rng(9);
  const RasterImage img = testing::random_image(10, 6, 1, rng);
  const RasterImage c = mod_crop(img, 4);
  for (std::size_t y = 0; y < c.height(); ++y) {
    for (std::size_t x = 0; x < c.width(); ++x) EXPECT_EQ(c.at(x, y, 0), img.at(x, y, 0));
  }
}

}  // namespace
}  // namespace detailprior
