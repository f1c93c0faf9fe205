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

#include <random>

#include "detailprior/dataset.hpp"
#include "detailprior/detail_prior.hpp"
#include "detailprior/error.hpp"
#include "detailprior/resample.hpp"
#include "test_support.hpp"

namespace detailprior {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

TEST(Degrade, ShapesAndConstants) {
  const RasterImage lr = degrade(RasterImage(128, 128, 3, 64.0), 4);
  EXPECT_EQ(lr.width(), 32u);
  EXPECT_EQ(lr.height(), 32u);
  for (double s : lr.samples()) EXPECT_NEAR(s, 64.0, 1e-9);

  for (std::size_t s : {2u, 3u, 4u}) {
    const RasterImage out = degrade(RasterImage(8 * s, 4 * s, 1, 5.0), s);
    EXPECT_EQ(out.width(), 8u);
    EXPECT_EQ(out.height(), 4u);
  }
  EXPECT_THROW(degrade(RasterImage(130, 130, 3), 4), InvalidArgument);
  EXPECT_THROW(degrade(RasterImage(8, 8, 3), 1), InvalidArgument);
}

TEST(PreparePairs, ConstantImageGivesUnitDetails) {
  TempDir in("prep_in"), out("prep_out");
  save_image(RasterImage(128, 128, 3, 90.0), in / "flat.png");
  const PairManifest m = prepare_pairs(in.path(), out.path(), 4);
  ASSERT_EQ(m.entries.size(), 1u);
  EXPECT_TRUE(m.failures.empty());
  const PairEntry& e = m.entries.front();
  EXPECT_EQ(e.width, 128u);
  EXPECT_EQ(e.height, 128u);
  EXPECT_EQ(e.scale, 4u);
  for (const auto& rel : {e.hr_path, e.lr_path, e.hr_detail_path, e.lr_detail_path}) {
    EXPECT_TRUE(fs::exists(out.path() / rel)) << rel;
  }
  const Plane hr = read_dpln(out.path() / e.hr_detail_path);
  const Plane lr = read_dpln(out.path() / e.lr_detail_path);
  EXPECT_EQ(hr.width(), 128u);
  EXPECT_EQ(lr.width(), 32u);
  EXPECT_EQ(lr.height(), 32u);
  for (double s : hr.samples()) EXPECT_EQ(s, 1.0);
  for (double s : lr.samples()) EXPECT_EQ(s, 1.0);
  EXPECT_TRUE(fs::exists(out.path() / kManifestName));
}

TEST(PreparePairs, EmptyDirectoryFails) {
  TempDir in("prep_empty"), out("prep_empty_out");
  EXPECT_THROW(prepare_pairs(in.path(), out.path(), 4), Error);
  EXPECT_THROW(prepare_pairs(in / "missing", out.path(), 4), Error);
}

TEST(PreparePairs, CorruptFilesAreReportedAndSkipped) {
  TempDir in("prep_mixed"), out("prep_mixed_out");
  std::mt19937 rng(3);
  save_image(testing::random_image(37, 29, 3, rng), in / "good.png");
  testing::write_text(in / "bad.png", "\x89PNG broken");
  testing::write_text(in / "notes.txt", "ignored");
  const PairManifest m = prepare_pairs(in.path(), out.path(), 4);
  ASSERT_EQ(m.entries.size(), 1u);
  ASSERT_EQ(m.failures.size(), 1u);
  EXPECT_NE(m.failures.front().file.find("bad.png"), std::string::npos);
  EXPECT_EQ(m.entries.front().width, 36u);
  EXPECT_EQ(m.entries.front().height, 28u);
}

TEST(PreparePairs, AllCorruptFails) {
  TempDir in("prep_bad"), out("prep_bad_out");
  testing::write_text(in / "bad.png", "nope");
  EXPECT_THROW(prepare_pairs(in.path(), out.path(), 4), Error);
}

TEST(PreparePairs, StoredDetailsMatchReextraction) {
  TempDir in("prep_corpus"), out("prep_corpus_out");
  const auto files = testing::corpus_files();
  for (std::size_t i = 0; i < 3; ++i) fs::copy_file(files[i], in / files[i].filename().string());
  const PairManifest m = prepare_pairs(in.path(), out.path(), 4);
  ASSERT_EQ(m.entries.size(), 3u);
  for (const PairEntry& e : m.entries) {
    const RasterImage hr = load_image(out.path() / e.hr_path);
    const RasterImage lr = load_image(out.path() / e.lr_path);
    EXPECT_EQ(hr.width(), lr.width() * 4);
    EXPECT_EQ(hr.height(), lr.height() * 4);
    Plane expected = extract_detail(hr).values;
    for (double& s : expected.samples()) s = static_cast<float>(s);
    EXPECT_EQ(read_dpln(out.path() / e.hr_detail_path), expected);
  }
}

TEST(PreparePairs, RerunIsByteIdentical) {
  TempDir in("prep_rerun"), a("prep_rerun_a"), b("prep_rerun_b");
  const auto files = testing::corpus_files();
  for (std::size_t i = 0; i < 2; ++i) fs::copy_file(files[i], in / files[i].filename().string());
  const PairManifest ma = prepare_pairs(in.path(), a.path(), 4, {}, 1);
  prepare_pairs(in.path(), b.path(), 4, {}, 3);
  for (const PairEntry& e : ma.entries) {
    EXPECT_EQ(testing::read_bytes(a.path() / e.hr_detail_path),
              testing::read_bytes(b.path() / e.hr_detail_path));
    EXPECT_EQ(testing::read_bytes(a.path() / e.lr_detail_path),
              testing::read_bytes(b.path() / e.lr_detail_path));
  }
  EXPECT_EQ(testing::read_bytes(a / kManifestName), testing::read_bytes(b / kManifestName));
}

TEST(Manifest, JsonRoundTrip) {
  PairManifest m;
  m.scale = 4;
  m.params.epsilon = 1.5;
  m.entries.push_back({"HR/a.png", "LR/a.png", "HR_detail/a.dpln", "LR_detail/a.dpln", 64, 32, 4});
  m.failures.push_back({"b.png", "corrupt"});
  const PairManifest back = manifest_from_json(to_json(m));
  EXPECT_EQ(back.scale, 4u);
  EXPECT_EQ(back.params, m.params);
  ASSERT_EQ(back.entries.size(), 1u);
  EXPECT_EQ(back.entries[0].lr_detail_path, "LR_detail/a.dpln");
  EXPECT_EQ(back.entries[0].height, 32u);
  ASSERT_EQ(back.failures.size(), 1u);
  EXPECT_EQ(back.failures[0].message, "corrupt");
}

}  // namespace
}  // namespace detailprior
