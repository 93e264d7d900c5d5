// Copyright 2026 The SV2A Authors. All Rights Reserved.
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

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "sv2a/errors.h"
#include "sv2a/hrir.h"
#include "sv2a/wav_io.h"
#include "test_util.h"

namespace sv2a {
namespace {

using std::numbers::pi;
using testing_util::TempDir;
using testing_util::UniformNoise;

size_t PeakIndex(const std::vector<double>& v) {
  size_t best = 0;
  for (size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  }
  return best;
}

double Energy(const std::vector<double>& v) {
  double e = 0.0;
  for (double x : v) e += x * x;
  return e;
}

TEST(AnalyticHrirTest, FrontCenterIsSymmetric) {
  const HrirPair p = AnalyticHrir(Direction(0, 0), 16000);
  EXPECT_EQ(p.left, p.right);
  EXPECT_EQ(PeakIndex(p.left), 0u);
  EXPECT_EQ(p.left.size(), 64u);
}

TEST(AnalyticHrirTest, HardLeftWoodworthDelay) {
  const HeadModelConfig cfg;
  // (0.0875 / 343) * (pi/2 + 1) = 0.6558 ms = 10.49 samples at 16 kHz.
  const double tau = 0.0875 / 343.0 * (pi / 2 + 1.0);
  EXPECT_NEAR(WoodworthDelaySeconds(pi / 2, cfg), tau, 1e-15);
  EXPECT_NEAR(tau * 1000.0, 0.6558, 1e-4);
  const HrirPair p = AnalyticHrir(Direction(pi / 2, 0), 16000, cfg);
  EXPECT_EQ(PeakIndex(p.left), 0u);
  EXPECT_EQ(PeakIndex(p.right), 10u);
  EXPECT_EQ(AnalyticFarEarDelaySamples(Direction(pi / 2, 0), 16000, cfg), 10);
}

TEST(AnalyticHrirTest, HardLeftGains) {
  const HrirPair p = AnalyticHrir(Direction(pi / 2, 0), 16000);
  EXPECT_NEAR(p.left[0], 1.0, 1e-15);
  EXPECT_NEAR(p.right[10], std::pow(10.0, -6.0 / 20.0), 1e-15);
  EXPECT_NEAR(p.right[10] / p.left[0], 0.5012, 1e-4);
}

TEST(AnalyticHrirTest, DelayScalesWithSampleRate) {
  // 0.6558 ms at 48 kHz = 31.48 samples.
  EXPECT_EQ(AnalyticFarEarDelaySamples(Direction(pi / 2, 0), 48000, {}), 31);
  HeadModelConfig cfg;
  cfg.reference_delay = 5;
  const HrirPair p = AnalyticHrir(Direction(-pi / 2, 0), 16000, cfg);
  EXPECT_EQ(PeakIndex(p.right), 5u);
  EXPECT_EQ(PeakIndex(p.left), 15u);
}

TEST(AnalyticHrirTest, MirrorSymmetry) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> az(-pi, pi), el(-pi / 2, pi / 2);
  for (int i = 0; i < 200; ++i) {
    const double a = az(rng), e = el(rng);
    const HrirPair pos = AnalyticHrir(Direction(a, e), 16000);
    const HrirPair neg = AnalyticHrir(Direction(-a, e), 16000);
    EXPECT_EQ(pos.left, neg.right);
    EXPECT_EQ(pos.right, neg.left);
  }
}

TEST(AnalyticHrirTest, MonotonicFarEarDelay) {
  int previous = 0;
  for (int i = 0; i <= 900; ++i) {
    const double a = (pi / 2) * i / 900.0;
    const int d = AnalyticFarEarDelaySamples(Direction(a, 0), 16000, {});
    EXPECT_GE(d, previous);
    previous = d;
  }
}

TEST(AnalyticHrirTest, EnergyAtMostOne) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> az(-pi, pi), el(-pi / 2, pi / 2);
  for (int i = 0; i < 200; ++i) {
    const HrirPair p = AnalyticHrir(Direction(az(rng), el(rng)), 44100);
    EXPECT_LE(Energy(p.left), 1.0);
    EXPECT_LE(Energy(p.right), 1.0);
  }
}

TEST(AnalyticHrirTest, InvalidConfig) {
  HeadModelConfig cfg;
  cfg.head_radius_m = 0.0;
  EXPECT_THROW(AnalyticHrir(Direction(), 16000, cfg), InvalidArgument);
  cfg = {};
  cfg.contralateral_attenuation_db = -1.0;
  EXPECT_THROW(AnalyticHrir(Direction(), 16000, cfg), InvalidArgument);
  cfg = {};
  cfg.ir_length = 0;
  EXPECT_THROW(HrirSet::Analytic(16000, cfg), InvalidArgument);
}

TEST(HrirSetTest, AnalyticLookupIsExactSynthesis) {
  const HrirSet set = HrirSet::Analytic(16000);
  for (double a : {0.1, 0.77, -1.3, 2.9}) {
    const Direction d(a, 0.2);
    const HrirPair got = Lookup(set, d);
    const HrirPair want = AnalyticHrir(d, 16000);
    EXPECT_EQ(got.left, want.left);
    EXPECT_EQ(got.right, want.right);
  }
}

TEST(HrirSetTest, NearestNeighbourLookup) {
  const HrirPair left_pair{{1.0}, {0.5}, 16000};
  const HrirPair right_pair{{0.5}, {1.0}, 16000};
  const HrirSet set = HrirSet::Measured(
      {{Direction::FromDegrees(90), left_pair},
       {Direction::FromDegrees(-90), right_pair}});
  // 80 deg is 10 deg from +90 and 170 deg from -90.
  EXPECT_EQ(Lookup(set, Direction::FromDegrees(80)).left, left_pair.left);
  EXPECT_EQ(Lookup(set, Direction::FromDegrees(90)).left, left_pair.left);
  EXPECT_EQ(Lookup(set, Direction::FromDegrees(-100)).left, right_pair.left);
  // Front is equidistant: the smaller azimuth (-90) wins.
  EXPECT_EQ(Lookup(set, Direction::FromDegrees(0)).left, right_pair.left);
}

TEST(HrirSetTest, MeasuredValidation) {
  EXPECT_THROW(HrirSet::Measured({}), InvalidArgument);
  EXPECT_THROW(HrirSet::Measured({{Direction(), HrirPair{{1}, {1}, 16000}},
                                  {Direction(), HrirPair{{1}, {1}, 16000}}}),
               InvalidArgument);
  EXPECT_THROW(HrirSet::Measured({{Direction(0, 0), HrirPair{{1}, {1}, 16000}},
                                  {Direction(1, 0), HrirPair{{1}, {1}, 8000}}}),
               InvalidArgument);
}

class HrirManifestTest : public ::testing::Test {
 protected:
  void WriteStereo(const std::string& name, const std::vector<double>& l,
                   const std::vector<double>& r) {
    WriteWav(dir_ / name,
             BinauralBuffer(AudioBuffer(l, 16000), AudioBuffer(r, 16000)),
             WavEncoding::kFloat32);
  }
  void WriteManifest(const std::string& text) {
    std::ofstream(dir_ / "hrirs.json") << text;
  }
  TempDir dir_;
};

TEST_F(HrirManifestTest, LoadsEntriesAndReturnsFileSamples) {
  const std::vector<double> l = {0.5, 0.25, -0.125};
  const std::vector<double> r = {0.0, 0.75, 0.5};
  WriteStereo("left.wav", l, r);
  WriteStereo("right.wav", r, l);
  WriteManifest(R"([
    {"azimuth_deg": 90, "elevation_deg": 0, "file": "left.wav"},
    {"azimuth_deg": -90, "elevation_deg": 0, "file": "right.wav"}])");
  const HrirSet set = LoadHrirManifest(dir_ / "hrirs.json");
  EXPECT_EQ(set.size(), 2u);
  EXPECT_EQ(set.source(), HrirSource::kMeasured);
  const HrirPair p = Lookup(set, Direction::FromDegrees(90));
  EXPECT_EQ(p.left, l);
  EXPECT_EQ(p.right, r);
}

TEST_F(HrirManifestTest, MissingFileIsNamed) {
  WriteManifest(R"([{"azimuth_deg": 0, "elevation_deg": 0, "file": "gone.wav"}])");
  try {
    LoadHrirManifest(dir_ / "hrirs.json");
    FAIL() << "expected an error";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("gone.wav"), std::string::npos);
  }
}

TEST_F(HrirManifestTest, MonoAndDuplicateErrors) {
  WriteWav(dir_ / "mono.wav", AudioBuffer({1.0, 0.0}, 16000));
  WriteManifest(R"([{"azimuth_deg": 0, "elevation_deg": 0, "file": "mono.wav"}])");
  EXPECT_THROW(LoadHrirManifest(dir_ / "hrirs.json"), FormatError);

  WriteStereo("a.wav", {1.0}, {1.0});
  WriteManifest(R"([
    {"azimuth_deg": 30, "elevation_deg": 0, "file": "a.wav"},
    {"azimuth_deg": 30, "elevation_deg": 0, "file": "a.wav"}])");
  EXPECT_THROW(LoadHrirManifest(dir_ / "hrirs.json"), InvalidArgument);

  WriteManifest("{not json");
  EXPECT_THROW(LoadHrirManifest(dir_ / "hrirs.json"), FormatError);
}

}  // namespace
}  // namespace sv2a
