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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "sv2a/ambisonic.h"
#include "sv2a/errors.h"
#include "sv2a/trajectory.h"
#include "test_util.h"

namespace sv2a {
namespace {

using std::numbers::pi;
using testing_util::TempDir;
using testing_util::UniformNoise;

void ExpectVectorNear(const std::vector<double>& got,
                      const std::vector<double>& want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (size_t i = 0; i < got.size(); ++i) {
    EXPECT_NEAR(got[i], want[i], tol) << "index " << i;
  }
}

TEST(DirectionTest, NormalizesAzimuthAndClampsElevation) {
  EXPECT_NEAR(Direction(3 * pi / 2, 0).azimuth(), -pi / 2, 1e-15);
  EXPECT_NEAR(Direction(-5 * pi / 2, 0).azimuth(), -pi / 2, 1e-15);
  EXPECT_NEAR(Direction(0, 2.0).elevation(), pi / 2, 0.0);
  EXPECT_NEAR(Direction(0, -2.0).elevation(), -pi / 2, 0.0);
}

TEST(DirectionTest, AngularDistance) {
  EXPECT_NEAR(AngularDistance(Direction::FromDegrees(90),
                              Direction::FromDegrees(-90)),
              pi, 1e-12);
  EXPECT_NEAR(AngularDistance(Direction::FromDegrees(10, 0),
                              Direction::FromDegrees(10, 90)),
              pi / 2, 1e-12);
}

TEST(ShEncodeTest, FirstOrderConvention) {
  ExpectVectorNear(ShEncode(Direction(0, 0), 1).coefficients, {1, 0, 0, 1},
                   1e-15);
  ExpectVectorNear(ShEncode(Direction(pi / 2, 0), 1).coefficients,
                   {1, 1, 0, 0}, 1e-15);
  ExpectVectorNear(ShEncode(Direction(0, pi / 2), 1).coefficients,
                   {1, 0, 1, 0}, 1e-15);
}

TEST(ShEncodeTest, SecondOrderChannelCountAndKnownValues) {
  const ShVector v = ShEncode(Direction(pi / 4, 0), 2);
  ASSERT_EQ(v.coefficients.size(), 9u);
  // V = sqrt(3)/2 sin(2 az) at the horizon; U = sqrt(3)/2 cos(2 az).
  EXPECT_NEAR(v.coefficients[4], std::sqrt(3.0) / 2, 1e-15);
  EXPECT_NEAR(v.coefficients[6], -0.5, 1e-15);
  EXPECT_NEAR(v.coefficients[8], 0.0, 1e-15);
}

TEST(ShEncodeTest, UnsupportedOrder) {
  EXPECT_THROW(ShEncode(Direction(), 3), InvalidArgument);
  EXPECT_THROW(ShEncode(Direction(), -1), InvalidArgument);
}

TEST(ShEncodeTest, WChannelAlwaysOne) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> az(-pi, pi), el(-pi / 2, pi / 2);
  for (int i = 0; i < 200; ++i) {
    for (int order = 0; order <= kMaxShOrder; ++order) {
      EXPECT_EQ(ShEncode(Direction(az(rng), el(rng)), order).coefficients[0],
                1.0);
    }
  }
}

TEST(EncodeMonoTest, ConstantFrontDirection) {
  const AudioBuffer s(UniformNoise(3000, 1), 16000);
  const std::vector<Direction> dirs(3, Direction(0, 0));
  const ShSignal sh = EncodeMono(s, dirs, 1);
  EXPECT_EQ(sh.channel(0), s.data());
  EXPECT_EQ(sh.channel(3), s.data());
  for (double v : sh.channel(1)) EXPECT_EQ(v, 0.0);
  for (double v : sh.channel(2)) EXPECT_EQ(v, 0.0);
}

TEST(EncodeMonoTest, ZeroSignal) {
  const AudioBuffer s(std::vector<double>(2048, 0.0), 16000);
  const std::vector<Direction> dirs = {Direction(0.3, 0.1), Direction(-1, 0)};
  const ShSignal sh = EncodeMono(s, dirs, 2);
  for (size_t n = 0; n < sh.num_samples(); ++n) {
    for (double v : sh.frame(n)) EXPECT_EQ(v, 0.0);
  }
}

TEST(EncodeMonoTest, CrossfadeFrontToLeft) {
  const BlockSchedule schedule{1024, 256};
  const AudioBuffer s(UniformNoise(2048, 2), 16000);
  const std::vector<Direction> dirs = {Direction(0, 0), Direction(pi / 2, 0)};
  const ShSignal sh = EncodeMono(s, dirs, 1, schedule);
  const auto y = sh.channel(1);
  const auto x = sh.channel(3);
  for (size_t i = 0; i < 1024; ++i) {
    EXPECT_NEAR(x[i], s[i], 1e-15);
    EXPECT_NEAR(y[i], 0.0, 1e-15);
  }
  for (size_t i = 0; i < 256; ++i) {
    const double w = i / 256.0;
    // cos(pi/2) is not exactly zero, hence the small tolerance.
    EXPECT_NEAR(x[1024 + i], (1 - w) * s[1024 + i], 1e-15);
    EXPECT_NEAR(y[1024 + i], w * s[1024 + i], 1e-15);
  }
  for (size_t i = 1024 + 256; i < 2048; ++i) {
    EXPECT_NEAR(x[i], 0.0, 1e-15);
    EXPECT_NEAR(y[i], s[i], 1e-15);
  }
}

TEST(EncodeMonoTest, Errors) {
  const AudioBuffer s(std::vector<double>(3000, 0.1), 16000);
  EXPECT_THROW(EncodeMono(s, {}, 1), InvalidArgument);
  const std::vector<Direction> short_dirs(2, Direction());
  EXPECT_THROW(EncodeMono(s, short_dirs, 1), InvalidArgument);
}

TEST(RingLayoutTest, Azimuths) {
  const SpeakerLayout four = RingLayout(4);
  ASSERT_EQ(four.size(), 4u);
  const double expected[] = {0, pi / 2, pi, -pi / 2};
  for (size_t m = 0; m < 4; ++m) {
    EXPECT_NEAR(four[m].azimuth(), expected[m], 1e-12);
    EXPECT_EQ(four[m].elevation(), 0.0);
  }
  const SpeakerLayout two = RingLayout(2);
  EXPECT_NEAR(two[0].azimuth(), 0.0, 0.0);
  EXPECT_NEAR(std::abs(two[1].azimuth()), pi, 1e-12);
  const SpeakerLayout eight = RingLayout(8);
  for (size_t i = 0; i < 8; ++i) {
    for (size_t j = i + 1; j < 8; ++j) {
      EXPECT_GT(AngularDistance(eight[i], eight[j]), 0.7);
    }
  }
  EXPECT_THROW(RingLayout(1), InvalidArgument);
}

TEST(SpeakerLayoutTest, RejectsDuplicatesAndEmpty) {
  EXPECT_THROW(SpeakerLayout({}), InvalidArgument);
  EXPECT_THROW(SpeakerLayout({Direction(0.5, 0), Direction(0.5, 0)}),
               InvalidArgument);
}

TEST(DecodeMatrixTest, FourSpeakerRingIsWellConditioned) {
  const DecodeMatrix dm(RingLayout(4), 1);
  ASSERT_EQ(dm.active_channels(), (std::vector<size_t>{0, 1, 3}));
  const Eigen::MatrixXd gram = dm.encoding().transpose() * dm.encoding();
  // Columns W, Y, X of a uniform quad are orthogonal: diag(4, 2, 2).
  EXPECT_NEAR(gram(0, 0), 4.0, 1e-12);
  EXPECT_NEAR(gram(1, 1), 2.0, 1e-12);
  EXPECT_NEAR(gram(2, 2), 2.0, 1e-12);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram);
  const auto& sv = svd.singularValues();
  EXPECT_LT(sv(0) / sv(sv.size() - 1), 2.0 + 1e-9);
  for (Eigen::Index i = 0; i < 3; ++i) {
    double off = 0.0;
    for (Eigen::Index j = 0; j < 3; ++j) {
      if (i != j) off += std::abs(gram(i, j));
    }
    EXPECT_GT(std::abs(gram(i, i)), off);
  }
}

TEST(DecodeMatrixTest, NearDuplicateLayoutIsSingular) {
  // Distinct directions, but two rows are numerically identical.
  const SpeakerLayout layout({Direction(0, 0), Direction(1e-9, 0),
                              Direction(pi / 2, 0)});
  EXPECT_THROW(DecodeMatrix(layout, 1), SingularMatrixError);
  EXPECT_THROW(DecodeMatrix(RingLayout(2), 1), SingularMatrixError);
}

TEST(DecodeMatrixTest, OrderZeroIsAllOnesColumn) {
  const DecodeMatrix dm(
      SpeakerLayout({Direction(0.1, 0.2), Direction(-2, 0.4),
                     Direction(1.0, -1.0)}),
      0);
  ASSERT_EQ(dm.encoding().cols(), 1);
  for (Eigen::Index m = 0; m < dm.encoding().rows(); ++m) {
    EXPECT_EQ(dm.encoding()(m, 0), 1.0);
  }
}

TEST(DecodeMatrixTest, ThreeDimensionalLayoutUsesAllChannels) {
  // Octahedron: enough for a full first-order decode.
  const SpeakerLayout octa({Direction(0, 0), Direction(pi / 2, 0),
                            Direction(pi, 0), Direction(-pi / 2, 0),
                            Direction(0, pi / 2), Direction(0, -pi / 2)});
  const DecodeMatrix dm(octa, 1);
  EXPECT_EQ(dm.active_channels().size(), 4u);
  const ShVector psi = ShEncode(Direction(0.4, 0.3), 1);
  const std::vector<double> g = dm.Gains(psi.coefficients);
  for (size_t c = 0; c < 4; ++c) {
    double re = 0.0;
    for (size_t m = 0; m < 6; ++m) re += g[m] * dm.encoding()(m, c);
    EXPECT_NEAR(re, psi.coefficients[c], 1e-9);
  }
}

TEST(ProjectTest, LayoutDirectionGetsLargestGain) {
  const DecodeMatrix dm(RingLayout(4), 1);
  for (size_t k = 0; k < 4; ++k) {
    const std::vector<double> g =
        dm.Gains(ShEncode(RingLayout(4)[k], 1).coefficients);
    // Hand evaluation for the quad: D^T D = diag(4, 2, 2), so
    // g_m = 1/4 + cos(phi_m - phi_k) / 2.
    for (size_t m = 0; m < 4; ++m) {
      const double delta = (static_cast<double>(m) - k) * pi / 2;
      EXPECT_NEAR(g[m], 0.25 + 0.5 * std::cos(delta), 1e-12);
      if (m != k) {
        EXPECT_GT(g[k], g[m]);
      }
    }
  }
}

TEST(ProjectTest, ZeroSignalAndOrderMismatch) {
  const DecodeMatrix dm(RingLayout(4), 1);
  const ShSignal zero(1, 100, 16000);
  const auto feeds = ProjectToSpeakers(zero, dm);
  ASSERT_EQ(feeds.size(), 4u);
  for (const auto& f : feeds) {
    for (double v : f.samples()) EXPECT_EQ(v, 0.0);
  }
  EXPECT_THROW(ProjectToSpeakers(ShSignal(2, 10, 16000), dm), InvalidArgument);
}

TEST(ProjectTest, Linearity) {
  const DecodeMatrix dm(RingLayout(6), 1);
  const AudioBuffer a(UniformNoise(500, 10), 16000);
  const AudioBuffer b(UniformNoise(500, 11), 16000);
  const std::vector<Direction> da = {Direction(0.3, 0)};
  const std::vector<Direction> db = {Direction(-2.0, 0)};
  const ShSignal sa = EncodeMono(a, da, 1, {1024, 256});
  const ShSignal sb = EncodeMono(b, db, 1, {1024, 256});
  ShSignal sum(1, 500, 16000);
  for (size_t n = 0; n < 500; ++n) {
    for (size_t c = 0; c < 4; ++c) {
      sum.mutable_frame(n)[c] = sa.frame(n)[c] + sb.frame(n)[c];
    }
  }
  const auto pa = ProjectToSpeakers(sa, dm);
  const auto pb = ProjectToSpeakers(sb, dm);
  const auto ps = ProjectToSpeakers(sum, dm);
  for (size_t m = 0; m < 6; ++m) {
    for (size_t n = 0; n < 500; ++n) {
      EXPECT_NEAR(ps[m][n], pa[m][n] + pb[m][n], 1e-9);
    }
  }
}

TEST(ProjectTest, ReencodeConsistencyOnRings) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> az(-pi, pi);
  for (size_t m : {4u, 5u, 8u, 12u}) {
    const DecodeMatrix dm(RingLayout(m), 1);
    for (int trial = 0; trial < 100; ++trial) {
      const ShVector psi = ShEncode(Direction(az(rng), 0), 1);
      const std::vector<double> g = dm.Gains(psi.coefficients);
      for (size_t acn : {0u, 1u, 3u}) {
        double re = 0.0;
        for (size_t s = 0; s < m; ++s) {
          re += g[s] * ShEncode(dm.layout()[s], 1).coefficients[acn];
        }
        EXPECT_NEAR(re, psi.coefficients[acn],
                    1e-6 * std::max(1.0, std::abs(psi.coefficients[acn])));
      }
    }
  }
}

TEST(ProjectTest, RotationEquivariance) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> angle(-pi, pi);
  for (int trial = 0; trial < 50; ++trial) {
    const double source = angle(rng);
    const double shift = angle(rng);
    std::vector<Direction> rotated;
    for (const Direction& d : RingLayout(8).directions()) {
      rotated.emplace_back(d.azimuth() + shift, 0);
    }
    auto g0 = DecodeMatrix(RingLayout(8), 1)
                  .Gains(ShEncode(Direction(source, 0), 1).coefficients);
    auto g1 = DecodeMatrix(SpeakerLayout(rotated), 1)
                  .Gains(ShEncode(Direction(source + shift, 0), 1).coefficients);
    std::sort(g0.begin(), g0.end());
    std::sort(g1.begin(), g1.end());
    for (size_t i = 0; i < g0.size(); ++i) EXPECT_NEAR(g0[i], g1[i], 1e-9);
  }
}

TEST(TrajectoryTest, PiecewiseConstantLookup) {
  const Trajectory t({{0.0, Direction(0, 0)}, {1.0, Direction(1, 0)},
                      {2.5, Direction(-1, 0)}});
  EXPECT_EQ(t.At(0.0), Direction(0, 0));
  EXPECT_EQ(t.At(0.999), Direction(0, 0));
  EXPECT_EQ(t.At(1.0), Direction(1, 0));
  EXPECT_EQ(t.At(100.0), Direction(-1, 0));
  const auto blocks = t.BlockDirections(16000 * 3, 16000, 16000);
  ASSERT_EQ(blocks.size(), 3u);
  EXPECT_EQ(blocks[1], Direction(1, 0));
  EXPECT_EQ(blocks[2], Direction(1, 0));
}

TEST(TrajectoryTest, GapAndOrderingErrors) {
  EXPECT_THROW(Trajectory({}), InvalidArgument);
  EXPECT_THROW(Trajectory({{0.5, Direction()}}), InvalidArgument);
  EXPECT_THROW(Trajectory({{0.0, Direction()}, {0.0, Direction()}}),
               InvalidArgument);
}

TEST(TrajectoryTest, CsvRoundTripAndErrors) {
  TempDir dir;
  const Trajectory t({{0.0, Direction::FromDegrees(30, 0)},
                      {0.5, Direction::FromDegrees(-45, 10)}});
  WriteTrajectoryCsv(dir / "t.csv", t);
  const Trajectory back = ReadTrajectoryCsv(dir / "t.csv");
  ASSERT_EQ(back.keyframes().size(), 2u);
  EXPECT_NEAR(back.keyframes()[1].direction.azimuth(), -pi / 4, 1e-12);
  EXPECT_NEAR(back.keyframes()[1].direction.elevation(), pi / 18, 1e-12);

  std::ofstream(dir / "bad_header.csv") << "t,az,el\n0,0,0\n";
  EXPECT_THROW(ReadTrajectoryCsv(dir / "bad_header.csv"), FormatError);
  std::ofstream(dir / "bad_row.csv")
      << "time_s,azimuth_deg,elevation_deg\n0,abc,0\n";
  EXPECT_THROW(ReadTrajectoryCsv(dir / "bad_row.csv"), FormatError);
  std::ofstream(dir / "gap.csv") << "time_s,azimuth_deg,elevation_deg\n1,0,0\n";
  EXPECT_THROW(ReadTrajectoryCsv(dir / "gap.csv"), FormatError);
  EXPECT_THROW(ReadTrajectoryCsv(dir / "missing.csv"), IoError);
}

}  // namespace
}  // namespace sv2a
