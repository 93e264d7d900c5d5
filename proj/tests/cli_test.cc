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

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "sv2a/heatmap.h"
#include "sv2a/trajectory.h"
#include "sv2a/wav_io.h"
#include "test_util.h"

namespace sv2a {
namespace {

namespace fs = std::filesystem;
using testing_util::TempDir;
using testing_util::UniformNoise;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "sv2a");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

void MakeClips(const fs::path& dir) {
  WriteWav(dir / "a.wav", AudioBuffer(UniformNoise(16000, 1, 0.3), 16000));
  WriteWav(dir / "b.wav", AudioBuffer(UniformNoise(12000, 2, 0.3), 16000));
  WriteTrajectoryCsv(dir / "a.csv", Trajectory::Constant(Direction::FromDegrees(45)));
  HeatmapSequence seq;
  seq.frames = {Heatmap(2, 4, {0, 0, 0, 1, 0, 0, 0, 1})};
  WriteHeatmapSequence(dir / "b.hmap", seq);
  std::ofstream(dir / "m.json") << R"([
    {"id": "a", "audio": "a.wav", "trajectory": "a.csv"},
    {"id": "b", "audio": "b.wav", "heatmap": "b.hmap"}
  ])";
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(Cli({}).code, kExitUsage);
  EXPECT_EQ(Cli({"bogus"}).code, kExitUsage);
  EXPECT_EQ(Cli({"render", "--manifest", "m.json", "--out", "d", "--nope"}).code,
            kExitUsage);
  EXPECT_EQ(Cli({"render", "--out", "d"}).code, kExitUsage);
  const CliRun help = Cli({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  EXPECT_NE(help.out.find("cfm-train"), std::string::npos);
}

TEST(CliTest, RenderThenMetrics) {
  TempDir dir;
  MakeClips(dir.path());
  const std::string out = (dir / "out").string();
  const CliRun r = Cli({"render", "--manifest", (dir / "m.json").string(), "--out",
                     out, "--fov-deg", "90", "--threads", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(fs::exists(dir / "out/a_binaural.wav"));
  EXPECT_TRUE(fs::exists(dir / "out/b_binaural.wav"));

  const CliRun m = Cli({"metrics", out, "--json", (dir / "report.json").string()});
  ASSERT_EQ(m.code, kExitOk) << m.err;
  std::ifstream in(dir / "report.json");
  const nlohmann::json j = nlohmann::json::parse(in);
  EXPECT_EQ(j["aggregate"]["iacc"]["count"], 2);
  EXPECT_EQ(j["clips"].size(), 2u);
  EXPECT_TRUE(fs::exists(dir / "out/metrics/aggregate.csv"));
}

TEST(CliTest, StrictTurnsClipFailuresIntoExitOne) {
  TempDir dir;
  MakeClips(dir.path());
  std::ofstream(dir / "bad.json") << R"([
    {"id": "a", "audio": "a.wav", "trajectory": "a.csv"},
    {"id": "x", "audio": "a.wav"}
  ])";
  const std::vector<std::string> base = {"render", "--manifest",
                                         (dir / "bad.json").string(), "--out",
                                         (dir / "o").string()};
  EXPECT_EQ(Cli(base).code, kExitOk);
  std::vector<std::string> strict = base;
  strict.push_back("--strict");
  const CliRun r = Cli(strict);
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_NE(r.err.find("x:"), std::string::npos);
}

TEST(CliTest, MetricsOnEmptyDirectoryFails) {
  TempDir dir;
  const CliRun r = Cli({"metrics", dir.path().string()});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_NE(r.err.find("no stereo inputs"), std::string::npos);
}

TEST(CliTest, PreprocessFeaturesValidate) {
  TempDir dir;
  MakeClips(dir.path());
  const CliRun p = Cli({"preprocess", "--manifest", (dir / "m.json").string(),
                     "--out", (dir / "kept.json").string(), "--report",
                     (dir / "rep.json").string()});
  ASSERT_EQ(p.code, kExitOk) << p.err;
  EXPECT_NE(p.out.find("rejected_short 2"), std::string::npos) << p.out;

  const CliRun f = Cli({"features", "--heatmap", (dir / "b.hmap").string(), "--out",
                     (dir / "f.csv").string()});
  ASSERT_EQ(f.code, kExitOk) << f.err;
  std::ifstream csv(dir / "f.csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "frame,s_h,s_area,s_var,s_lr,s_shape");

  EXPECT_EQ(Cli({"validate", "--manifest", (dir / "m.json").string()}).code, kExitOk);
  std::ofstream(dir / "v.json") << R"([{"id": "q", "audio": "missing.wav"}])";
  EXPECT_EQ(Cli({"validate", "--manifest", (dir / "v.json").string()}).code,
            kExitFailure);
}

TEST(CliTest, TrainAndSample) {
  TempDir dir;
  const std::string ckpt = (dir / "m.bin").string();
  const CliRun t = Cli({"cfm-train", "--out", ckpt, "--steps", "200", "--hidden", "16",
                     "--lr", "0.003", "--loss-csv", (dir / "loss.csv").string()});
  ASSERT_EQ(t.code, kExitOk) << t.err;
  const CliRun s = Cli({"cfm-sample", "--checkpoint", ckpt, "--count", "50", "--out",
                     (dir / "s.csv").string()});
  ASSERT_EQ(s.code, kExitOk) << s.err;
  EXPECT_NE(s.out.find("left mean"), std::string::npos);
  std::ifstream loss(dir / "loss.csv");
  std::string header;
  std::getline(loss, header);
  EXPECT_EQ(header, "step,loss");
}

}  // namespace
}  // namespace sv2a
