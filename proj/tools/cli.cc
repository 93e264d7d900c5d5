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

#include "cli.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sv2a/errors.h"
#include "sv2a/flow_matching.h"
#include "sv2a/heatmap_features.h"
#include "sv2a/hrir.h"
#include "sv2a/pipeline.h"

namespace sv2a {
namespace {

namespace fs = std::filesystem;

double DegToRad(double deg) { return deg * std::numbers::pi / 180.0; }

void WriteJsonFile(const fs::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << "\n";
  if (!out) throw IoError("failed writing " + path.string());
}

struct PreprocessArgs {
  std::string manifest, out, report;
  double min_duration = 10.0;
  double silence_db = -50.0;
  double max_silence = 0.8;
  size_t threads = 0;
  bool strict = false;
};

int RunPreprocess(const PreprocessArgs& a, std::ostream& out,
                  std::ostream& err) {
  PreprocessConfig cfg;
  cfg.min_duration_seconds = a.min_duration;
  cfg.silence.threshold_dbfs = a.silence_db;
  cfg.silence.max_fraction = a.max_silence;
  const PreprocessResult r = Preprocess(LoadManifest(a.manifest), cfg, a.threads);
  WriteManifest(a.out, r.kept);
  if (!a.report.empty()) WriteJsonFile(a.report, ToJson(r.report));
  for (const ClipDecision& d : r.report.decisions) {
    if (d.outcome == ClipOutcome::kRejectedUnreadable) {
      err << d.id << ": " << d.reason << "\n";
    }
  }
  out << "total " << r.report.total() << " kept " << r.report.kept
      << " rejected_short " << r.report.rejected_short << " rejected_silent "
      << r.report.rejected_silent << " rejected_unreadable "
      << r.report.rejected_unreadable << "\n";
  return a.strict && r.report.rejected_unreadable > 0 ? kExitFailure : kExitOk;
}

struct RenderArgs {
  std::string manifest, out, hrir;
  double fov_deg = 90.0;
  int order = 1;
  size_t speakers = 4;
  size_t block = 1024;
  size_t crossfade = 256;
  bool normalize = false;
  bool no_trim = false;
  double heatmap_fps = kDefaultHeatmapFps;
  size_t threads = 0;
  bool strict = false;
};

int RunRender(const RenderArgs& a, std::ostream& out, std::ostream& err) {
  BatchRenderOptions opt;
  opt.render.order = a.order;
  opt.render.layout = RingLayout(a.speakers);
  if (!a.hrir.empty()) opt.render.hrirs = LoadHrirManifest(a.hrir);
  opt.render.block_size = a.block;
  opt.render.crossfade = a.crossfade;
  opt.render.normalize_output = a.normalize;
  opt.render.trim_output = !a.no_trim;
  opt.field_of_view = DegToRad(a.fov_deg);
  opt.heatmap_fps = a.heatmap_fps;
  const BatchResult r = BatchRender(LoadManifest(a.manifest), opt, a.out, a.threads);
  for (const ClipStatus& s : r.clips) {
    if (!s.ok) err << s.id << ": " << s.error << "\n";
  }
  out << "rendered " << r.clips.size() - r.failures() << " of " << r.clips.size()
      << " clips into " << a.out << "\n";
  return a.strict && r.failures() > 0 ? kExitFailure : kExitOk;
}

struct MetricsArgs {
  std::string input, out, json, csv;
  size_t threads = 0;
  bool strict = false;
};

int RunMetrics(const MetricsArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<fs::path> inputs;
  fs::path default_out;
  if (fs::is_directory(a.input)) {
    inputs = StereoInputsInDirectory(a.input);
    default_out = fs::path(a.input) / "metrics";
  } else {
    for (const ClipEntry& c : LoadManifest(a.input).entries) {
      inputs.push_back(c.audio);
    }
    default_out = fs::absolute(a.input).parent_path() / "metrics";
  }
  const fs::path out_dir = a.out.empty() ? default_out : fs::path(a.out);
  const BatchMetricsResult r = BatchMetrics(inputs, MetricConfig{}, out_dir, a.threads);
  if (!a.json.empty()) WriteJsonFile(a.json, ToJson(r));
  if (!a.csv.empty()) WriteAggregateCsv(a.csv, r.aggregate);
  for (const ClipMetrics& c : r.clips) {
    if (!c.report) err << c.id << ": " << c.error << "\n";
  }
  char buf[96];
  for (const MetricAggregate& m : r.aggregate) {
    std::snprintf(buf, sizeof(buf), "%-8s %.6f (n=%zu)\n", m.metric.c_str(),
                  m.mean, m.count);
    out << buf;
  }
  return a.strict && r.failures() > 0 ? kExitFailure : kExitOk;
}

struct FeaturesArgs {
  std::string heatmap, out;
  double fps = kDefaultHeatmapFps;
  double threshold = 0.5;
};

int RunFeatures(const FeaturesArgs& a, std::ostream& out) {
  FeatureConfig cfg;
  cfg.mask_threshold_rel = a.threshold;
  const SpatialFeatureSequence f =
      ExtractFeatures(LoadHeatmapSequence(a.heatmap, a.fps), cfg);
  WriteFeatureCsv(a.out, f);
  out << "wrote " << f.frames.size() << " feature frames to " << a.out << "\n";
  return kExitOk;
}

struct TrainArgs {
  std::string out, loss_csv;
  TrainConfig cfg;
  double target = 3.0;
  size_t dim = 1;
};

int RunTrain(const TrainArgs& a, std::ostream& out) {
  const std::vector<PairedExample> data = {
      {Eigen::VectorXd::Constant(static_cast<Eigen::Index>(a.dim), a.target),
       Eigen::VectorXd::Constant(static_cast<Eigen::Index>(a.dim), a.target),
       Eigen::VectorXd()}};
  NetConfig net;
  net.data_dim = a.dim;
  net.hidden_width = a.cfg.hidden_width;
  BinauralVelocityModel model =
      a.cfg.shared_weights ? BinauralVelocityModel::Shared(net, a.cfg.rng_seed)
                           : BinauralVelocityModel::Separate(net, a.cfg.rng_seed);
  const TrainResult r = Train(model, data, a.cfg);
  SaveCheckpoint(a.out, model);
  if (!a.loss_csv.empty()) WriteLossCsv(a.loss_csv, r.losses);
  if (!r.losses.empty()) out << "final loss " << r.losses.back() << "\n";
  return kExitOk;
}

struct SampleArgs {
  std::string checkpoint, out;
  size_t count = 1000;
  size_t steps = 32;
  uint64_t seed = 0;
};

int RunSample(const SampleArgs& a, std::ostream& out) {
  const BinauralVelocityModel model = LoadCheckpoint(a.checkpoint);
  const size_t d = model.nets()[0].data_dim();
  const Eigen::VectorXd cond =
      Eigen::VectorXd::Zero(static_cast<Eigen::Index>(model.nets()[0].cond_dim()));
  std::mt19937_64 rng(a.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Eigen::VectorXd> draws[2];
  Eigen::VectorXd mean[2] = {Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d)),
                             Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d))};
  for (size_t i = 0; i < a.count; ++i) {
    for (int ch = 0; ch < 2; ++ch) {
      Eigen::VectorXd x0(static_cast<Eigen::Index>(d));
      for (Eigen::Index k = 0; k < x0.size(); ++k) x0(k) = normal(rng);
      draws[ch].push_back(SampleEuler(model.channel(ch), x0, cond, a.steps));
      mean[ch] += draws[ch].back();
    }
  }
  if (!a.out.empty()) {
    std::ofstream f(a.out);
    if (!f) throw IoError("cannot write " + a.out);
    f << "draw,channel";
    for (size_t k = 0; k < d; ++k) f << ",x" << k;
    f << "\n";
    char buf[32];
    for (size_t i = 0; i < a.count; ++i) {
      for (int ch = 0; ch < 2; ++ch) {
        f << i << (ch == 0 ? ",left" : ",right");
        for (size_t k = 0; k < d; ++k) {
          std::snprintf(buf, sizeof(buf), ",%.17g",
                        draws[ch][i](static_cast<Eigen::Index>(k)));
          f << buf;
        }
        f << "\n";
      }
    }
  }
  for (int ch = 0; ch < 2; ++ch) {
    out << (ch == 0 ? "left" : "right") << " mean";
    for (Eigen::Index k = 0; k < mean[ch].size(); ++k) {
      out << " " << mean[ch](k) / static_cast<double>(std::max<size_t>(1, a.count));
    }
    out << "\n";
  }
  return kExitOk;
}

int RunValidate(const std::string& manifest, std::ostream& out,
                std::ostream& err) {
  const ClipManifest m = LoadManifest(manifest);
  const std::vector<std::string> problems = ValidateManifest(m);
  for (const std::string& p : problems) err << p << "\n";
  out << m.entries.size() << " clips, " << problems.size() << " problems\n";
  return problems.empty() ? kExitOk : kExitFailure;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Mono to binaural rendering, spatial metrics and toy flow matching"};
  app.name("sv2a");
  app.require_subcommand(1);

  PreprocessArgs pre;
  auto* pre_cmd = app.add_subcommand("preprocess", "Duration and silence filters");
  pre_cmd->add_option("--manifest", pre.manifest, "Input manifest JSON")->required();
  pre_cmd->add_option("--out", pre.out, "Filtered manifest JSON")->required();
  pre_cmd->add_option("--report", pre.report, "Preprocess report JSON");
  pre_cmd->add_option("--min-duration", pre.min_duration, "Minimum clip length in seconds");
  pre_cmd->add_option("--silence-db", pre.silence_db, "Silent-frame RMS threshold (dBFS)");
  pre_cmd->add_option("--max-silence", pre.max_silence, "Reject above this silent fraction");
  pre_cmd->add_option("--threads", pre.threads, "Worker threads (0 = all cores)");
  pre_cmd->add_flag("--strict", pre.strict, "Exit 1 if any clip is unreadable");

  RenderArgs ren;
  auto* ren_cmd = app.add_subcommand("render", "Batch mono to binaural rendering");
  ren_cmd->add_option("--manifest", ren.manifest, "Input manifest JSON")->required();
  ren_cmd->add_option("--out", ren.out, "Output directory")->required();
  ren_cmd->add_option("--fov-deg", ren.fov_deg, "Field of view for heatmap directions");
  ren_cmd->add_option("--order", ren.order, "SH order (0-2)");
  ren_cmd->add_option("--speakers", ren.speakers, "Virtual ring speakers");
  ren_cmd->add_option("--hrir", ren.hrir, "Measured HRIR manifest (default: analytic head)");
  ren_cmd->add_option("--block", ren.block, "Block size in samples");
  ren_cmd->add_option("--crossfade", ren.crossfade, "Crossfade length in samples");
  ren_cmd->add_option("--heatmap-fps", ren.heatmap_fps, "Heatmap frame rate");
  ren_cmd->add_flag("--normalize", ren.normalize, "Peak-normalize both channels together");
  ren_cmd->add_flag("--no-trim", ren.no_trim, "Keep the convolution tail");
  ren_cmd->add_option("--threads", ren.threads, "Worker threads (0 = all cores)");
  ren_cmd->add_flag("--strict", ren.strict, "Exit 1 if any clip fails");

  MetricsArgs met;
  auto* met_cmd = app.add_subcommand("metrics", "IACC, ILD, ITD, ISD and IPD of stereo files");
  met_cmd->add_option("input", met.input, "Directory of stereo WAVs or a manifest")->required();
  met_cmd->add_option("--out", met.out, "Per-clip JSON and aggregate.csv directory");
  met_cmd->add_option("--json", met.json, "Aggregate report JSON");
  met_cmd->add_option("--csv", met.csv, "Aggregate CSV");
  met_cmd->add_option("--threads", met.threads, "Worker threads (0 = all cores)");
  met_cmd->add_flag("--strict", met.strict, "Exit 1 if any clip fails");

  FeaturesArgs feat;
  auto* feat_cmd = app.add_subcommand("features", "Spatial features of a heatmap file");
  feat_cmd->add_option("--heatmap", feat.heatmap, "HMAP v1 file")->required();
  feat_cmd->add_option("--out", feat.out, "Feature CSV")->required();
  feat_cmd->add_option("--fps", feat.fps, "Heatmap frame rate");
  feat_cmd->add_option("--threshold", feat.threshold, "Mask threshold relative to the frame max");

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("cfm-train", "Train the toy constant-target flow");
  train_cmd->add_option("--out", train.out, "Checkpoint path")->required();
  train_cmd->add_option("--loss-csv", train.loss_csv, "Loss trace CSV");
  train_cmd->add_option("--steps", train.cfg.steps, "Optimizer steps");
  train_cmd->add_option("--lr", train.cfg.learning_rate, "Learning rate");
  train_cmd->add_option("--batch", train.cfg.batch_size, "Batch size");
  train_cmd->add_option("--hidden", train.cfg.hidden_width, "Hidden width");
  train_cmd->add_option("--seed", train.cfg.rng_seed, "RNG seed");
  train_cmd->add_option("--target", train.target, "Constant data value");
  train_cmd->add_option("--dim", train.dim, "Data dimension");
  train_cmd->add_flag("--shared", train.cfg.shared_weights, "One net with a channel flag");

  SampleArgs samp;
  auto* samp_cmd = app.add_subcommand("cfm-sample", "Euler samples from a checkpoint");
  samp_cmd->add_option("--checkpoint", samp.checkpoint, "Checkpoint path")->required();
  samp_cmd->add_option("--count", samp.count, "Draws per channel");
  samp_cmd->add_option("--steps", samp.steps, "Euler steps");
  samp_cmd->add_option("--seed", samp.seed, "RNG seed");
  samp_cmd->add_option("--out", samp.out, "Samples CSV");

  std::string validate_manifest;
  auto* val_cmd = app.add_subcommand("validate", "Check that manifest files are readable");
  val_cmd->add_option("--manifest", validate_manifest, "Manifest JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*pre_cmd) return RunPreprocess(pre, out, err);
    if (*ren_cmd) return RunRender(ren, out, err);
    if (*met_cmd) return RunMetrics(met, out, err);
    if (*feat_cmd) return RunFeatures(feat, out);
    if (*train_cmd) return RunTrain(train, out);
    if (*samp_cmd) return RunSample(samp, out);
    if (*val_cmd) return RunValidate(validate_manifest, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace sv2a
