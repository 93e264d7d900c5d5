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

#ifndef SV2A_PIPELINE_H_
#define SV2A_PIPELINE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sv2a/audio_buffer.h"
#include "sv2a/heatmap.h"
#include "sv2a/renderer.h"
#include "sv2a/spatial_metrics.h"
#include "sv2a/wav_io.h"

namespace sv2a {

// Paths are absolute once loaded; relative paths in the file resolve against
// the manifest's directory.
struct ClipEntry {
  std::string id;
  std::filesystem::path audio;
  std::optional<std::filesystem::path> heatmap;
  std::optional<std::filesystem::path> trajectory;
  std::optional<std::string> caption;

  friend bool operator==(const ClipEntry&, const ClipEntry&) = default;
};

struct ClipManifest {
  std::vector<ClipEntry> entries;
  friend bool operator==(const ClipManifest&, const ClipManifest&) = default;
};

// JSON array of {"id", "audio", "heatmap"?, "trajectory"?, "caption"?}.
// Throws FormatError for bad JSON, missing fields or duplicate ids.
ClipManifest LoadManifest(const std::filesystem::path& path);
ClipManifest ManifestFromJson(const nlohmann::json& j,
                              const std::filesystem::path& base_dir);
// Paths are written relative to the manifest's directory.
void WriteManifest(const std::filesystem::path& path,
                   const ClipManifest& manifest);

// Problems that would stop a clip from being processed; empty when valid.
std::vector<std::string> ValidateManifest(const ClipManifest& manifest);

// Keeps clips at least `min_seconds` long; the boundary is kept.
bool PassesDurationFilter(double duration_seconds, double min_seconds = 10.0);

struct SilenceConfig {
  size_t frame = 400;
  size_t hop = 160;
  double threshold_dbfs = -50.0;
  double max_fraction = 0.8;
};

// Fraction of frames whose RMS is below the threshold. Throws
// InvalidArgument for audio shorter than one frame.
double SilenceFraction(const AudioBuffer& audio, const SilenceConfig& cfg = {});

struct QualityConfig {
  double clip_level = 0.999;
  double max_clipping_fraction = 0.01;
  double max_dc_offset = 0.02;
};

struct QualityFlags {
  double clipping_fraction = 0.0;
  double dc_offset = 0.0;
  bool clipping = false;
  bool dc = false;
};

// Flags only; never rejects.
QualityFlags AssessQuality(const AudioBuffer& audio,
                           const QualityConfig& cfg = {});

enum class ClipOutcome {
  kKept,
  kRejectedShort,
  kRejectedSilent,
  kRejectedUnreadable,
};
const char* OutcomeName(ClipOutcome outcome);

struct ClipDecision {
  std::string id;
  ClipOutcome outcome = ClipOutcome::kKept;
  std::string reason;
  double duration_seconds = 0.0;
  std::optional<double> silence_fraction;
  std::optional<QualityFlags> quality;
};

struct PreprocessReport {
  size_t kept = 0;
  size_t rejected_short = 0;
  size_t rejected_silent = 0;
  size_t rejected_unreadable = 0;
  std::vector<ClipDecision> decisions;  // manifest order

  size_t total() const {
    return kept + rejected_short + rejected_silent + rejected_unreadable;
  }
};
nlohmann::json ToJson(const PreprocessReport& report);

struct PreprocessConfig {
  double min_duration_seconds = 10.0;
  SilenceConfig silence;
  QualityConfig quality;
};

struct PreprocessResult {
  ClipManifest kept;
  PreprocessReport report;
};

// Duration filter on the WAV header, then the silence filter, then quality
// flags on the kept clips. Per-clip failures become rejections.
PreprocessResult Preprocess(const ClipManifest& manifest,
                            const PreprocessConfig& cfg = {},
                            size_t workers = 0);

struct BatchRenderOptions {
  RenderConfig render;
  double field_of_view = kDefaultFieldOfView;
  double heatmap_fps = kDefaultHeatmapFps;
  FeatureConfig features;
};

struct ClipStatus {
  std::string id;
  bool ok = false;
  std::filesystem::path output;
  std::string error;
};

struct BatchResult {
  std::vector<ClipStatus> clips;  // manifest order
  size_t failures() const;
};

// Output name of a rendered clip.
std::string BinauralFileName(const std::string& id);

// Trajectory for a clip: its trajectory CSV, else one derived from its
// heatmap features. Throws InvalidArgument when it has neither.
Trajectory ClipTrajectory(const ClipEntry& entry,
                          const BatchRenderOptions& options);

// Writes `<id>_binaural.wav` (float32) per clip and render_log.json.
// Throws IoError when `out_dir` cannot be written.
BatchResult BatchRender(const ClipManifest& manifest,
                        const BatchRenderOptions& options,
                        const std::filesystem::path& out_dir,
                        size_t workers = 0);

struct ClipMetrics {
  std::string id;
  std::filesystem::path input;
  std::optional<SpatialMetricsReport> report;
  std::string error;
};

struct MetricAggregate {
  std::string metric;
  double mean = 0.0;
  size_t count = 0;
};

struct BatchMetricsResult {
  std::vector<ClipMetrics> clips;
  std::vector<MetricAggregate> aggregate;  // iacc, ild_db, itd_ms, isd, ipd_rad
  size_t failures() const;
};

// Stereo WAVs in a directory (sorted by name; mono files are skipped).
std::vector<std::filesystem::path> StereoInputsInDirectory(
    const std::filesystem::path& dir);

// Metrics for each input. When `out_dir` is set, writes
// `<stem>_metrics.json` per clip and aggregate.csv (`metric,mean,count`).
// Throws InvalidArgument("no stereo inputs") for an empty list.
BatchMetricsResult BatchMetrics(const std::vector<std::filesystem::path>& inputs,
                                const MetricConfig& cfg,
                                const std::optional<std::filesystem::path>& out_dir,
                                size_t workers = 0);

nlohmann::json ToJson(const BatchMetricsResult& result);
void WriteAggregateCsv(const std::filesystem::path& path,
                       const std::vector<MetricAggregate>& aggregate);

}  // namespace sv2a

#endif  // SV2A_PIPELINE_H_
