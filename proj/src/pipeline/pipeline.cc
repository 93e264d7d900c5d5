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

#include "sv2a/pipeline.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "sv2a/dsp.h"
#include "sv2a/errors.h"
#include "sv2a/heatmap_features.h"
#include "sv2a/parallel.h"
#include "sv2a/trajectory.h"

namespace sv2a {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path Resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return (path.is_absolute() ? path : base / path).lexically_normal();
}

std::string Relative(const fs::path& p, const fs::path& base) {
  const fs::path rel = p.lexically_proximate(base);
  return (rel.empty() ? p : rel).generic_string();
}

json ReadJson(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

void EnsureWritableDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string());
  }
  const fs::path probe = dir / ".sv2a_write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw IoError("output directory is not writable: " + dir.string());
  }
  fs::remove(probe, ec);
}

json ToJson(const QualityFlags& q) {
  return {{"clipping_fraction", q.clipping_fraction},
          {"dc_offset", q.dc_offset},
          {"clipping", q.clipping},
          {"dc", q.dc}};
}

}  // namespace

ClipManifest ManifestFromJson(const json& j, const fs::path& base_dir) {
  if (!j.is_array()) throw FormatError("manifest must be a JSON array");
  ClipManifest m;
  std::set<std::string> ids;
  for (size_t i = 0; i < j.size(); ++i) {
    const json& e = j[i];
    const std::string where = "manifest entry " + std::to_string(i);
    if (!e.is_object()) throw FormatError(where + " is not an object");
    if (!e.contains("id") || !e["id"].is_string() ||
        e["id"].get<std::string>().empty()) {
      throw FormatError(where + " needs a non-empty string id");
    }
    if (!e.contains("audio") || !e["audio"].is_string()) {
      throw FormatError(where + " needs an audio path");
    }
    ClipEntry c;
    c.id = e["id"].get<std::string>();
    if (c.id.find_first_of("/\\") != std::string::npos) {
      throw FormatError(where + ": id must not contain path separators");
    }
    if (!ids.insert(c.id).second) {
      throw FormatError("duplicate manifest id " + c.id);
    }
    c.audio = Resolve(base_dir, e["audio"].get<std::string>());
    auto optional_path = [&](const char* key) -> std::optional<fs::path> {
      if (!e.contains(key) || e[key].is_null()) return std::nullopt;
      if (!e[key].is_string()) throw FormatError(where + ": " + key + " must be a string");
      return Resolve(base_dir, e[key].get<std::string>());
    };
    c.heatmap = optional_path("heatmap");
    c.trajectory = optional_path("trajectory");
    if (e.contains("caption") && !e["caption"].is_null()) {
      if (!e["caption"].is_string()) throw FormatError(where + ": caption must be a string");
      c.caption = e["caption"].get<std::string>();
    }
    m.entries.push_back(std::move(c));
  }
  return m;
}

ClipManifest LoadManifest(const fs::path& path) {
  const json j = ReadJson(path);
  const fs::path base = fs::absolute(path).parent_path();
  try {
    return ManifestFromJson(j, base);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void WriteManifest(const fs::path& path, const ClipManifest& manifest) {
  const fs::path base = fs::absolute(path).parent_path();
  json j = json::array();
  for (const ClipEntry& c : manifest.entries) {
    json e = {{"id", c.id}, {"audio", Relative(c.audio, base)}};
    if (c.heatmap) e["heatmap"] = Relative(*c.heatmap, base);
    if (c.trajectory) e["trajectory"] = Relative(*c.trajectory, base);
    if (c.caption) e["caption"] = *c.caption;
    j.push_back(std::move(e));
  }
  WriteText(path, j.dump(2) + "\n");
}

std::vector<std::string> ValidateManifest(const ClipManifest& manifest) {
  std::vector<std::string> problems;
  for (const ClipEntry& c : manifest.entries) {
    try {
      ReadWavInfo(c.audio);
    } catch (const Error& e) {
      problems.push_back(c.id + ": audio: " + e.what());
    }
    if (c.heatmap) {
      try {
        LoadHeatmapSequence(*c.heatmap);
      } catch (const Error& e) {
        problems.push_back(c.id + ": heatmap: " + e.what());
      }
    }
    if (c.trajectory) {
      try {
        ReadTrajectoryCsv(*c.trajectory);
      } catch (const Error& e) {
        problems.push_back(c.id + ": trajectory: " + e.what());
      }
    }
  }
  return problems;
}

bool PassesDurationFilter(double duration_seconds, double min_seconds) {
  return duration_seconds >= min_seconds;
}

double SilenceFraction(const AudioBuffer& audio, const SilenceConfig& cfg) {
  if (cfg.frame == 0 || cfg.hop == 0) {
    throw InvalidArgument("silence frame and hop must be positive");
  }
  if (audio.size() < cfg.frame) {
    throw InvalidArgument("audio of " + std::to_string(audio.size()) +
                          " samples is shorter than one silence frame");
  }
  const double threshold = std::pow(10.0, cfg.threshold_dbfs / 20.0);
  const std::vector<double> rms = FrameRms(audio.samples(), cfg.frame, cfg.hop);
  const auto silent = std::count_if(rms.begin(), rms.end(),
                                    [&](double r) { return r < threshold; });
  return static_cast<double>(silent) / static_cast<double>(rms.size());
}

QualityFlags AssessQuality(const AudioBuffer& audio, const QualityConfig& cfg) {
  QualityFlags q;
  if (audio.empty()) return q;
  size_t clipped = 0;
  double sum = 0.0;
  for (double v : audio.samples()) {
    clipped += std::abs(v) >= cfg.clip_level ? 1 : 0;
    sum += v;
  }
  const double n = static_cast<double>(audio.size());
  q.clipping_fraction = static_cast<double>(clipped) / n;
  q.dc_offset = sum / n;
  q.clipping = q.clipping_fraction > cfg.max_clipping_fraction;
  q.dc = std::abs(q.dc_offset) > cfg.max_dc_offset;
  return q;
}

const char* OutcomeName(ClipOutcome outcome) {
  switch (outcome) {
    case ClipOutcome::kKept:
      return "kept";
    case ClipOutcome::kRejectedShort:
      return "rejected_short";
    case ClipOutcome::kRejectedSilent:
      return "rejected_silent";
    case ClipOutcome::kRejectedUnreadable:
      return "rejected_unreadable";
  }
  return "unknown";
}

json ToJson(const PreprocessReport& report) {
  json clips = json::array();
  for (const ClipDecision& d : report.decisions) {
    json c = {{"id", d.id},
              {"outcome", OutcomeName(d.outcome)},
              {"reason", d.reason},
              {"duration_s", d.duration_seconds}};
    if (d.silence_fraction) c["silence_fraction"] = *d.silence_fraction;
    if (d.quality) c["quality"] = ToJson(*d.quality);
    clips.push_back(std::move(c));
  }
  return {{"total", report.total()},
          {"kept", report.kept},
          {"rejected_short", report.rejected_short},
          {"rejected_silent", report.rejected_silent},
          {"rejected_unreadable", report.rejected_unreadable},
          {"clips", std::move(clips)}};
}

PreprocessResult Preprocess(const ClipManifest& manifest,
                            const PreprocessConfig& cfg, size_t workers) {
  std::vector<ClipDecision> decisions(manifest.entries.size());
  ParallelFor(decisions.size(), WorkerCount(workers), [&](size_t i) {
    const ClipEntry& clip = manifest.entries[i];
    ClipDecision& d = decisions[i];
    d.id = clip.id;
    try {
      const WavInfo info = ReadWavInfo(clip.audio);
      d.duration_seconds = info.duration_seconds();
      if (!PassesDurationFilter(d.duration_seconds, cfg.min_duration_seconds)) {
        d.outcome = ClipOutcome::kRejectedShort;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "duration %.3f s < %.3f s",
                      d.duration_seconds, cfg.min_duration_seconds);
        d.reason = buf;
        return;
      }
      const AudioBuffer audio = ReadMonoWav(clip.audio);
      d.silence_fraction = SilenceFraction(audio, cfg.silence);
      if (*d.silence_fraction > cfg.silence.max_fraction) {
        d.outcome = ClipOutcome::kRejectedSilent;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "silence fraction %.4f > %.4f",
                      *d.silence_fraction, cfg.silence.max_fraction);
        d.reason = buf;
        return;
      }
      d.quality = AssessQuality(audio, cfg.quality);
      d.outcome = ClipOutcome::kKept;
      if (d.quality->clipping) d.reason += "flag: clipping;";
      if (d.quality->dc) d.reason += "flag: dc offset;";
    } catch (const Error& e) {
      d.outcome = ClipOutcome::kRejectedUnreadable;
      d.reason = e.what();
    }
  });

  PreprocessResult result;
  for (size_t i = 0; i < decisions.size(); ++i) {
    switch (decisions[i].outcome) {
      case ClipOutcome::kKept:
        ++result.report.kept;
        result.kept.entries.push_back(manifest.entries[i]);
        break;
      case ClipOutcome::kRejectedShort:
        ++result.report.rejected_short;
        break;
      case ClipOutcome::kRejectedSilent:
        ++result.report.rejected_silent;
        break;
      case ClipOutcome::kRejectedUnreadable:
        ++result.report.rejected_unreadable;
        break;
    }
  }
  result.report.decisions = std::move(decisions);
  return result;
}

size_t BatchResult::failures() const {
  return static_cast<size_t>(std::count_if(
      clips.begin(), clips.end(), [](const ClipStatus& c) { return !c.ok; }));
}

std::string BinauralFileName(const std::string& id) {
  return id + "_binaural.wav";
}

Trajectory ClipTrajectory(const ClipEntry& entry,
                          const BatchRenderOptions& options) {
  if (entry.trajectory) return ReadTrajectoryCsv(*entry.trajectory);
  if (entry.heatmap) {
    const HeatmapSequence seq =
        LoadHeatmapSequence(*entry.heatmap, options.heatmap_fps);
    return DirectionFromFeatures(ExtractFeatures(seq, options.features),
                                 options.field_of_view);
  }
  throw InvalidArgument("clip " + entry.id + " has neither a trajectory nor a heatmap");
}

BatchResult BatchRender(const ClipManifest& manifest,
                        const BatchRenderOptions& options,
                        const fs::path& out_dir, size_t workers) {
  options.render.Validate();
  EnsureWritableDir(out_dir);
  BatchResult result;
  result.clips.resize(manifest.entries.size());
  ParallelFor(result.clips.size(), WorkerCount(workers), [&](size_t i) {
    const ClipEntry& clip = manifest.entries[i];
    ClipStatus& status = result.clips[i];
    status.id = clip.id;
    status.output = out_dir / BinauralFileName(clip.id);
    try {
      const AudioBuffer mono = ReadMonoWav(clip.audio);
      const BinauralBuffer out =
          RenderTrajectory(mono, ClipTrajectory(clip, options), options.render);
      WriteWav(status.output, out);
      status.ok = true;
    } catch (const Error& e) {
      status.error = e.what();
    }
  });

  json log = json::array();
  for (const ClipStatus& s : result.clips) {
    log.push_back({{"id", s.id},
                   {"ok", s.ok},
                   {"output", s.output.filename().string()},
                   {"error", s.error}});
  }
  WriteText(out_dir / "render_log.json", log.dump(2) + "\n");
  return result;
}

size_t BatchMetricsResult::failures() const {
  return static_cast<size_t>(
      std::count_if(clips.begin(), clips.end(),
                    [](const ClipMetrics& c) { return !c.report.has_value(); }));
}

std::vector<fs::path> StereoInputsInDirectory(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  std::vector<fs::path> wavs;
  for (const fs::directory_entry& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::string ext = e.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext == ".wav") wavs.push_back(e.path());
  }
  std::sort(wavs.begin(), wavs.end());
  std::vector<fs::path> stereo;
  for (const fs::path& p : wavs) {
    try {
      if (ReadWavInfo(p).channels == 2) stereo.push_back(p);
    } catch (const Error&) {
      // Unreadable files are reported by the metrics stage itself.
      stereo.push_back(p);
    }
  }
  return stereo;
}

BatchMetricsResult BatchMetrics(const std::vector<fs::path>& inputs,
                                const MetricConfig& cfg,
                                const std::optional<fs::path>& out_dir,
                                size_t workers) {
  if (inputs.empty()) throw InvalidArgument("no stereo inputs");
  cfg.Validate();
  if (out_dir) EnsureWritableDir(*out_dir);
  BatchMetricsResult result;
  result.clips.resize(inputs.size());
  ParallelFor(inputs.size(), WorkerCount(workers), [&](size_t i) {
    ClipMetrics& c = result.clips[i];
    c.input = inputs[i];
    c.id = inputs[i].stem().string();
    try {
      c.report = SpatialReport(ReadBinauralWav(inputs[i]), cfg);
      if (out_dir) {
        json j = ToJson(*c.report);
        j["id"] = c.id;
        j["input"] = c.input.filename().string();
        WriteText(*out_dir / (c.id + "_metrics.json"), j.dump(2) + "\n");
      }
    } catch (const Error& e) {
      c.report.reset();
      c.error = e.what();
    }
  });

  const char* names[] = {"iacc", "ild_db", "itd_ms", "isd", "ipd_rad"};
  for (size_t k = 0; k < 5; ++k) {
    MetricAggregate a{names[k], 0.0, 0};
    for (const ClipMetrics& c : result.clips) {
      if (!c.report) continue;
      const SpatialMetricsReport& r = *c.report;
      const double v[] = {r.iacc, r.ild_db, r.itd_ms, r.isd, r.ipd_rad};
      a.mean += v[k];
      ++a.count;
    }
    if (a.count > 0) a.mean /= static_cast<double>(a.count);
    result.aggregate.push_back(a);
  }
  if (out_dir) WriteAggregateCsv(*out_dir / "aggregate.csv", result.aggregate);
  return result;
}

json ToJson(const BatchMetricsResult& result) {
  json clips = json::array();
  for (const ClipMetrics& c : result.clips) {
    json j = {{"id", c.id}, {"input", c.input.filename().string()}};
    if (c.report) {
      j["metrics"] = ToJson(*c.report);
    } else {
      j["error"] = c.error;
    }
    clips.push_back(std::move(j));
  }
  json aggregate = json::object();
  for (const MetricAggregate& a : result.aggregate) {
    aggregate[a.metric] = {{"mean", a.mean}, {"count", a.count}};
  }
  return {{"clips", std::move(clips)},
          {"aggregate", std::move(aggregate)},
          {"failures", result.failures()}};
}

void WriteAggregateCsv(const fs::path& path,
                       const std::vector<MetricAggregate>& aggregate) {
  std::string text = "metric,mean,count\n";
  char buf[128];
  for (const MetricAggregate& a : aggregate) {
    std::snprintf(buf, sizeof(buf), "%s,%.17g,%zu\n", a.metric.c_str(), a.mean,
                  a.count);
    text += buf;
  }
  WriteText(path, text);
}

}  // namespace sv2a
