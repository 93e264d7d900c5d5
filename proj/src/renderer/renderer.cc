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

#include "sv2a/renderer.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "sv2a/dsp.h"
#include "sv2a/errors.h"

namespace sv2a {

void RenderConfig::Validate() const {
  if (order < 0 || order > kMaxShOrder) {
    throw InvalidArgument("SH order must lie in [0, " +
                          std::to_string(kMaxShOrder) + "]");
  }
  if (layout.size() < 2) {
    throw InvalidArgument("layout needs at least 2 speakers");
  }
  if (block_size == 0) throw InvalidArgument("block size must be positive");
  if (crossfade >= block_size) {
    throw InvalidArgument("crossfade must be shorter than the block");
  }
  head_model.Validate();
}

Renderer::Renderer(const RenderConfig& config, int sample_rate)
    : config_(config),
      sample_rate_(sample_rate),
      decoder_((config.Validate(), config.layout), config.order) {
  if (sample_rate <= 0) throw InvalidArgument("sample rate must be positive");
  const HrirSet set = config.hrirs.has_value()
                          ? *config.hrirs
                          : HrirSet::Analytic(sample_rate, config.head_model);
  if (set.sample_rate() != sample_rate) {
    throw InvalidArgument("HRIR rate " + std::to_string(set.sample_rate()) +
                          " Hz does not match input rate " +
                          std::to_string(sample_rate) + " Hz");
  }
  speaker_hrirs_.reserve(config.layout.size());
  for (const Direction& d : config.layout.directions()) {
    speaker_hrirs_.push_back(Lookup(set, d));
  }
}

BinauralBuffer Renderer::Render(const AudioBuffer& mono,
                                const Trajectory& trajectory) const {
  if (mono.empty()) throw InvalidArgument("cannot render an empty signal");
  if (mono.sample_rate() != sample_rate_) {
    throw InvalidArgument("input rate " + std::to_string(mono.sample_rate()) +
                          " Hz does not match renderer rate " +
                          std::to_string(sample_rate_) + " Hz");
  }
  const std::vector<Direction> dirs =
      trajectory.BlockDirections(mono.size(), sample_rate_, config_.block_size);
  const ShSignal sh =
      EncodeMono(mono, dirs, config_.order,
                 BlockSchedule{config_.block_size, config_.crossfade});
  const std::vector<AudioBuffer> feeds = ProjectToSpeakers(sh, decoder_);

  size_t max_ir = 0;
  for (const HrirPair& p : speaker_hrirs_) {
    max_ir = std::max({max_ir, p.left.size(), p.right.size()});
  }
  const size_t full = mono.size() + max_ir - 1;
  std::vector<double> left(full, 0.0), right(full, 0.0);
  for (size_t m = 0; m < feeds.size(); ++m) {
    const std::vector<double> l =
        FftConvolve(feeds[m].samples(), speaker_hrirs_[m].left);
    const std::vector<double> r =
        FftConvolve(feeds[m].samples(), speaker_hrirs_[m].right);
    for (size_t i = 0; i < l.size(); ++i) left[i] += l[i];
    for (size_t i = 0; i < r.size(); ++i) right[i] += r[i];
  }
  if (config_.trim_output) {
    left.resize(mono.size());
    right.resize(mono.size());
  }
  if (config_.normalize_output) {
    double peak = 0.0;
    for (double v : left) peak = std::max(peak, std::abs(v));
    for (double v : right) peak = std::max(peak, std::abs(v));
    if (peak > 0.0) {
      const double scale = 1.0 / peak;
      for (double& v : left) v *= scale;
      for (double& v : right) v *= scale;
    }
  }
  return BinauralBuffer(AudioBuffer(std::move(left), sample_rate_),
                        AudioBuffer(std::move(right), sample_rate_));
}

BinauralBuffer RenderStatic(const AudioBuffer& mono, const Direction& direction,
                            const RenderConfig& config) {
  return RenderTrajectory(mono, Trajectory::Constant(direction), config);
}

BinauralBuffer RenderTrajectory(const AudioBuffer& mono,
                                const Trajectory& trajectory,
                                const RenderConfig& config) {
  return Renderer(config, mono.sample_rate()).Render(mono, trajectory);
}

Trajectory DirectionFromFeatures(const SpatialFeatureSequence& features,
                                 double field_of_view) {
  if (features.frames.empty()) {
    throw InvalidArgument("feature sequence is empty");
  }
  if (!(features.frame_rate > 0.0)) {
    throw InvalidArgument("feature frame rate must be positive");
  }
  std::vector<Keyframe> keys;
  keys.reserve(features.frames.size());
  for (size_t t = 0; t < features.frames.size(); ++t) {
    keys.push_back({static_cast<double>(t) / features.frame_rate,
                    Direction((0.5 - features.frames[t].s_h) * field_of_view,
                              0.0)});
  }
  return Trajectory(std::move(keys));
}

}  // namespace sv2a
