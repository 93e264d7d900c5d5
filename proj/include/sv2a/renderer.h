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

#ifndef SV2A_RENDERER_H_
#define SV2A_RENDERER_H_

#include <numbers>
#include <optional>

#include "sv2a/ambisonic.h"
#include "sv2a/audio_buffer.h"
#include "sv2a/direction.h"
#include "sv2a/heatmap_features.h"
#include "sv2a/hrir.h"
#include "sv2a/trajectory.h"

namespace sv2a {

struct RenderConfig {
  int order = 1;
  SpeakerLayout layout = RingLayout(4);
  // Measured HRIRs; when unset the analytic head model is synthesized at the
  // input sample rate.
  std::optional<HrirSet> hrirs;
  HeadModelConfig head_model;
  size_t block_size = 1024;
  size_t crossfade = 256;
  // Scales both channels by one factor so the peak is 1.
  bool normalize_output = false;
  // Keeps the first N samples; otherwise the output has N + L - 1 samples
  // for longest IR length L.
  bool trim_output = true;

  void Validate() const;
};

// Mono to binaural through virtual loudspeakers: SH encode, project onto
// the layout, convolve each feed with its speaker HRIR pair and sum.
class Renderer {
 public:
  Renderer(const RenderConfig& config, int sample_rate);

  const RenderConfig& config() const { return config_; }
  int sample_rate() const { return sample_rate_; }
  const DecodeMatrix& decoder() const { return decoder_; }
  const std::vector<HrirPair>& speaker_hrirs() const { return speaker_hrirs_; }

  // Throws InvalidArgument for empty input or a rate mismatch.
  BinauralBuffer Render(const AudioBuffer& mono,
                        const Trajectory& trajectory) const;

 private:
  RenderConfig config_;
  int sample_rate_;
  DecodeMatrix decoder_;
  std::vector<HrirPair> speaker_hrirs_;
};

BinauralBuffer RenderStatic(const AudioBuffer& mono, const Direction& direction,
                            const RenderConfig& config = {});

// Block-wise rendering; each block takes the direction at its start time and
// gains crossfade linearly when the direction changes.
BinauralBuffer RenderTrajectory(const AudioBuffer& mono,
                                const Trajectory& trajectory,
                                const RenderConfig& config = {});

inline constexpr double kDefaultFieldOfView = std::numbers::pi / 2.0;

// One keyframe per feature frame at azimuth (0.5 - s_h) * fov, elevation 0.
Trajectory DirectionFromFeatures(const SpatialFeatureSequence& features,
                                 double field_of_view = kDefaultFieldOfView);

}  // namespace sv2a

#endif  // SV2A_RENDERER_H_
