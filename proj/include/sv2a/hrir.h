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

#ifndef SV2A_HRIR_H_
#define SV2A_HRIR_H_

#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

#include "sv2a/direction.h"

namespace sv2a {

struct HrirPair {
  std::vector<double> left;
  std::vector<double> right;
  int sample_rate = 0;
};

// Broadband spherical-head model.
struct HeadModelConfig {
  double head_radius_m = 0.0875;
  double speed_of_sound_mps = 343.0;
  // Far-ear level relative to the near ear on the interaural axis.
  double contralateral_attenuation_db = 6.0;
  int ir_length = 64;
  // Delay of the near ear, in samples. The far ear adds the Woodworth delay.
  int reference_delay = 0;

  // Throws InvalidArgument if any field is out of range.
  void Validate() const;
};

// Woodworth interaural delay (a / c)(theta + sin theta) in seconds for a
// lateral angle theta in [0, pi/2].
double WoodworthDelaySeconds(double lateral_angle_rad,
                             const HeadModelConfig& cfg);

// Angle between the source and the median plane, in [-pi/2, pi/2]; positive
// toward the left ear.
double LateralAngle(const Direction& direction);

// Far-ear delay of the analytic model in whole samples.
int AnalyticFarEarDelaySamples(const Direction& direction, int sample_rate,
                               const HeadModelConfig& cfg);

// Per-ear linear gain: 0 dB on the ear axis, -attenuation dB opposite it,
// linear in cos(angle to the ear axis) in between. Ears sit at azimuth
// +pi/2 (left) and -pi/2 (right).
double AnalyticEarGainDb(const Direction& direction, bool left_ear,
                         const HeadModelConfig& cfg);

// Each ear is one scaled impulse. The near ear sits at reference_delay; the
// far ear is further delayed by the Woodworth delay rounded to the nearest
// sample.
HrirPair AnalyticHrir(const Direction& direction, int sample_rate,
                      const HeadModelConfig& cfg = {});

enum class HrirSource { kAnalytic, kMeasured };

// Either an analytic model (exact synthesis for any direction) or a measured
// table searched by nearest great-circle distance.
class HrirSet {
 public:
  static HrirSet Analytic(int sample_rate, const HeadModelConfig& cfg = {});
  // Throws InvalidArgument if empty, rates differ, or directions repeat.
  static HrirSet Measured(std::vector<std::pair<Direction, HrirPair>> entries);

  HrirSource source() const { return source_; }
  int sample_rate() const { return sample_rate_; }
  size_t size() const { return entries_.size(); }
  const std::vector<std::pair<Direction, HrirPair>>& entries() const {
    return entries_;
  }
  const std::optional<HeadModelConfig>& head_model() const {
    return head_model_;
  }

 private:
  HrirSet() = default;

  HrirSource source_ = HrirSource::kAnalytic;
  int sample_rate_ = 0;
  std::optional<HeadModelConfig> head_model_;
  std::vector<std::pair<Direction, HrirPair>> entries_;
};

// Analytic sets synthesize the exact direction. Measured sets return the entry
// with the smallest angular distance; ties go to the lexicographically
// smallest (azimuth, elevation).
HrirPair Lookup(const HrirSet& set, const Direction& direction);

// JSON array of {"azimuth_deg", "elevation_deg", "file"}; files are 2-channel
// WAVs relative to the manifest. Throws IoError, FormatError or
// InvalidArgument; messages name the offending file.
HrirSet LoadHrirManifest(const std::filesystem::path& path);

}  // namespace sv2a

#endif  // SV2A_HRIR_H_
