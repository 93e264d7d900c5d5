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

#ifndef SV2A_TRAJECTORY_H_
#define SV2A_TRAJECTORY_H_

#include <filesystem>
#include <vector>

#include "sv2a/direction.h"

namespace sv2a {

struct Keyframe {
  double time_s = 0.0;
  Direction direction;
};

// Piecewise-constant direction over time: each keyframe holds until the next
// one, and the last holds forever.
class Trajectory {
 public:
  // Throws InvalidArgument if empty, unsorted, or if the first keyframe starts
  // after t = 0 (a gap at the start).
  explicit Trajectory(std::vector<Keyframe> keyframes);

  static Trajectory Constant(const Direction& direction);

  const std::vector<Keyframe>& keyframes() const { return keyframes_; }
  Direction At(double time_s) const;

  // One direction per block, sampled at each block's start time.
  std::vector<Direction> BlockDirections(size_t num_samples, int sample_rate,
                                         size_t block_size) const;

 private:
  std::vector<Keyframe> keyframes_;
};

// CSV with header `time_s,azimuth_deg,elevation_deg`.
// Throws IoError / FormatError.
Trajectory ReadTrajectoryCsv(const std::filesystem::path& path);
void WriteTrajectoryCsv(const std::filesystem::path& path,
                        const Trajectory& trajectory);

}  // namespace sv2a

#endif  // SV2A_TRAJECTORY_H_
