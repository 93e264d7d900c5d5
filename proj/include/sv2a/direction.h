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

#ifndef SV2A_DIRECTION_H_
#define SV2A_DIRECTION_H_

namespace sv2a {

// Source or loudspeaker direction. Azimuth is measured counterclockwise from
// the front, so positive azimuth is on the listener's left.
class Direction {
 public:
  Direction() = default;
  // Wraps azimuth into [-pi, pi] and clamps elevation to [-pi/2, pi/2].
  Direction(double azimuth_rad, double elevation_rad);

  static Direction FromDegrees(double azimuth_deg, double elevation_deg = 0.0);

  double azimuth() const { return azimuth_; }
  double elevation() const { return elevation_; }

  // Unit vector (x front, y left, z up).
  double x() const;
  double y() const;
  double z() const;

  friend bool operator==(const Direction&, const Direction&) = default;

 private:
  double azimuth_ = 0.0;
  double elevation_ = 0.0;
};

// Great-circle angle between two directions, in [0, pi].
double AngularDistance(const Direction& a, const Direction& b);

}  // namespace sv2a

#endif  // SV2A_DIRECTION_H_
