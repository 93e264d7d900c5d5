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

#include "sv2a/direction.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sv2a {

Direction::Direction(double azimuth_rad, double elevation_rad)
    : azimuth_(std::remainder(azimuth_rad, 2.0 * std::numbers::pi)),
      elevation_(std::clamp(elevation_rad, -std::numbers::pi / 2,
                            std::numbers::pi / 2)) {}

Direction Direction::FromDegrees(double azimuth_deg, double elevation_deg) {
  constexpr double kDegToRad = std::numbers::pi / 180.0;
  return Direction(azimuth_deg * kDegToRad, elevation_deg * kDegToRad);
}

double Direction::x() const {
  return std::cos(azimuth_) * std::cos(elevation_);
}
double Direction::y() const {
  return std::sin(azimuth_) * std::cos(elevation_);
}
double Direction::z() const { return std::sin(elevation_); }

double AngularDistance(const Direction& a, const Direction& b) {
  const double cx = a.y() * b.z() - a.z() * b.y();
  const double cy = a.z() * b.x() - a.x() * b.z();
  const double cz = a.x() * b.y() - a.y() * b.x();
  const double cross = std::sqrt(cx * cx + cy * cy + cz * cz);
  const double dot = a.x() * b.x() + a.y() * b.y() + a.z() * b.z();
  return std::atan2(cross, dot);
}

}  // namespace sv2a
