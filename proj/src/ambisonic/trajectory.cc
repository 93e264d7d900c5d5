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

#include "sv2a/trajectory.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "sv2a/errors.h"

namespace sv2a {
namespace {

constexpr char kCsvHeader[] = "time_s,azimuth_deg,elevation_deg";

std::string Trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

Trajectory::Trajectory(std::vector<Keyframe> keyframes)
    : keyframes_(std::move(keyframes)) {
  if (keyframes_.empty()) throw InvalidArgument("trajectory has no keyframes");
  if (keyframes_.front().time_s > 0.0) {
    throw InvalidArgument("trajectory gap: first keyframe starts at " +
                          std::to_string(keyframes_.front().time_s) +
                          " s instead of 0");
  }
  for (size_t i = 1; i < keyframes_.size(); ++i) {
    if (!(keyframes_[i].time_s > keyframes_[i - 1].time_s)) {
      throw InvalidArgument("trajectory keyframe times must increase strictly");
    }
  }
  for (const Keyframe& k : keyframes_) {
    if (!std::isfinite(k.time_s)) {
      throw InvalidArgument("trajectory time is not finite");
    }
  }
}

Trajectory Trajectory::Constant(const Direction& direction) {
  return Trajectory({Keyframe{0.0, direction}});
}

Direction Trajectory::At(double time_s) const {
  auto it = std::upper_bound(
      keyframes_.begin(), keyframes_.end(), time_s,
      [](double t, const Keyframe& k) { return t < k.time_s; });
  if (it == keyframes_.begin()) return keyframes_.front().direction;
  return std::prev(it)->direction;
}

std::vector<Direction> Trajectory::BlockDirections(size_t num_samples,
                                                   int sample_rate,
                                                   size_t block_size) const {
  if (sample_rate <= 0) throw InvalidArgument("sample rate must be positive");
  if (block_size == 0) throw InvalidArgument("block size must be positive");
  const size_t blocks = (num_samples + block_size - 1) / block_size;
  std::vector<Direction> out;
  out.reserve(blocks);
  for (size_t b = 0; b < blocks; ++b) {
    out.push_back(At(static_cast<double>(b * block_size) / sample_rate));
  }
  return out;
}

Trajectory ReadTrajectoryCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trajectory: " + path.string());
  std::string line;
  if (!std::getline(in, line) || Trim(line) != kCsvHeader) {
    throw FormatError(path.string() + ": expected header '" +
                      std::string(kCsvHeader) + "'");
  }
  std::vector<Keyframe> keyframes;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    std::istringstream row(line);
    std::string fields[3];
    for (auto& f : fields) std::getline(row, f, ',');
    double values[3];
    for (int i = 0; i < 3; ++i) {
      try {
        size_t used = 0;
        const std::string field = Trim(fields[i]);
        values[i] = std::stod(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw FormatError(path.string() + ":" + std::to_string(line_no) +
                          ": malformed trajectory row");
      }
    }
    keyframes.push_back({values[0], Direction::FromDegrees(values[1], values[2])});
  }
  try {
    return Trajectory(std::move(keyframes));
  } catch (const InvalidArgument& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void WriteTrajectoryCsv(const std::filesystem::path& path,
                        const Trajectory& trajectory) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write trajectory: " + path.string());
  constexpr double kRadToDeg = 180.0 / std::numbers::pi;
  out << kCsvHeader << "\n";
  out.precision(17);
  for (const Keyframe& k : trajectory.keyframes()) {
    out << k.time_s << "," << k.direction.azimuth() * kRadToDeg << ","
        << k.direction.elevation() * kRadToDeg << "\n";
  }
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace sv2a
