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

#ifndef SV2A_HEATMAP_H_
#define SV2A_HEATMAP_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace sv2a {

// Frame rate assumed for heatmap files, which do not carry one.
inline constexpr double kDefaultHeatmapFps = 8.0;

// Non-negative localization map M(x, y), stored row-major (row = y).
class Heatmap {
 public:
  // Throws InvalidArgument for zero dimensions, a size mismatch, or negative
  // or non-finite values.
  Heatmap(size_t height, size_t width, std::vector<double> values);
  static Heatmap Zeros(size_t height, size_t width);

  size_t height() const { return height_; }
  size_t width() const { return width_; }
  std::span<const double> values() const { return values_; }

  // 0-based access; the feature formulas use 1-based coordinates x = col + 1,
  // y = row + 1.
  double at(size_t row, size_t col) const { return values_[row * width_ + col]; }
  // Throws InvalidArgument for negative or non-finite values.
  void set(size_t row, size_t col, double value);

  double Sum() const;
  double Max() const;

 private:
  size_t height_;
  size_t width_;
  std::vector<double> values_;
};

struct HeatmapSequence {
  std::vector<Heatmap> frames;
  double frame_rate = kDefaultHeatmapFps;

  // Throws InvalidArgument if empty, dimensions differ, or the rate is not
  // positive.
  void Validate() const;
};

// HMAP v1 text: `hmap 1 <T> <H> <W>`, then T blocks of H lines holding W
// space-separated decimals. Blank lines are ignored. Errors are FormatError
// with the offending line number.
HeatmapSequence LoadHeatmapSequence(const std::filesystem::path& path,
                                    double frame_rate = kDefaultHeatmapFps);
// Values are written with 9 significant digits.
void WriteHeatmapSequence(const std::filesystem::path& path,
                          const HeatmapSequence& sequence);

}  // namespace sv2a

#endif  // SV2A_HEATMAP_H_
