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

#ifndef SV2A_HEATMAP_FEATURES_H_
#define SV2A_HEATMAP_FEATURES_H_

#include <array>
#include <filesystem>
#include <vector>

#include "sv2a/heatmap.h"

namespace sv2a {

struct FeatureConfig {
  // Pixels at or above this fraction of the frame maximum count as sounding.
  double mask_threshold_rel = 0.5;
  double shape_epsilon = 1e-8;

  void Validate() const;
};

struct Centroid {
  double cx = 0.0;
  double cy = 0.0;
};

struct SpatialVariance {
  double var_x = 0.0;
  double var_y = 0.0;
  double total() const { return var_x + var_y; }
};

// The per-frame visual spatial descriptor, concatenated in this order.
struct SpatialFeatureVector {
  double s_h = 0.0;
  double s_area = 0.0;
  double s_var = 0.0;
  double s_lr = 0.0;
  double s_shape = 0.0;

  std::array<double, 5> AsArray() const {
    return {s_h, s_area, s_var, s_lr, s_shape};
  }
  friend bool operator==(const SpatialFeatureVector&,
                         const SpatialFeatureVector&) = default;
};

inline constexpr size_t kSpatialFeatureDim = 5;

// Feature vector of an all-zero heatmap.
inline constexpr SpatialFeatureVector kNeutralFeatures{0.5, 0.0, 0.0, 0.0, 0.0};

struct SpatialFeatureSequence {
  std::vector<SpatialFeatureVector> frames;
  double frame_rate = kDefaultHeatmapFps;
};

// Functions below that need a non-empty map throw InvalidArgument when
// the heatmap sums to zero.

// Mass-weighted mean pixel position, 1-based.
Centroid ComputeCentroid(const Heatmap& h);

// S_h = cx / W, in (0, 1].
double HorizontalPosition(const Heatmap& h);

// Fraction of pixels with M >= threshold * max M; 0 for an all-zero map.
double AreaFraction(const Heatmap& h, const FeatureConfig& cfg = {});

// Variances of the column and row marginals about the centroid, in pixel^2.
SpatialVariance ComputeSpatialVariance(const Heatmap& h);

// (right-half mass - left-half mass) / total, in [-1, 1]. For odd widths
// the middle column counts half to each side.
double LrEnergyBias(const Heatmap& h);

// var_x / (var_y + shape_epsilon).
double ShapeRatio(const Heatmap& h, const FeatureConfig& cfg = {});

// All five features of one frame; all-zero frames give kNeutralFeatures.
SpatialFeatureVector ExtractFrameFeatures(const Heatmap& h,
                                          const FeatureConfig& cfg = {});

SpatialFeatureSequence ExtractFeatures(const HeatmapSequence& seq,
                                       const FeatureConfig& cfg = {});

// CSV with header `frame,s_h,s_area,s_var,s_lr,s_shape`.
void WriteFeatureCsv(const std::filesystem::path& path,
                     const SpatialFeatureSequence& features);
SpatialFeatureSequence ReadFeatureCsv(const std::filesystem::path& path,
                                      double frame_rate = kDefaultHeatmapFps);

}  // namespace sv2a

#endif  // SV2A_HEATMAP_FEATURES_H_
