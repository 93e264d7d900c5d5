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

#include "sv2a/heatmap_features.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "sv2a/errors.h"

namespace sv2a {
namespace {

void RequireMass(const Heatmap& h) {
  if (!(h.Sum() > 0.0)) {
    throw InvalidArgument("feature undefined for an all-zero heatmap");
  }
}

std::vector<double> ColumnMarginal(const Heatmap& h) {
  std::vector<double> m(h.width(), 0.0);
  for (size_t row = 0; row < h.height(); ++row) {
    for (size_t col = 0; col < h.width(); ++col) m[col] += h.at(row, col);
  }
  return m;
}

std::vector<double> RowMarginal(const Heatmap& h) {
  std::vector<double> m(h.height(), 0.0);
  for (size_t row = 0; row < h.height(); ++row) {
    for (size_t col = 0; col < h.width(); ++col) m[row] += h.at(row, col);
  }
  return m;
}

// Mean and variance of a 1-based marginal distribution.
std::pair<double, double> MarginalMoments(const std::vector<double>& m) {
  double total = 0.0, first = 0.0;
  for (size_t i = 0; i < m.size(); ++i) {
    total += m[i];
    first += static_cast<double>(i + 1) * m[i];
  }
  const double mean = first / total;
  double second = 0.0;
  for (size_t i = 0; i < m.size(); ++i) {
    const double d = static_cast<double>(i + 1) - mean;
    second += m[i] * d * d;
  }
  return {mean, second / total};
}

}  // namespace

void FeatureConfig::Validate() const {
  if (!(mask_threshold_rel > 0.0 && mask_threshold_rel <= 1.0)) {
    throw InvalidArgument("mask threshold must lie in (0, 1]");
  }
  if (!(shape_epsilon > 0.0)) {
    throw InvalidArgument("shape epsilon must be positive");
  }
}

Centroid ComputeCentroid(const Heatmap& h) {
  RequireMass(h);
  return {MarginalMoments(ColumnMarginal(h)).first,
          MarginalMoments(RowMarginal(h)).first};
}

double HorizontalPosition(const Heatmap& h) {
  return ComputeCentroid(h).cx / static_cast<double>(h.width());
}

double AreaFraction(const Heatmap& h, const FeatureConfig& cfg) {
  cfg.Validate();
  const double max = h.Max();
  if (max <= 0.0) return 0.0;
  const double threshold = cfg.mask_threshold_rel * max;
  size_t count = 0;
  for (double v : h.values()) count += v >= threshold ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(h.values().size());
}

SpatialVariance ComputeSpatialVariance(const Heatmap& h) {
  RequireMass(h);
  return {MarginalMoments(ColumnMarginal(h)).second,
          MarginalMoments(RowMarginal(h)).second};
}

double LrEnergyBias(const Heatmap& h) {
  RequireMass(h);
  const std::vector<double> m = ColumnMarginal(h);
  const size_t w = h.width();
  const size_t half = w / 2;
  double left = 0.0, right = 0.0;
  for (size_t col = 0; col < half; ++col) left += m[col];
  for (size_t col = w - half; col < w; ++col) right += m[col];
  if (w % 2 == 1) {
    left += 0.5 * m[half];
    right += 0.5 * m[half];
  }
  return (right - left) / (right + left);
}

double ShapeRatio(const Heatmap& h, const FeatureConfig& cfg) {
  cfg.Validate();
  const SpatialVariance v = ComputeSpatialVariance(h);
  return v.var_x / (v.var_y + cfg.shape_epsilon);
}

SpatialFeatureVector ExtractFrameFeatures(const Heatmap& h,
                                          const FeatureConfig& cfg) {
  cfg.Validate();
  if (!(h.Sum() > 0.0)) return kNeutralFeatures;
  const SpatialVariance var = ComputeSpatialVariance(h);
  SpatialFeatureVector f;
  f.s_h = HorizontalPosition(h);
  f.s_area = AreaFraction(h, cfg);
  f.s_var = var.total();
  f.s_lr = LrEnergyBias(h);
  f.s_shape = var.var_x / (var.var_y + cfg.shape_epsilon);
  return f;
}

SpatialFeatureSequence ExtractFeatures(const HeatmapSequence& seq,
                                       const FeatureConfig& cfg) {
  seq.Validate();
  SpatialFeatureSequence out;
  out.frame_rate = seq.frame_rate;
  out.frames.reserve(seq.frames.size());
  for (const Heatmap& h : seq.frames) {
    out.frames.push_back(ExtractFrameFeatures(h, cfg));
  }
  return out;
}

void WriteFeatureCsv(const std::filesystem::path& path,
                     const SpatialFeatureSequence& features) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write feature file " + path.string());
  out << "frame,s_h,s_area,s_var,s_lr,s_shape\n";
  char buf[160];
  for (size_t t = 0; t < features.frames.size(); ++t) {
    const SpatialFeatureVector& f = features.frames[t];
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g,%.17g\n", t,
                  f.s_h, f.s_area, f.s_var, f.s_lr, f.s_shape);
    out << buf;
  }
  if (!out) throw IoError("failed writing " + path.string());
}

SpatialFeatureSequence ReadFeatureCsv(const std::filesystem::path& path,
                                      double frame_rate) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open feature file " + path.string());
  std::string line;
  if (!std::getline(in, line) ||
      line.rfind("frame,s_h,s_area,s_var,s_lr,s_shape", 0) != 0) {
    throw FormatError(path.string() + ":1: bad feature CSV header");
  }
  SpatialFeatureSequence seq;
  seq.frame_rate = frame_rate;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<double> cells;
    while (std::getline(row, cell, ',')) {
      try {
        size_t used = 0;
        cells.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw FormatError(path.string() + ":" + std::to_string(line_no) +
                          ": not a number: " + cell);
      }
    }
    if (cells.size() != 6) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": expected 6 columns");
    }
    seq.frames.push_back({cells[1], cells[2], cells[3], cells[4], cells[5]});
  }
  if (seq.frames.empty()) {
    throw FormatError(path.string() + ": no feature rows");
  }
  return seq;
}

}  // namespace sv2a
