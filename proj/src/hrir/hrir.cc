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

#include "sv2a/hrir.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "json.hpp"
#include "sv2a/errors.h"
#include "sv2a/wav_io.h"

namespace sv2a {

void HeadModelConfig::Validate() const {
  if (!(head_radius_m > 0.0)) throw InvalidArgument("head radius must be > 0");
  if (!(speed_of_sound_mps > 0.0)) {
    throw InvalidArgument("speed of sound must be > 0");
  }
  if (!(contralateral_attenuation_db >= 0.0)) {
    throw InvalidArgument("contralateral attenuation must be >= 0 dB");
  }
  if (ir_length < 1) throw InvalidArgument("IR length must be >= 1");
  if (reference_delay < 0) {
    throw InvalidArgument("reference delay must be >= 0");
  }
}

double WoodworthDelaySeconds(double lateral_angle_rad,
                             const HeadModelConfig& cfg) {
  const double theta = std::abs(lateral_angle_rad);
  return cfg.head_radius_m / cfg.speed_of_sound_mps * (theta + std::sin(theta));
}

double LateralAngle(const Direction& direction) {
  return std::asin(std::clamp(direction.y(), -1.0, 1.0));
}

int AnalyticFarEarDelaySamples(const Direction& direction, int sample_rate,
                               const HeadModelConfig& cfg) {
  return static_cast<int>(std::lround(
      WoodworthDelaySeconds(LateralAngle(direction), cfg) * sample_rate));
}

double AnalyticEarGainDb(const Direction& direction, bool left_ear,
                         const HeadModelConfig& cfg) {
  // Cosine of the angle between the source and the ear axis (0, +-1, 0).
  const double cos_to_ear = left_ear ? direction.y() : -direction.y();
  return -cfg.contralateral_attenuation_db * 0.5 * (1.0 - cos_to_ear);
}

HrirPair AnalyticHrir(const Direction& direction, int sample_rate,
                      const HeadModelConfig& cfg) {
  cfg.Validate();
  if (sample_rate <= 0) throw InvalidArgument("sample rate must be positive");
  const int far_delay = AnalyticFarEarDelaySamples(direction, sample_rate, cfg);
  const bool left_is_near = direction.y() >= 0.0;
  const int left_delay =
      cfg.reference_delay + (left_is_near ? 0 : far_delay);
  const int right_delay =
      cfg.reference_delay + (left_is_near ? far_delay : 0);
  const int length = std::max({cfg.ir_length, left_delay + 1, right_delay + 1});

  HrirPair pair{std::vector<double>(length, 0.0),
                std::vector<double>(length, 0.0), sample_rate};
  pair.left[left_delay] =
      std::pow(10.0, AnalyticEarGainDb(direction, true, cfg) / 20.0);
  pair.right[right_delay] =
      std::pow(10.0, AnalyticEarGainDb(direction, false, cfg) / 20.0);
  return pair;
}

HrirSet HrirSet::Analytic(int sample_rate, const HeadModelConfig& cfg) {
  cfg.Validate();
  if (sample_rate <= 0) throw InvalidArgument("sample rate must be positive");
  HrirSet set;
  set.source_ = HrirSource::kAnalytic;
  set.sample_rate_ = sample_rate;
  set.head_model_ = cfg;
  return set;
}

HrirSet HrirSet::Measured(
    std::vector<std::pair<Direction, HrirPair>> entries) {
  if (entries.empty()) throw InvalidArgument("measured HRIR set is empty");
  const int rate = entries.front().second.sample_rate;
  for (size_t i = 0; i < entries.size(); ++i) {
    const HrirPair& p = entries[i].second;
    if (p.sample_rate != rate) {
      throw InvalidArgument("HRIR entries have different sample rates");
    }
    if (p.left.empty() || p.right.empty()) {
      throw InvalidArgument("HRIR entry has an empty impulse response");
    }
    for (size_t j = 0; j < i; ++j) {
      if (entries[j].first == entries[i].first) {
        throw InvalidArgument("duplicate HRIR direction");
      }
    }
  }
  HrirSet set;
  set.source_ = HrirSource::kMeasured;
  set.sample_rate_ = rate;
  set.entries_ = std::move(entries);
  return set;
}

HrirPair Lookup(const HrirSet& set, const Direction& direction) {
  if (set.source() == HrirSource::kAnalytic) {
    return AnalyticHrir(direction, set.sample_rate(), *set.head_model());
  }
  const auto& entries = set.entries();
  size_t best = 0;
  double best_dist = AngularDistance(entries[0].first, direction);
  for (size_t i = 1; i < entries.size(); ++i) {
    const double dist = AngularDistance(entries[i].first, direction);
    const Direction& a = entries[i].first;
    const Direction& b = entries[best].first;
    const bool tie = std::abs(dist - best_dist) <= 1e-12;
    const bool smaller_key =
        a.azimuth() < b.azimuth() ||
        (a.azimuth() == b.azimuth() && a.elevation() < b.elevation());
    if ((!tie && dist < best_dist) || (tie && smaller_key)) {
      best = i;
      best_dist = dist;
    }
  }
  return entries[best].second;
}

HrirSet LoadHrirManifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open HRIR manifest: " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": invalid JSON: " + e.what());
  }
  if (!doc.is_array()) {
    throw FormatError(path.string() + ": HRIR manifest must be a JSON array");
  }
  const std::filesystem::path base = path.parent_path();
  std::vector<std::pair<Direction, HrirPair>> entries;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("file") ||
        !item.contains("azimuth_deg") || !item.contains("elevation_deg")) {
      throw FormatError(path.string() +
                        ": entries need azimuth_deg, elevation_deg and file");
    }
    const std::filesystem::path file =
        base / item.at("file").get<std::string>();
    if (!std::filesystem::exists(file)) {
      throw IoError("HRIR file not found: " + file.string());
    }
    DecodedAudio audio = ReadWav(file);
    auto* stereo = std::get_if<BinauralBuffer>(&audio);
    if (stereo == nullptr) {
      throw FormatError("HRIR file must have 2 channels: " + file.string());
    }
    const Direction dir =
        Direction::FromDegrees(item.at("azimuth_deg").get<double>(),
                               item.at("elevation_deg").get<double>());
    for (const auto& existing : entries) {
      if (existing.first == dir) {
        throw InvalidArgument("duplicate HRIR direction in manifest at " +
                              file.string());
      }
    }
    entries.emplace_back(dir, HrirPair{stereo->left().data(),
                                       stereo->right().data(),
                                       stereo->sample_rate()});
  }
  return HrirSet::Measured(std::move(entries));
}

}  // namespace sv2a
