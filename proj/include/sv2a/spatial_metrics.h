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

#ifndef SV2A_SPATIAL_METRICS_H_
#define SV2A_SPATIAL_METRICS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "json.hpp"
#include "sv2a/audio_buffer.h"

namespace sv2a {

// Analysis parameters shared by the interaural metrics.
//
// Framewise metrics (ILD, ITD) use frame_size/hop; spectral metrics (ISD, IPD)
// use a Hann STFT with stft_frame/stft_hop. A frame is skipped when the RMS of
// both channels is below silence_gate_db dBFS.
struct MetricConfig {
  size_t frame_size = 400;
  size_t hop = 160;
  double max_lag_ms = 1.0;
  double silence_gate_db = -60.0;
  size_t stft_frame = 512;
  size_t stft_hop = 160;
  double epsilon = 1e-10;

  // Lag window in samples, rounded to nearest and at least 1.
  int MaxLagSamples(int sample_rate) const;
  void Validate() const;
};

// Normalized cross-correlation at a single lag, where a positive lag pairs
// left[n] with right[n + lag]. The normalization uses the energies of the
// overlapping parts, so the value lies in [-1, 1]; 0 if either part is silent.
double NormalizedCrossCorrelation(std::span<const double> left,
                                  std::span<const double> right, int lag);

struct LagPeak {
  int lag = 0;
  double value = 0.0;  // signed correlation at |lag|
};

// Lag in [-max_lag, max_lag] maximizing |correlation|. Peaks equal within
// 1e-12 resolve to the smaller |lag|, then to the negative lag.
LagPeak FindCorrelationPeak(std::span<const double> left,
                            std::span<const double> right, int max_lag);

// Peak |normalized cross-correlation| of the full signals within the lag
// window, in [0, 1]. Throws InvalidArgument if the signal is not longer than
// the lag window or both channels are all zero.
double Iacc(const BinauralBuffer& b, const MetricConfig& cfg = {});

// Mean over ungated frames of |10 log10(E_l / E_r)| with energies floored at
// epsilon, in dB. Throws InvalidArgument if every frame is gated.
double Ild(const BinauralBuffer& b, const MetricConfig& cfg = {});

// Mean over ungated frames of |per-frame correlation peak lag|, in ms.
double Itd(const BinauralBuffer& b, const MetricConfig& cfg = {});

// Mean over ungated STFT bins of |log10(|L| + eps) - log10(|R| + eps)|.
double Isd(const BinauralBuffer& b, const MetricConfig& cfg = {});

// |L||R|-weighted mean of |arg(L conj(R))| over ungated STFT bins, in
// [0, pi]. Throws InvalidArgument if all weights are zero.
double Ipd(const BinauralBuffer& b, const MetricConfig& cfg = {});

struct FrameValue {
  size_t frame = 0;
  double value = 0.0;
};

// Signed per-frame ILD in dB (positive: left louder), ungated frames only.
std::vector<FrameValue> IldPerFrame(const BinauralBuffer& b,
                                    const MetricConfig& cfg = {});
// Signed per-frame lag in samples (positive: right lags left).
std::vector<FrameValue> ItdPerFrame(const BinauralBuffer& b,
                                    const MetricConfig& cfg = {});

// Indices of framewise analysis frames that pass the silence gate.
std::vector<size_t> UngatedFrames(const BinauralBuffer& b,
                                  const MetricConfig& cfg);

struct SpatialMetricsReport {
  double iacc = 0.0;
  double ild_db = 0.0;
  double itd_ms = 0.0;
  double isd = 0.0;
  double ipd_rad = 0.0;
  size_t frames_used = 0;
};

SpatialMetricsReport SpatialReport(const BinauralBuffer& b,
                                   const MetricConfig& cfg = {});

nlohmann::json ToJson(const SpatialMetricsReport& report);
SpatialMetricsReport ReportFromJson(const nlohmann::json& j);

}  // namespace sv2a

#endif  // SV2A_SPATIAL_METRICS_H_
