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

#include "sv2a/spatial_metrics.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "sv2a/dsp.h"
#include "sv2a/errors.h"

namespace sv2a {
namespace {

constexpr double kTieTolerance = 1e-12;

double GateAmplitude(const MetricConfig& cfg) {
  return std::pow(10.0, cfg.silence_gate_db / 20.0);
}

double Rms(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) sum += v * v;
  return x.empty() ? 0.0 : std::sqrt(sum / static_cast<double>(x.size()));
}

bool Gated(std::span<const double> l, std::span<const double> r,
           double gate) {
  return Rms(l) < gate && Rms(r) < gate;
}

double Energy(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) sum += v * v;
  return sum;
}

// STFT frames of both channels that pass the gate.
std::vector<size_t> UngatedStftFrames(const BinauralBuffer& b,
                                      const MetricConfig& cfg) {
  const double gate = GateAmplitude(cfg);
  const size_t frames = NumFrames(b.size(), cfg.stft_frame, cfg.stft_hop);
  std::vector<size_t> kept;
  for (size_t t = 0; t < frames; ++t) {
    const auto l = b.left().samples().subspan(t * cfg.stft_hop, cfg.stft_frame);
    const auto r =
        b.right().samples().subspan(t * cfg.stft_hop, cfg.stft_frame);
    if (!Gated(l, r, gate)) kept.push_back(t);
  }
  return kept;
}

void RequireStftLength(const BinauralBuffer& b, const MetricConfig& cfg) {
  if (b.size() < cfg.stft_frame) {
    throw InvalidArgument("signal of " + std::to_string(b.size()) +
                          " samples is shorter than one STFT frame");
  }
}

}  // namespace

int MetricConfig::MaxLagSamples(int sample_rate) const {
  return std::max(1, static_cast<int>(
                         std::lround(max_lag_ms * 1e-3 * sample_rate)));
}

void MetricConfig::Validate() const {
  if (frame_size == 0 || hop == 0 || stft_frame == 0 || stft_hop == 0) {
    throw InvalidArgument("metric frame sizes and hops must be positive");
  }
  if (!(max_lag_ms > 0.0)) throw InvalidArgument("max lag must be positive");
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
}

double NormalizedCrossCorrelation(std::span<const double> left,
                                  std::span<const double> right, int lag) {
  const long n = static_cast<long>(std::min(left.size(), right.size()));
  const long begin = std::max(0L, -static_cast<long>(lag));
  const long end = std::min(n, n - lag);
  double cross = 0.0, el = 0.0, er = 0.0;
  for (long i = begin; i < end; ++i) {
    const double a = left[static_cast<size_t>(i)];
    const double b = right[static_cast<size_t>(i + lag)];
    cross += a * b;
    el += a * a;
    er += b * b;
  }
  if (el <= 0.0 || er <= 0.0) return 0.0;
  return std::clamp(cross / std::sqrt(el * er), -1.0, 1.0);
}

LagPeak FindCorrelationPeak(std::span<const double> left,
                            std::span<const double> right, int max_lag) {
  LagPeak best{0, NormalizedCrossCorrelation(left, right, 0)};
  for (int k = 1; k <= max_lag; ++k) {
    for (int lag : {-k, k}) {
      const double v = NormalizedCrossCorrelation(left, right, lag);
      if (std::abs(v) > std::abs(best.value) + kTieTolerance) {
        best = {lag, v};
      }
    }
  }
  return best;
}

std::vector<size_t> UngatedFrames(const BinauralBuffer& b,
                                  const MetricConfig& cfg) {
  cfg.Validate();
  const double gate = GateAmplitude(cfg);
  const size_t frames = NumFrames(b.size(), cfg.frame_size, cfg.hop);
  std::vector<size_t> kept;
  for (size_t t = 0; t < frames; ++t) {
    const auto l = b.left().samples().subspan(t * cfg.hop, cfg.frame_size);
    const auto r = b.right().samples().subspan(t * cfg.hop, cfg.frame_size);
    if (!Gated(l, r, gate)) kept.push_back(t);
  }
  return kept;
}

double Iacc(const BinauralBuffer& b, const MetricConfig& cfg) {
  cfg.Validate();
  const int max_lag = cfg.MaxLagSamples(b.sample_rate());
  if (b.size() <= static_cast<size_t>(max_lag)) {
    throw InvalidArgument("signal too short for the IACC lag window");
  }
  if (Energy(b.left().samples()) == 0.0 && Energy(b.right().samples()) == 0.0) {
    throw InvalidArgument("IACC undefined: both channels are all zero");
  }
  return std::abs(
      FindCorrelationPeak(b.left().samples(), b.right().samples(), max_lag)
          .value);
}

std::vector<FrameValue> IldPerFrame(const BinauralBuffer& b,
                                    const MetricConfig& cfg) {
  std::vector<FrameValue> out;
  for (size_t t : UngatedFrames(b, cfg)) {
    const double el = std::max(
        Energy(b.left().samples().subspan(t * cfg.hop, cfg.frame_size)),
        cfg.epsilon);
    const double er = std::max(
        Energy(b.right().samples().subspan(t * cfg.hop, cfg.frame_size)),
        cfg.epsilon);
    out.push_back({t, 10.0 * std::log10(el / er)});
  }
  return out;
}

double Ild(const BinauralBuffer& b, const MetricConfig& cfg) {
  const std::vector<FrameValue> frames = IldPerFrame(b, cfg);
  if (frames.empty()) throw InvalidArgument("ILD: every frame is gated");
  double sum = 0.0;
  for (const FrameValue& f : frames) sum += std::abs(f.value);
  return sum / static_cast<double>(frames.size());
}

std::vector<FrameValue> ItdPerFrame(const BinauralBuffer& b,
                                    const MetricConfig& cfg) {
  const int max_lag = cfg.MaxLagSamples(b.sample_rate());
  if (cfg.frame_size < static_cast<size_t>(2 * max_lag)) {
    throw InvalidArgument("ITD frames must span at least twice the max lag");
  }
  std::vector<FrameValue> out;
  for (size_t t : UngatedFrames(b, cfg)) {
    const auto l = b.left().samples().subspan(t * cfg.hop, cfg.frame_size);
    const auto r = b.right().samples().subspan(t * cfg.hop, cfg.frame_size);
    out.push_back({t, static_cast<double>(FindCorrelationPeak(l, r, max_lag).lag)});
  }
  return out;
}

double Itd(const BinauralBuffer& b, const MetricConfig& cfg) {
  const std::vector<FrameValue> frames = ItdPerFrame(b, cfg);
  if (frames.empty()) throw InvalidArgument("ITD: every frame is gated");
  double sum = 0.0;
  for (const FrameValue& f : frames) sum += std::abs(f.value);
  return sum / static_cast<double>(frames.size()) * 1000.0 / b.sample_rate();
}

double Isd(const BinauralBuffer& b, const MetricConfig& cfg) {
  cfg.Validate();
  RequireStftLength(b, cfg);
  const std::vector<size_t> frames = UngatedStftFrames(b, cfg);
  if (frames.empty()) throw InvalidArgument("ISD: every frame is gated");
  const Spectrogram sl =
      Stft(b.left().samples(), cfg.stft_frame, cfg.stft_hop, WindowType::kHann);
  const Spectrogram sr = Stft(b.right().samples(), cfg.stft_frame,
                              cfg.stft_hop, WindowType::kHann);
  double sum = 0.0;
  for (size_t t : frames) {
    for (size_t f = 0; f < sl.num_bins(); ++f) {
      sum += std::abs(std::log10(std::abs(sl.at(t, f)) + cfg.epsilon) -
                      std::log10(std::abs(sr.at(t, f)) + cfg.epsilon));
    }
  }
  return sum / static_cast<double>(frames.size() * sl.num_bins());
}

double Ipd(const BinauralBuffer& b, const MetricConfig& cfg) {
  cfg.Validate();
  RequireStftLength(b, cfg);
  const Spectrogram sl =
      Stft(b.left().samples(), cfg.stft_frame, cfg.stft_hop, WindowType::kHann);
  const Spectrogram sr = Stft(b.right().samples(), cfg.stft_frame,
                              cfg.stft_hop, WindowType::kHann);
  double weighted = 0.0, total = 0.0;
  for (size_t t : UngatedStftFrames(b, cfg)) {
    for (size_t f = 0; f < sl.num_bins(); ++f) {
      const std::complex<double> l = sl.at(t, f);
      const std::complex<double> r = sr.at(t, f);
      const double w = std::abs(l) * std::abs(r);
      weighted += w * std::abs(std::arg(l * std::conj(r)));
      total += w;
    }
  }
  if (total <= 0.0) throw InvalidArgument("IPD: all bin weights are zero");
  return weighted / total;
}

SpatialMetricsReport SpatialReport(const BinauralBuffer& b,
                                   const MetricConfig& cfg) {
  SpatialMetricsReport report;
  report.iacc = Iacc(b, cfg);
  report.ild_db = Ild(b, cfg);
  report.itd_ms = Itd(b, cfg);
  report.isd = Isd(b, cfg);
  report.ipd_rad = Ipd(b, cfg);
  report.frames_used = UngatedFrames(b, cfg).size();
  return report;
}

nlohmann::json ToJson(const SpatialMetricsReport& report) {
  return nlohmann::json{{"iacc", report.iacc},       {"ild_db", report.ild_db},
                        {"itd_ms", report.itd_ms},   {"isd", report.isd},
                        {"ipd_rad", report.ipd_rad},
                        {"frames_used", report.frames_used}};
}

SpatialMetricsReport ReportFromJson(const nlohmann::json& j) {
  SpatialMetricsReport r;
  r.iacc = j.at("iacc").get<double>();
  r.ild_db = j.at("ild_db").get<double>();
  r.itd_ms = j.at("itd_ms").get<double>();
  r.isd = j.at("isd").get<double>();
  r.ipd_rad = j.at("ipd_rad").get<double>();
  r.frames_used = j.at("frames_used").get<size_t>();
  return r;
}

}  // namespace sv2a
