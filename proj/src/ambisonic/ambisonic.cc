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

#include "sv2a/ambisonic.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sv2a/errors.h"

namespace sv2a {
namespace {

void CheckOrder(int order) {
  if (order < 0 || order > kMaxShOrder) {
    throw InvalidArgument("unsupported SH order " + std::to_string(order) +
                          " (supported: 0.." + std::to_string(kMaxShOrder) +
                          ")");
  }
}

void EncodeInto(const Direction& d, int order, std::span<double> out) {
  const double az = d.azimuth();
  const double el = d.elevation();
  out[0] = 1.0;
  if (order >= 1) {
    out[1] = std::sin(az) * std::cos(el);
    out[2] = std::sin(el);
    out[3] = std::cos(az) * std::cos(el);
  }
  if (order >= 2) {
    const double k = std::sqrt(3.0) / 2.0;
    const double cos2 = std::cos(el) * std::cos(el);
    out[4] = k * std::sin(2.0 * az) * cos2;
    out[5] = k * std::sin(az) * std::sin(2.0 * el);
    out[6] = 0.5 * (3.0 * std::sin(el) * std::sin(el) - 1.0);
    out[7] = k * std::cos(az) * std::sin(2.0 * el);
    out[8] = k * std::cos(2.0 * az) * cos2;
  }
}

// ACN index of degree l, order m is l^2 + l + m.
std::vector<size_t> SectoralChannels(int order) {
  std::vector<size_t> channels = {0};
  for (int l = 1; l <= order; ++l) {
    channels.push_back(static_cast<size_t>(l * l));          // m = -l
    channels.push_back(static_cast<size_t>(l * l + 2 * l));  // m = +l
  }
  std::sort(channels.begin(), channels.end());
  return channels;
}

}  // namespace

ShVector ShEncode(const Direction& direction, int order) {
  CheckOrder(order);
  ShVector v{order, std::vector<double>(ShChannelCount(order))};
  EncodeInto(direction, order, v.coefficients);
  return v;
}

ShSignal::ShSignal(int order, size_t num_samples, int sample_rate)
    : order_(order),
      num_channels_(ShChannelCount(order)),
      num_samples_(num_samples),
      sample_rate_(sample_rate),
      data_(num_channels_ * num_samples, 0.0) {
  CheckOrder(order);
}

std::vector<double> ShSignal::channel(size_t acn) const {
  std::vector<double> out(num_samples_);
  for (size_t n = 0; n < num_samples_; ++n) {
    out[n] = data_[n * num_channels_ + acn];
  }
  return out;
}

size_t NumBlocks(size_t num_samples, size_t block_size) {
  return (num_samples + block_size - 1) / block_size;
}

ShSignal EncodeMono(const AudioBuffer& signal,
                    std::span<const Direction> block_directions, int order,
                    const BlockSchedule& schedule) {
  CheckOrder(order);
  if (block_directions.empty()) throw InvalidArgument("empty trajectory");
  if (schedule.block_size == 0) throw InvalidArgument("block size must be > 0");
  if (schedule.crossfade >= schedule.block_size) {
    throw InvalidArgument("crossfade must be shorter than the block");
  }
  const size_t n = signal.size();
  if (block_directions.size() < NumBlocks(n, schedule.block_size)) {
    throw InvalidArgument("trajectory covers " +
                          std::to_string(block_directions.size()) +
                          " blocks but the signal needs " +
                          std::to_string(NumBlocks(n, schedule.block_size)));
  }
  const size_t k = ShChannelCount(order);
  ShSignal sh(order, n, signal.sample_rate());
  std::vector<double> prev(k), cur(k), delta(k);
  for (size_t b = 0; b * schedule.block_size < n; ++b) {
    EncodeInto(block_directions[b], order, cur);
    const bool fade = b > 0 && !(block_directions[b] == block_directions[b - 1]);
    if (fade) {
      EncodeInto(block_directions[b - 1], order, prev);
      for (size_t c = 0; c < k; ++c) delta[c] = cur[c] - prev[c];
    }
    const size_t begin = b * schedule.block_size;
    const size_t end = std::min(n, begin + schedule.block_size);
    for (size_t i = begin; i < end; ++i) {
      std::span<double> out = sh.mutable_frame(i);
      const double s = signal[i];
      const size_t offset = i - begin;
      if (fade && offset < schedule.crossfade) {
        const double w = static_cast<double>(offset) /
                         static_cast<double>(schedule.crossfade);
        for (size_t c = 0; c < k; ++c) out[c] = (prev[c] + w * delta[c]) * s;
      } else {
        for (size_t c = 0; c < k; ++c) out[c] = cur[c] * s;
      }
    }
  }
  return sh;
}

SpeakerLayout::SpeakerLayout(std::vector<Direction> directions)
    : directions_(std::move(directions)) {
  if (directions_.empty()) {
    throw InvalidArgument("speaker layout needs at least one direction");
  }
  for (size_t i = 0; i < directions_.size(); ++i) {
    for (size_t j = i + 1; j < directions_.size(); ++j) {
      if (directions_[i] == directions_[j]) {
        throw InvalidArgument("speaker layout has duplicate directions at " +
                              std::to_string(i) + " and " + std::to_string(j));
      }
    }
  }
}

bool SpeakerLayout::IsHorizontal() const {
  return std::all_of(directions_.begin(), directions_.end(),
                     [](const Direction& d) {
                       return std::abs(d.elevation()) < 1e-12;
                     });
}

SpeakerLayout RingLayout(size_t num_speakers) {
  if (num_speakers < 2) {
    throw InvalidArgument("ring layout needs at least 2 speakers");
  }
  std::vector<Direction> dirs;
  dirs.reserve(num_speakers);
  for (size_t m = 0; m < num_speakers; ++m) {
    dirs.emplace_back(2.0 * std::numbers::pi * static_cast<double>(m) /
                          static_cast<double>(num_speakers),
                      0.0);
  }
  return SpeakerLayout(std::move(dirs));
}

DecodeMatrix::DecodeMatrix(const SpeakerLayout& layout, int order)
    : layout_(layout), order_(order) {
  CheckOrder(order);
  if (layout.IsHorizontal()) {
    active_ = SectoralChannels(order);
  } else {
    active_.resize(ShChannelCount(order));
    for (size_t c = 0; c < active_.size(); ++c) active_[c] = c;
  }
  const size_t m = layout.size();
  const size_t k = active_.size();
  encoding_.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k));
  std::vector<double> full(ShChannelCount(order));
  for (size_t row = 0; row < m; ++row) {
    EncodeInto(layout[row], order, full);
    for (size_t c = 0; c < k; ++c) {
      encoding_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(c)) =
          full[active_[c]];
    }
  }

  Eigen::MatrixXd gram = encoding_.transpose() * encoding_;
  const double max_diag = gram.diagonal().maxCoeff();
  gram.diagonal().array() += kRidge;
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  const Eigen::VectorXd pivots = ldlt.vectorD();
  if (ldlt.info() != Eigen::Success ||
      pivots.minCoeff() <= kSingularTolerance * max_diag) {
    throw SingularMatrixError(
        "D^T D is singular for this layout (" + std::to_string(m) +
        " speakers, order " + std::to_string(order) + ")");
  }
  // D (D^T D)^{-1} = ((D^T D)^{-1} D^T)^T since the Gram matrix is symmetric.
  projection_ = ldlt.solve(encoding_.transpose()).transpose();
}

std::vector<double> DecodeMatrix::Gains(std::span<const double> sh_frame) const {
  if (sh_frame.size() != ShChannelCount(order_)) {
    throw InvalidArgument("SH frame length does not match decoder order");
  }
  std::vector<double> gains(num_speakers(), 0.0);
  for (size_t row = 0; row < gains.size(); ++row) {
    double acc = 0.0;
    for (size_t c = 0; c < active_.size(); ++c) {
      acc += projection_(static_cast<Eigen::Index>(row),
                         static_cast<Eigen::Index>(c)) *
             sh_frame[active_[c]];
    }
    gains[row] = acc;
  }
  return gains;
}

std::vector<AudioBuffer> ProjectToSpeakers(const ShSignal& sh,
                                           const DecodeMatrix& decoder) {
  if (sh.order() != decoder.order()) {
    throw InvalidArgument("SH signal order " + std::to_string(sh.order()) +
                          " does not match decoder order " +
                          std::to_string(decoder.order()));
  }
  const size_t m = decoder.num_speakers();
  const size_t n = sh.num_samples();
  std::vector<std::vector<double>> feeds(m, std::vector<double>(n));
  for (size_t i = 0; i < n; ++i) {
    const std::vector<double> gains = decoder.Gains(sh.frame(i));
    for (size_t s = 0; s < m; ++s) feeds[s][i] = gains[s];
  }
  std::vector<AudioBuffer> out;
  out.reserve(m);
  for (auto& feed : feeds) out.emplace_back(std::move(feed), sh.sample_rate());
  return out;
}

}  // namespace sv2a
