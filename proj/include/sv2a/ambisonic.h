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

#ifndef SV2A_AMBISONIC_H_
#define SV2A_AMBISONIC_H_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sv2a/audio_buffer.h"
#include "sv2a/direction.h"

namespace sv2a {

inline constexpr int kMaxShOrder = 2;

inline constexpr size_t ShChannelCount(int order) {
  return static_cast<size_t>((order + 1) * (order + 1));
}

// Real spherical-harmonic coefficients in ACN order with SN3D normalization.
struct ShVector {
  int order = 0;
  std::vector<double> coefficients;
};

// Evaluates the real SH basis at |direction|. For order 1 the channels are
// (W, Y, Z, X) = (1, sin az cos el, sin el, cos az cos el).
// Throws InvalidArgument for orders outside [0, kMaxShOrder].
ShVector ShEncode(const Direction& direction, int order);

// Per-sample SH coefficient frames, stored sample-major.
class ShSignal {
 public:
  ShSignal(int order, size_t num_samples, int sample_rate);

  int order() const { return order_; }
  size_t num_channels() const { return num_channels_; }
  size_t num_samples() const { return num_samples_; }
  int sample_rate() const { return sample_rate_; }

  std::span<const double> frame(size_t n) const {
    return std::span<const double>(data_).subspan(n * num_channels_,
                                                  num_channels_);
  }
  std::span<double> mutable_frame(size_t n) {
    return std::span<double>(data_).subspan(n * num_channels_, num_channels_);
  }
  // Extracts one ACN channel as a time signal.
  std::vector<double> channel(size_t acn) const;

 private:
  int order_;
  size_t num_channels_;
  size_t num_samples_;
  int sample_rate_;
  std::vector<double> data_;
};

// Block-wise direction switching for EncodeMono.
struct BlockSchedule {
  size_t block_size = 1024;
  size_t crossfade = 256;
};

// Psi(t) = ShEncode(direction(t)) * s(t). |block_directions[b]| holds for
// samples [b * block_size, (b + 1) * block_size). Where consecutive blocks
// differ, the SH gain vector moves linearly from the previous direction to the
// new one over the first |crossfade| samples of the block, weight i/crossfade
// at offset i.
// Throws InvalidArgument if the schedule does not cover the signal.
ShSignal EncodeMono(const AudioBuffer& signal,
                    std::span<const Direction> block_directions, int order,
                    const BlockSchedule& schedule = {});

// Number of blocks a schedule needs to cover |num_samples|.
size_t NumBlocks(size_t num_samples, size_t block_size);

// Virtual loudspeaker directions; pairwise distinct.
class SpeakerLayout {
 public:
  // Throws InvalidArgument if empty or if two directions coincide.
  explicit SpeakerLayout(std::vector<Direction> directions);

  size_t size() const { return directions_.size(); }
  const std::vector<Direction>& directions() const { return directions_; }
  const Direction& operator[](size_t m) const { return directions_[m]; }
  bool IsHorizontal() const;

 private:
  std::vector<Direction> directions_;
};

// M speakers at elevation 0 and azimuth 2 pi m / M. Throws for M < 2.
SpeakerLayout RingLayout(size_t num_speakers);

// Mode-matching decoder.
//
// Row m of the encoding matrix D is ShEncode(speaker m). The speaker feeds are
// g = pinv(D)^T Psi = D (D^T D)^{-1} Psi, so that re-encoding the feeds at
// their own directions, D^T g, reproduces Psi on the channels the layout can
// represent. For horizontal layouts only the sectoral channels (|m| = l:
// W, Y, X and V, U at order 2) are used, since the others are either zero or
// collinear with W on the horizon.
class DecodeMatrix {
 public:
  // Ridge added to the diagonal of D^T D before the solve.
  static constexpr double kRidge = 1e-12;
  // Relative pivot threshold below which D^T D counts as singular.
  static constexpr double kSingularTolerance = 1e-10;

  // Throws SingularMatrixError for degenerate layouts and InvalidArgument for
  // unsupported orders.
  DecodeMatrix(const SpeakerLayout& layout, int order);

  int order() const { return order_; }
  size_t num_speakers() const { return static_cast<size_t>(encoding_.rows()); }
  const SpeakerLayout& layout() const { return layout_; }

  // ACN indices of the channels the decoder uses.
  const std::vector<size_t>& active_channels() const { return active_; }
  // M x |active_channels| encoding matrix D.
  const Eigen::MatrixXd& encoding() const { return encoding_; }
  // M x |active_channels| projection D (D^T D)^{-1}.
  const Eigen::MatrixXd& projection() const { return projection_; }

  // Speaker gains for one full-length SH frame.
  std::vector<double> Gains(std::span<const double> sh_frame) const;

 private:
  SpeakerLayout layout_;
  int order_;
  std::vector<size_t> active_;
  Eigen::MatrixXd encoding_;
  Eigen::MatrixXd projection_;
};

// Output m is s'_m(t). Throws InvalidArgument on an order mismatch.
std::vector<AudioBuffer> ProjectToSpeakers(const ShSignal& sh,
                                           const DecodeMatrix& decoder);

}  // namespace sv2a

#endif  // SV2A_AMBISONIC_H_
