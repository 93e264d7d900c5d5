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

#ifndef SV2A_AUDIO_BUFFER_H_
#define SV2A_AUDIO_BUFFER_H_

#include <cstddef>
#include <span>
#include <vector>

namespace sv2a {

inline constexpr int kDefaultSampleRate = 16000;

// Mono signal with 64-bit samples. Nominal amplitude range is [-1, 1].
class AudioBuffer {
 public:
  AudioBuffer() = default;
  // Throws InvalidArgument if |sample_rate| <= 0.
  AudioBuffer(std::vector<double> samples, int sample_rate);

  std::span<const double> samples() const { return samples_; }
  std::span<double> mutable_samples() { return samples_; }
  const std::vector<double>& data() const { return samples_; }
  int sample_rate() const { return sample_rate_; }
  size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  double duration_seconds() const {
    return static_cast<double>(samples_.size()) / sample_rate_;
  }
  double operator[](size_t i) const { return samples_[i]; }

  friend bool operator==(const AudioBuffer&, const AudioBuffer&) = default;

 private:
  std::vector<double> samples_;
  int sample_rate_ = kDefaultSampleRate;
};

// Two time-aligned channels at the same rate.
class BinauralBuffer {
 public:
  BinauralBuffer() = default;
  // Throws InvalidArgument when rates or lengths differ.
  BinauralBuffer(AudioBuffer left, AudioBuffer right);

  const AudioBuffer& left() const { return left_; }
  const AudioBuffer& right() const { return right_; }
  int sample_rate() const { return left_.sample_rate(); }
  size_t size() const { return left_.size(); }
  bool empty() const { return left_.empty(); }

  // Returns a copy with left and right exchanged.
  BinauralBuffer Swapped() const { return BinauralBuffer(right_, left_); }

  friend bool operator==(const BinauralBuffer&, const BinauralBuffer&) =
      default;

 private:
  AudioBuffer left_;
  AudioBuffer right_;
};

}  // namespace sv2a

#endif  // SV2A_AUDIO_BUFFER_H_
