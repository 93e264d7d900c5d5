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

#ifndef SV2A_DSP_H_
#define SV2A_DSP_H_

#include <complex>
#include <span>
#include <vector>

#include "sv2a/audio_buffer.h"

namespace sv2a {

// Linear convolution through zero-padded FFTs of size NextPowerOfTwo(N+K-1).
// Output length is N + K - 1. Throws InvalidArgument for an empty kernel.
AudioBuffer FftConvolve(const AudioBuffer& signal,
                        std::span<const double> kernel);
std::vector<double> FftConvolve(std::span<const double> signal,
                                std::span<const double> kernel);

// RMS of each complete frame; a trailing partial frame is dropped.
std::vector<double> FrameRms(std::span<const double> signal, size_t frame_size,
                             size_t hop);

enum class WindowType { kRectangular, kHann };

// Periodic window of the given length.
std::vector<double> MakeWindow(WindowType type, size_t length);

// Short-time spectrum with frames() of size num_frames x num_bins, where
// num_bins = frame_size / 2 + 1.
class Spectrogram {
 public:
  Spectrogram(size_t num_frames, size_t frame_size, size_t hop,
              WindowType window);

  size_t num_frames() const { return num_frames_; }
  size_t num_bins() const { return num_bins_; }
  size_t frame_size() const { return frame_size_; }
  size_t hop() const { return hop_; }
  WindowType window() const { return window_; }

  std::complex<double> at(size_t frame, size_t bin) const {
    return values_[frame * num_bins_ + bin];
  }
  std::complex<double>& at(size_t frame, size_t bin) {
    return values_[frame * num_bins_ + bin];
  }
  std::span<const std::complex<double>> frame(size_t t) const {
    return std::span<const std::complex<double>>(values_).subspan(
        t * num_bins_, num_bins_);
  }

 private:
  size_t num_frames_;
  size_t frame_size_;
  size_t hop_;
  size_t num_bins_;
  WindowType window_;
  std::vector<std::complex<double>> values_;
};

// Frame t, bin f holds sum_n w(n) x(t*hop + n) e^{-i 2 pi f n / frame_size}.
// Throws InvalidArgument if the signal is shorter than one frame or hop is 0.
Spectrogram Stft(std::span<const double> signal, size_t frame_size = 512,
                 size_t hop = 160, WindowType window = WindowType::kHann);

// Number of complete frames of |frame_size| advanced by |hop| in |length|.
size_t NumFrames(size_t length, size_t frame_size, size_t hop);

}  // namespace sv2a

#endif  // SV2A_DSP_H_
