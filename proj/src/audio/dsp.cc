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

#include "sv2a/dsp.h"

#include <cmath>
#include <numbers>
#include <string>

#include "sv2a/errors.h"
#include "sv2a/fft.h"

namespace sv2a {

std::vector<double> FftConvolve(std::span<const double> signal,
                                std::span<const double> kernel) {
  if (kernel.empty()) throw InvalidArgument("convolution kernel is empty");
  if (signal.empty()) return std::vector<double>(kernel.size() - 1, 0.0);
  const size_t out_len = signal.size() + kernel.size() - 1;
  const size_t n = NextPowerOfTwo(out_len);
  std::vector<std::complex<double>> a(n), b(n);
  for (size_t i = 0; i < signal.size(); ++i) a[i] = signal[i];
  for (size_t i = 0; i < kernel.size(); ++i) b[i] = kernel[i];
  Fft(a);
  Fft(b);
  for (size_t i = 0; i < n; ++i) a[i] *= b[i];
  InverseFft(a);
  std::vector<double> out(out_len);
  for (size_t i = 0; i < out_len; ++i) out[i] = a[i].real();
  return out;
}

AudioBuffer FftConvolve(const AudioBuffer& signal,
                        std::span<const double> kernel) {
  return AudioBuffer(FftConvolve(signal.samples(), kernel),
                     signal.sample_rate());
}

size_t NumFrames(size_t length, size_t frame_size, size_t hop) {
  if (frame_size == 0 || hop == 0 || length < frame_size) return 0;
  return 1 + (length - frame_size) / hop;
}

std::vector<double> FrameRms(std::span<const double> signal, size_t frame_size,
                             size_t hop) {
  if (frame_size == 0) throw InvalidArgument("frame size must be >= 1");
  if (hop == 0) throw InvalidArgument("hop must be >= 1");
  const size_t frames = NumFrames(signal.size(), frame_size, hop);
  std::vector<double> rms(frames);
  for (size_t t = 0; t < frames; ++t) {
    double sum = 0.0;
    for (double x : signal.subspan(t * hop, frame_size)) sum += x * x;
    rms[t] = std::sqrt(sum / static_cast<double>(frame_size));
  }
  return rms;
}

std::vector<double> MakeWindow(WindowType type, size_t length) {
  std::vector<double> w(length, 1.0);
  if (type == WindowType::kHann) {
    for (size_t n = 0; n < length; ++n) {
      w[n] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * n / length);
    }
  }
  return w;
}

Spectrogram::Spectrogram(size_t num_frames, size_t frame_size, size_t hop,
                         WindowType window)
    : num_frames_(num_frames),
      frame_size_(frame_size),
      hop_(hop),
      num_bins_(frame_size / 2 + 1),
      window_(window),
      values_(num_frames * num_bins_) {}

Spectrogram Stft(std::span<const double> signal, size_t frame_size, size_t hop,
                 WindowType window) {
  if (frame_size == 0) throw InvalidArgument("STFT frame size must be >= 1");
  if (hop == 0) throw InvalidArgument("STFT hop must be >= 1");
  if (signal.size() < frame_size) {
    throw InvalidArgument("signal of " + std::to_string(signal.size()) +
                          " samples is shorter than one STFT frame of " +
                          std::to_string(frame_size));
  }
  const size_t frames = NumFrames(signal.size(), frame_size, hop);
  const std::vector<double> w = MakeWindow(window, frame_size);
  Spectrogram spec(frames, frame_size, hop, window);
  std::vector<std::complex<double>> buf(frame_size);
  for (size_t t = 0; t < frames; ++t) {
    for (size_t n = 0; n < frame_size; ++n) {
      buf[n] = w[n] * signal[t * hop + n];
    }
    Fft(buf);
    for (size_t f = 0; f < spec.num_bins(); ++f) spec.at(t, f) = buf[f];
  }
  return spec;
}

}  // namespace sv2a
