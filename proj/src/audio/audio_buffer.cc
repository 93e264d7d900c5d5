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

#include "sv2a/audio_buffer.h"

#include <string>
#include <utility>

#include "sv2a/errors.h"

namespace sv2a {

AudioBuffer::AudioBuffer(std::vector<double> samples, int sample_rate)
    : samples_(std::move(samples)), sample_rate_(sample_rate) {
  if (sample_rate_ <= 0) {
    throw InvalidArgument("sample rate must be positive, got " +
                          std::to_string(sample_rate_));
  }
}

BinauralBuffer::BinauralBuffer(AudioBuffer left, AudioBuffer right)
    : left_(std::move(left)), right_(std::move(right)) {
  if (left_.sample_rate() != right_.sample_rate()) {
    throw InvalidArgument("binaural channels have different sample rates");
  }
  if (left_.size() != right_.size()) {
    throw InvalidArgument("binaural channels have different lengths");
  }
}

}  // namespace sv2a
