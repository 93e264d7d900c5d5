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

#ifndef SV2A_WAV_IO_H_
#define SV2A_WAV_IO_H_

#include <cstdint>
#include <filesystem>
#include <variant>

#include "sv2a/audio_buffer.h"

namespace sv2a {

enum class WavEncoding { kPcm16, kFloat32 };

// Header fields of a RIFF/WAVE file.
struct WavInfo {
  int channels = 0;
  int sample_rate = 0;
  WavEncoding encoding = WavEncoding::kPcm16;
  int64_t frames = 0;

  double duration_seconds() const {
    return sample_rate > 0 ? static_cast<double>(frames) / sample_rate : 0.0;
  }
};

using DecodedAudio = std::variant<AudioBuffer, BinauralBuffer>;

// Parses only the header. Throws IoError or FormatError.
WavInfo ReadWavInfo(const std::filesystem::path& path);

// Reads a mono or stereo PCM-16 / float-32 WAV. PCM samples are scaled by
// 1/32768. Throws IoError for unreadable files and FormatError for
// unsupported encodings or more than two channels.
DecodedAudio ReadWav(const std::filesystem::path& path);

// Convenience wrappers that throw FormatError on a channel-count mismatch.
AudioBuffer ReadMonoWav(const std::filesystem::path& path);
BinauralBuffer ReadBinauralWav(const std::filesystem::path& path);

// PCM-16 writes round to nearest and clamp to [-32768, 32767].
void WriteWav(const std::filesystem::path& path, const AudioBuffer& buffer,
              WavEncoding encoding = WavEncoding::kFloat32);
void WriteWav(const std::filesystem::path& path, const BinauralBuffer& buffer,
              WavEncoding encoding = WavEncoding::kFloat32);

}  // namespace sv2a

#endif  // SV2A_WAV_IO_H_
