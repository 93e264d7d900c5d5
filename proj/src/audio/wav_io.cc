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

#include "sv2a/wav_io.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "sv2a/errors.h"

namespace sv2a {
namespace {

static_assert(std::endian::native == std::endian::little,
              "WAV I/O assumes a little-endian host");

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;
constexpr uint16_t kFormatExtensible = 0xFFFE;

uint16_t ReadU16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

uint32_t ReadU32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

struct ParsedWav {
  WavInfo info;
  size_t data_offset = 0;
  size_t data_size = 0;
};

std::vector<uint8_t> Slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open WAV file: " + path.string());
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("cannot read WAV file: " + path.string());
  return bytes;
}

// `file_size` is the full length when `bytes` holds only a prefix.
ParsedWav Parse(const std::vector<uint8_t>& bytes, const std::string& name,
                std::optional<size_t> file_size = std::nullopt) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw FormatError("not a RIFF/WAVE file: " + name);
  }
  ParsedWav parsed;
  bool have_fmt = false;
  bool have_data = false;
  uint16_t format = 0;
  uint16_t bits = 0;
  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const uint8_t* chunk = bytes.data() + pos;
    const uint32_t size = ReadU32(chunk + 4);
    const size_t body = pos + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || body + size > bytes.size()) {
        throw FormatError("truncated fmt chunk: " + name);
      }
      format = ReadU16(bytes.data() + body);
      parsed.info.channels = ReadU16(bytes.data() + body + 2);
      parsed.info.sample_rate =
          static_cast<int>(ReadU32(bytes.data() + body + 4));
      bits = ReadU16(bytes.data() + body + 14);
      if (format == kFormatExtensible) {
        if (size < 40) throw FormatError("truncated extensible fmt: " + name);
        format = ReadU16(bytes.data() + body + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      parsed.data_offset = body;
      // Tolerate writers that leave a placeholder size on the last chunk.
      parsed.data_size =
          std::min<size_t>(size, file_size.value_or(bytes.size()) - body);
      have_data = true;
      break;
    }
    pos = body + size + (size & 1u);
  }
  if (!have_fmt) throw FormatError("missing fmt chunk: " + name);
  if (!have_data) throw FormatError("missing data chunk: " + name);
  if (format == kFormatPcm && bits == 16) {
    parsed.info.encoding = WavEncoding::kPcm16;
  } else if (format == kFormatFloat && bits == 32) {
    parsed.info.encoding = WavEncoding::kFloat32;
  } else {
    throw FormatError("unsupported WAV encoding (format " +
                      std::to_string(format) + ", " + std::to_string(bits) +
                      " bits): " + name);
  }
  if (parsed.info.channels < 1 || parsed.info.channels > 2) {
    throw FormatError("unsupported channel count " +
                      std::to_string(parsed.info.channels) + ": " + name);
  }
  if (parsed.info.sample_rate <= 0) {
    throw FormatError("invalid sample rate: " + name);
  }
  const size_t frame_bytes =
      static_cast<size_t>(parsed.info.channels) * (bits / 8);
  parsed.info.frames = static_cast<int64_t>(parsed.data_size / frame_bytes);
  return parsed;
}

std::vector<uint8_t> ReadHeaderBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open WAV file: " + path.string());
  // Headers are small; scan a bounded prefix and fall back to the whole file.
  std::vector<uint8_t> bytes(4096);
  in.read(reinterpret_cast<char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  bytes.resize(static_cast<size_t>(in.gcount()));
  return bytes;
}

void PutU16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xFF));
  out.push_back(static_cast<uint8_t>(v >> 8));
}

void PutU32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void PutTag(std::vector<uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

void WriteInterleaved(const std::filesystem::path& path,
                      const std::vector<std::span<const double>>& channels,
                      int sample_rate, WavEncoding encoding) {
  const size_t frames = channels.front().size();
  if (frames == 0) throw InvalidArgument("cannot write an empty WAV buffer");
  const uint16_t num_channels = static_cast<uint16_t>(channels.size());
  const uint16_t bits = encoding == WavEncoding::kPcm16 ? 16 : 32;
  const uint16_t block_align = num_channels * (bits / 8);
  const uint64_t data_size = static_cast<uint64_t>(frames) * block_align;
  if (data_size > 0xFFFFFFFFull - 36) {
    throw InvalidArgument("buffer too large for a RIFF file");
  }

  std::vector<uint8_t> out;
  out.reserve(44 + data_size);
  PutTag(out, "RIFF");
  PutU32(out, static_cast<uint32_t>(36 + data_size));
  PutTag(out, "WAVE");
  PutTag(out, "fmt ");
  PutU32(out, 16);
  PutU16(out, encoding == WavEncoding::kPcm16 ? kFormatPcm : kFormatFloat);
  PutU16(out, num_channels);
  PutU32(out, static_cast<uint32_t>(sample_rate));
  PutU32(out, static_cast<uint32_t>(sample_rate) * block_align);
  PutU16(out, block_align);
  PutU16(out, bits);
  PutTag(out, "data");
  PutU32(out, static_cast<uint32_t>(data_size));
  for (size_t i = 0; i < frames; ++i) {
    for (const auto& channel : channels) {
      const double x = channel[i];
      if (encoding == WavEncoding::kPcm16) {
        const double scaled = std::clamp(std::nearbyint(x * 32768.0),
                                         -32768.0, 32767.0);
        PutU16(out, static_cast<uint16_t>(static_cast<int16_t>(scaled)));
      } else {
        PutU32(out, std::bit_cast<uint32_t>(static_cast<float>(x)));
      }
    }
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open for writing: " + path.string());
  file.write(reinterpret_cast<const char*>(out.data()),
             static_cast<std::streamsize>(out.size()));
  if (!file) throw IoError("write failed: " + path.string());
}

}  // namespace

WavInfo ReadWavInfo(const std::filesystem::path& path) {
  std::vector<uint8_t> head = ReadHeaderBytes(path);
  try {
    return Parse(head, path.string(),
                 static_cast<size_t>(std::filesystem::file_size(path)))
        .info;
  } catch (const FormatError&) {
    // The data chunk may sit past the probed prefix.
    return Parse(Slurp(path), path.string()).info;
  }
}

DecodedAudio ReadWav(const std::filesystem::path& path) {
  const std::vector<uint8_t> bytes = Slurp(path);
  const ParsedWav parsed = Parse(bytes, path.string());
  const size_t frames = static_cast<size_t>(parsed.info.frames);
  const int channels = parsed.info.channels;
  std::vector<std::vector<double>> data(channels, std::vector<double>(frames));
  const uint8_t* p = bytes.data() + parsed.data_offset;
  for (size_t i = 0; i < frames; ++i) {
    for (int c = 0; c < channels; ++c) {
      if (parsed.info.encoding == WavEncoding::kPcm16) {
        data[c][i] = static_cast<int16_t>(ReadU16(p)) / 32768.0;
        p += 2;
      } else {
        data[c][i] = std::bit_cast<float>(ReadU32(p));
        p += 4;
      }
    }
  }
  const int rate = parsed.info.sample_rate;
  if (channels == 1) return AudioBuffer(std::move(data[0]), rate);
  return BinauralBuffer(AudioBuffer(std::move(data[0]), rate),
                        AudioBuffer(std::move(data[1]), rate));
}

AudioBuffer ReadMonoWav(const std::filesystem::path& path) {
  DecodedAudio audio = ReadWav(path);
  if (auto* mono = std::get_if<AudioBuffer>(&audio)) return std::move(*mono);
  throw FormatError("expected a mono WAV: " + path.string());
}

BinauralBuffer ReadBinauralWav(const std::filesystem::path& path) {
  DecodedAudio audio = ReadWav(path);
  if (auto* stereo = std::get_if<BinauralBuffer>(&audio)) {
    return std::move(*stereo);
  }
  throw FormatError("expected a 2-channel WAV: " + path.string());
}

void WriteWav(const std::filesystem::path& path, const AudioBuffer& buffer,
              WavEncoding encoding) {
  WriteInterleaved(path, {buffer.samples()}, buffer.sample_rate(), encoding);
}

void WriteWav(const std::filesystem::path& path, const BinauralBuffer& buffer,
              WavEncoding encoding) {
  WriteInterleaved(path, {buffer.left().samples(), buffer.right().samples()},
                   buffer.sample_rate(), encoding);
}

}  // namespace sv2a
