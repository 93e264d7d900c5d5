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

#include "sv2a/heatmap.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include "sv2a/errors.h"

namespace sv2a {
namespace {

void CheckValue(double v) {
  if (!std::isfinite(v) || v < 0.0) {
    throw InvalidArgument("heatmap values must be finite and non-negative");
  }
}

std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    const size_t start = i;
    while (i < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

[[noreturn]] void Fail(const std::filesystem::path& path, size_t line,
                       const std::string& what) {
  throw FormatError(path.string() + ":" + std::to_string(line) + ": " + what);
}

template <typename T>
bool ParseToken(std::string_view token, T* out) {
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, *out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

Heatmap::Heatmap(size_t height, size_t width, std::vector<double> values)
    : height_(height), width_(width), values_(std::move(values)) {
  if (height == 0 || width == 0) {
    throw InvalidArgument("heatmap dimensions must be positive");
  }
  if (values_.size() != height * width) {
    throw InvalidArgument("heatmap holds " + std::to_string(values_.size()) +
                          " values, expected " +
                          std::to_string(height * width));
  }
  for (double v : values_) CheckValue(v);
}

Heatmap Heatmap::Zeros(size_t height, size_t width) {
  return Heatmap(height, width, std::vector<double>(height * width, 0.0));
}

void Heatmap::set(size_t row, size_t col, double value) {
  CheckValue(value);
  values_.at(row * width_ + col) = value;
}

double Heatmap::Sum() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

double Heatmap::Max() const {
  return *std::max_element(values_.begin(), values_.end());
}

void HeatmapSequence::Validate() const {
  if (frames.empty()) throw InvalidArgument("heatmap sequence is empty");
  if (!(frame_rate > 0.0) || !std::isfinite(frame_rate)) {
    throw InvalidArgument("heatmap frame rate must be positive");
  }
  for (const Heatmap& h : frames) {
    if (h.height() != frames[0].height() || h.width() != frames[0].width()) {
      throw InvalidArgument("heatmap frames differ in size");
    }
  }
}

HeatmapSequence LoadHeatmapSequence(const std::filesystem::path& path,
                                    double frame_rate) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open heatmap file " + path.string());

  std::string line;
  size_t line_no = 0;
  auto next_nonblank = [&](std::vector<std::string_view>* tokens) {
    while (std::getline(in, line)) {
      ++line_no;
      *tokens = SplitWhitespace(line);
      if (!tokens->empty()) return true;
    }
    return false;
  };

  std::vector<std::string_view> tokens;
  if (!next_nonblank(&tokens)) Fail(path, line_no, "missing hmap header");
  size_t t = 0, h = 0, w = 0;
  int version = 0;
  if (tokens.size() != 5 || tokens[0] != "hmap" ||
      !ParseToken(tokens[1], &version) || !ParseToken(tokens[2], &t) ||
      !ParseToken(tokens[3], &h) || !ParseToken(tokens[4], &w)) {
    Fail(path, line_no, "malformed header, expected `hmap 1 <T> <H> <W>`");
  }
  if (version != 1) {
    Fail(path, line_no, "unsupported hmap version " + std::to_string(version));
  }
  if (t == 0 || h == 0 || w == 0) {
    Fail(path, line_no, "header dimensions must be positive");
  }

  HeatmapSequence seq;
  seq.frame_rate = frame_rate;
  seq.frames.reserve(t);
  for (size_t f = 0; f < t; ++f) {
    std::vector<double> values;
    values.reserve(h * w);
    for (size_t row = 0; row < h; ++row) {
      if (!next_nonblank(&tokens)) {
        Fail(path, line_no,
             "expected " + std::to_string(t * h) + " rows, file ended after " +
                 std::to_string(f * h + row));
      }
      if (tokens.size() != w) {
        Fail(path, line_no,
             "expected " + std::to_string(w) + " values, found " +
                 std::to_string(tokens.size()));
      }
      for (std::string_view tok : tokens) {
        double v = 0.0;
        if (!ParseToken(tok, &v)) {
          Fail(path, line_no, "not a number: " + std::string(tok));
        }
        if (!std::isfinite(v)) Fail(path, line_no, "non-finite value");
        if (v < 0.0) {
          Fail(path, line_no, "negative value " + std::string(tok));
        }
        values.push_back(v);
      }
    }
    seq.frames.emplace_back(h, w, std::move(values));
  }
  if (next_nonblank(&tokens)) {
    Fail(path, line_no, "unexpected data after " + std::to_string(t * h) +
                            " rows");
  }
  seq.Validate();
  return seq;
}

void WriteHeatmapSequence(const std::filesystem::path& path,
                          const HeatmapSequence& sequence) {
  sequence.Validate();
  std::ofstream out(path);
  if (!out) throw IoError("cannot write heatmap file " + path.string());
  const Heatmap& first = sequence.frames.front();
  out << "hmap 1 " << sequence.frames.size() << ' ' << first.height() << ' '
      << first.width() << '\n';
  char buf[32];
  for (const Heatmap& h : sequence.frames) {
    for (size_t row = 0; row < h.height(); ++row) {
      for (size_t col = 0; col < h.width(); ++col) {
        std::snprintf(buf, sizeof(buf), "%.9g", h.at(row, col));
        if (col > 0) out << ' ';
        out << buf;
      }
      out << '\n';
    }
  }
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace sv2a
