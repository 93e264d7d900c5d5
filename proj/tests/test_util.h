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

#ifndef SV2A_TESTS_TEST_UTIL_H_
#define SV2A_TESTS_TEST_UTIL_H_

#include <complex>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <system_error>
#include <vector>

#include "gtest/gtest.h"

namespace sv2a::testing_util {

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    std::string name = "sv2a";
    if (info != nullptr) {
      name += std::string("_") + info->test_suite_name() + "_" + info->name();
    }
    for (char& c : name) {
      if (c == '/') c = '_';
    }
    path_ = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& leaf) const {
    return path_ / leaf;
  }

 private:
  std::filesystem::path path_;
};

inline std::vector<double> UniformNoise(size_t n, uint64_t seed,
                                        double amplitude = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-amplitude, amplitude);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

inline std::vector<double> GaussianNoise(size_t n, uint64_t seed,
                                         double stddev = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, stddev);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

// O(N K) convolution.
inline std::vector<double> DirectConvolve(std::span<const double> x,
                                          std::span<const double> h) {
  std::vector<double> y(x.size() + h.size() - 1, 0.0);
  for (size_t i = 0; i < x.size(); ++i) {
    for (size_t k = 0; k < h.size(); ++k) y[i + k] += x[i] * h[k];
  }
  return y;
}

// Direct DFT of one frame, bins 0..N/2.
inline std::vector<std::complex<double>> DirectDft(
    std::span<const double> frame) {
  const size_t n = frame.size();
  std::vector<std::complex<double>> out(n / 2 + 1);
  for (size_t f = 0; f <= n / 2; ++f) {
    std::complex<double> acc = 0.0;
    for (size_t k = 0; k < n; ++k) {
      const double angle = -2.0 * std::numbers::pi *
                           static_cast<double>((f * k) % n) /
                           static_cast<double>(n);
      acc += frame[k] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    out[f] = acc;
  }
  return out;
}

}  // namespace sv2a::testing_util

#endif  // SV2A_TESTS_TEST_UTIL_H_
