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

#include "sv2a/fft.h"

#include <cmath>
#include <numbers>
#include <utility>

namespace sv2a {
namespace {

using Complex = std::complex<double>;

void Radix2(std::vector<Complex>& a, bool inverse) {
  const size_t n = a.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const double sign = inverse ? 1.0 : -1.0;
  for (size_t len = 2; len <= n; len <<= 1) {
    const size_t half = len / 2;
    // Twiddles are evaluated directly rather than by recurrence to keep the
    // rounding error independent of the transform length.
    std::vector<Complex> twiddle(half);
    for (size_t k = 0; k < half; ++k) {
      const double angle = sign * 2.0 * std::numbers::pi * k / len;
      twiddle[k] = Complex(std::cos(angle), std::sin(angle));
    }
    for (size_t i = 0; i < n; i += len) {
      for (size_t k = 0; k < half; ++k) {
        const Complex u = a[i + k];
        const Complex v = a[i + k + half] * twiddle[k];
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
}

// Chirp-z evaluation of an arbitrary-length DFT through a power-of-two
// circular convolution.
void Bluestein(std::vector<Complex>& a, bool inverse) {
  const size_t n = a.size();
  const size_t m = NextPowerOfTwo(2 * n - 1);
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<Complex> chirp(n);
  for (size_t k = 0; k < n; ++k) {
    // k^2 mod 2n keeps the angle argument small for long transforms.
    const size_t k2 = (k * k) % (2 * n);
    const double angle = sign * std::numbers::pi * k2 / n;
    chirp[k] = Complex(std::cos(angle), std::sin(angle));
  }
  std::vector<Complex> x(m), y(m);
  for (size_t k = 0; k < n; ++k) x[k] = a[k] * chirp[k];
  y[0] = std::conj(chirp[0]);
  for (size_t k = 1; k < n; ++k) {
    y[k] = std::conj(chirp[k]);
    y[m - k] = std::conj(chirp[k]);
  }
  Radix2(x, false);
  Radix2(y, false);
  for (size_t k = 0; k < m; ++k) x[k] *= y[k];
  Radix2(x, true);
  for (size_t k = 0; k < n; ++k) a[k] = x[k] / static_cast<double>(m) * chirp[k];
}

void Transform(std::vector<Complex>& a, bool inverse) {
  const size_t n = a.size();
  if (n <= 1) return;
  if ((n & (n - 1)) == 0) {
    Radix2(a, inverse);
  } else {
    Bluestein(a, inverse);
  }
}

}  // namespace

size_t NextPowerOfTwo(size_t n) {
  size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void Fft(std::vector<Complex>& data) { Transform(data, false); }

void InverseFft(std::vector<Complex>& data) {
  Transform(data, true);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& v : data) v *= scale;
}

}  // namespace sv2a
