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

#ifndef SV2A_FFT_H_
#define SV2A_FFT_H_

#include <complex>
#include <cstddef>
#include <vector>

namespace sv2a {

// Smallest power of two >= n (n = 0 yields 1).
size_t NextPowerOfTwo(size_t n);

// In-place forward DFT, X[k] = sum_n x[n] e^{-i 2 pi k n / N}. Any length is
// accepted; powers of two use iterative radix-2, other lengths use
// Bluestein's chirp-z algorithm.
void Fft(std::vector<std::complex<double>>& data);

// In-place inverse DFT including the 1/N scale.
void InverseFft(std::vector<std::complex<double>>& data);

}  // namespace sv2a

#endif  // SV2A_FFT_H_
