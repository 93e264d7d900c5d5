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

#ifndef SV2A_TESTS_METRIC_ORACLES_H_
#define SV2A_TESTS_METRIC_ORACLES_H_

// Brute-force references for the interaural metrics at the default analysis
// settings (400/160 frames, 1 ms lag at 16 kHz, -60 dBFS gate, 512/160 Hann
// STFT via direct DFT, eps 1e-10). They share no code with the library.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace sv2a::metric_oracles {

inline constexpr size_t kFrame = 400;
inline constexpr size_t kHop = 160;
inline constexpr size_t kStftFrame = 512;
inline constexpr size_t kStftHop = 160;
inline constexpr double kEps = 1e-10;
inline const double kGate = std::pow(10.0, -60.0 / 20.0);

// Correlation of x[i] with y[i + lag] over the overlap, normalized by the
// overlap energies.
inline double Corr(const std::vector<double>& x, const std::vector<double>& y,
                   size_t offset, size_t len, int lag) {
  double xy = 0, xx = 0, yy = 0;
  for (size_t i = 0; i < len; ++i) {
    const long j = static_cast<long>(i) + lag;
    if (j < 0 || j >= static_cast<long>(len)) continue;
    const double a = x[offset + i];
    const double b = y[offset + static_cast<size_t>(j)];
    xy += a * b;
    xx += a * a;
    yy += b * b;
  }
  if (xx == 0 || yy == 0) return 0;
  return xy / std::sqrt(xx * yy);
}

// Scans lags from -max to +max; keeps a later lag only when it is clearly
// larger or equally large with a smaller |lag|.
inline int PeakLag(const std::vector<double>& x, const std::vector<double>& y,
                   size_t offset, size_t len, int max_lag, double* peak) {
  int best = 0;
  double best_v = std::abs(Corr(x, y, offset, len, 0));
  for (int lag = -max_lag; lag <= max_lag; ++lag) {
    const double v = std::abs(Corr(x, y, offset, len, lag));
    const bool clearly = v > best_v + 1e-12;
    const bool tie = std::abs(v - best_v) <= 1e-12;
    const bool closer = std::abs(lag) < std::abs(best) ||
                        (std::abs(lag) == std::abs(best) && lag < best);
    if (clearly || (tie && closer)) {
      best = lag;
      best_v = v;
    }
  }
  if (peak != nullptr) *peak = best_v;
  return best;
}

inline bool Active(const std::vector<double>& x, const std::vector<double>& y,
                   size_t offset, size_t len) {
  double ex = 0, ey = 0;
  for (size_t i = 0; i < len; ++i) {
    ex += x[offset + i] * x[offset + i];
    ey += y[offset + i] * y[offset + i];
  }
  return std::sqrt(ex / len) >= kGate || std::sqrt(ey / len) >= kGate;
}

inline double Iacc(const std::vector<double>& l, const std::vector<double>& r,
                   int max_lag) {
  double peak = 0;
  PeakLag(l, r, 0, l.size(), max_lag, &peak);
  return peak;
}

inline double Ild(const std::vector<double>& l, const std::vector<double>& r) {
  double sum = 0;
  int count = 0;
  for (size_t off = 0; off + kFrame <= l.size(); off += kHop) {
    if (!Active(l, r, off, kFrame)) continue;
    double el = 0, er = 0;
    for (size_t i = 0; i < kFrame; ++i) {
      el += l[off + i] * l[off + i];
      er += r[off + i] * r[off + i];
    }
    el = el < kEps ? kEps : el;
    er = er < kEps ? kEps : er;
    sum += std::abs(10 * std::log10(el / er));
    ++count;
  }
  return sum / count;
}

inline double ItdMs(const std::vector<double>& l, const std::vector<double>& r,
                    int rate) {
  const int max_lag = static_cast<int>(std::lround(1e-3 * rate));
  double sum = 0;
  int count = 0;
  for (size_t off = 0; off + kFrame <= l.size(); off += kHop) {
    if (!Active(l, r, off, kFrame)) continue;
    sum += std::abs(PeakLag(l, r, off, kFrame, max_lag, nullptr));
    ++count;
  }
  return sum / count * 1000.0 / rate;
}

inline std::vector<std::complex<double>> HannDft(const std::vector<double>& x,
                                                 size_t off) {
  const size_t n = kStftFrame;
  std::vector<std::complex<double>> out(n / 2 + 1);
  for (size_t f = 0; f <= n / 2; ++f) {
    std::complex<double> acc = 0;
    for (size_t k = 0; k < n; ++k) {
      const double w = 0.5 - 0.5 * std::cos(2 * std::numbers::pi * k / n);
      const double ang = -2 * std::numbers::pi * ((f * k) % n) / n;
      acc += w * x[off + k] * std::polar(1.0, ang);
    }
    out[f] = acc;
  }
  return out;
}

inline double Isd(const std::vector<double>& l, const std::vector<double>& r) {
  double sum = 0;
  size_t count = 0;
  for (size_t off = 0; off + kStftFrame <= l.size(); off += kStftHop) {
    if (!Active(l, r, off, kStftFrame)) continue;
    const auto L = HannDft(l, off);
    const auto R = HannDft(r, off);
    for (size_t f = 0; f < L.size(); ++f) {
      sum += std::abs(std::log10(std::abs(L[f]) + kEps) -
                      std::log10(std::abs(R[f]) + kEps));
      ++count;
    }
  }
  return sum / count;
}

inline double Ipd(const std::vector<double>& l, const std::vector<double>& r) {
  double num = 0, den = 0;
  for (size_t off = 0; off + kStftFrame <= l.size(); off += kStftHop) {
    if (!Active(l, r, off, kStftFrame)) continue;
    const auto L = HannDft(l, off);
    const auto R = HannDft(r, off);
    for (size_t f = 0; f < L.size(); ++f) {
      double d = std::arg(L[f]) - std::arg(R[f]);
      while (d > std::numbers::pi) d -= 2 * std::numbers::pi;
      while (d <= -std::numbers::pi) d += 2 * std::numbers::pi;
      const double w = std::abs(L[f]) * std::abs(R[f]);
      num += w * std::abs(d);
      den += w;
    }
  }
  return num / den;
}

}  // namespace sv2a::metric_oracles

#endif  // SV2A_TESTS_METRIC_ORACLES_H_
