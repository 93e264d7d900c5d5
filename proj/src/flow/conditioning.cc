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

#include "sv2a/conditioning.h"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "sv2a/errors.h"

namespace sv2a {
namespace {

void CheckSize(const Eigen::VectorXd& v, size_t expected, const char* what) {
  if (static_cast<size_t>(v.size()) != expected) {
    throw InvalidArgument(std::string(what) + " has " +
                          std::to_string(v.size()) + " entries, expected " +
                          std::to_string(expected));
  }
}

Eigen::MatrixXd Gaussian(Eigen::Index rows, Eigen::Index cols, double scale,
                         std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, scale);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = dist(rng);
  return m;
}

}  // namespace

void LatentSequence::Validate() const {
  if (!frames.allFinite()) throw InvalidArgument("latent has non-finite values");
  if (!(frame_rate > 0.0)) throw InvalidArgument("latent rate must be positive");
}

Eigen::VectorXd TimestepEmbedding(double t, size_t dim) {
  if (dim % 2 != 0) {
    throw InvalidArgument("timestep embedding size must be even, got " +
                          std::to_string(dim));
  }
  Eigen::VectorXd e(static_cast<Eigen::Index>(dim));
  for (size_t k = 0; k < dim / 2; ++k) {
    const double arg = 2.0 * std::numbers::pi * std::ldexp(1.0, static_cast<int>(k)) * t;
    e(static_cast<Eigen::Index>(2 * k)) = std::sin(arg);
    e(static_cast<Eigen::Index>(2 * k + 1)) = std::cos(arg);
  }
  return e;
}

void ConditioningBundle::Validate() const {
  CheckSize(f_text, dims.text, "f_text");
  CheckSize(f_vis, dims.vis, "f_vis");
  for (const Eigen::VectorXd& f : f_sync) CheckSize(f, dims.sync, "f_sync frame");
  if (dims.time_embedding % 2 != 0) {
    throw InvalidArgument("timestep embedding size must be even");
  }
}

Eigen::VectorXd AssembleGlobalCond(const ConditioningBundle& bundle, double t) {
  bundle.Validate();
  const Eigen::VectorXd e = TimestepEmbedding(t, bundle.dims.time_embedding);
  Eigen::VectorXd out(bundle.f_text.size() + bundle.f_vis.size() + e.size());
  out << bundle.f_text, bundle.f_vis, e;
  return out;
}

std::vector<Eigen::VectorXd> AssembleFrameCond(const ConditioningBundle& bundle,
                                               double t, size_t num_frames) {
  if (bundle.f_sync.size() != num_frames) {
    throw InvalidArgument("f_sync has " + std::to_string(bundle.f_sync.size()) +
                          " frames, latent has " + std::to_string(num_frames));
  }
  const Eigen::VectorXd global = AssembleGlobalCond(bundle, t);
  std::vector<Eigen::VectorXd> out;
  out.reserve(num_frames);
  for (const Eigen::VectorXd& sync : bundle.f_sync) {
    Eigen::VectorXd f(sync.size() + global.size());
    f << sync, global;
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Eigen::VectorXd> UpsampleLinear(
    const std::vector<Eigen::VectorXd>& frames, size_t num_out) {
  if (frames.empty()) throw InvalidArgument("cannot resample an empty sequence");
  if (num_out == 0) throw InvalidArgument("output frame count must be positive");
  std::vector<Eigen::VectorXd> out;
  out.reserve(num_out);
  const size_t n = frames.size();
  for (size_t i = 0; i < num_out; ++i) {
    if (n == 1 || num_out == 1) {
      out.push_back(frames[0]);
      continue;
    }
    const double pos = static_cast<double>(i) * static_cast<double>(n - 1) /
                       static_cast<double>(num_out - 1);
    const size_t lo = std::min(static_cast<size_t>(pos), n - 2);
    const double w = pos - static_cast<double>(lo);
    out.push_back((1.0 - w) * frames[lo] + w * frames[lo + 1]);
  }
  return out;
}

size_t ResampledFrameCount(size_t num_in, double source_rate,
                           double target_rate) {
  if (!(source_rate > 0.0) || !(target_rate > 0.0)) {
    throw InvalidArgument("frame rates must be positive");
  }
  const double n = std::round(static_cast<double>(num_in) * target_rate /
                              source_rate);
  return std::max<size_t>(1, static_cast<size_t>(n));
}

SpatialProjection SpatialProjection::Random(size_t out_dim, uint64_t seed) {
  if (out_dim == 0) throw InvalidArgument("projection size must be positive");
  std::mt19937_64 rng(seed);
  const auto h = static_cast<Eigen::Index>(kHidden);
  const auto o = static_cast<Eigen::Index>(out_dim);
  SpatialProjection p;
  for (int k = 0; k < 3; ++k) {
    p.conv.push_back(Gaussian(h, kSpatialFeatureDim, 1.0 / std::sqrt(15.0), rng));
  }
  p.conv_bias = Eigen::VectorXd::Zero(h);
  p.w1 = Gaussian(h, h, 1.0 / std::sqrt(32.0), rng);
  p.b1 = Eigen::VectorXd::Zero(h);
  p.w2 = Gaussian(o, h, 1.0 / std::sqrt(32.0), rng);
  p.b2 = Eigen::VectorXd::Zero(o);
  p.gamma = Eigen::VectorXd::Ones(o);
  p.beta = Eigen::VectorXd::Zero(o);
  return p;
}

void SpatialProjection::Validate() const {
  const auto h = static_cast<Eigen::Index>(kHidden);
  bool ok = conv.size() == 3 && conv_bias.size() == h && w1.rows() == h &&
            w1.cols() == h && b1.size() == h && w2.cols() == h &&
            b2.size() == w2.rows() && gamma.size() == w2.rows() &&
            beta.size() == w2.rows() && w2.rows() > 0;
  for (const Eigen::MatrixXd& k : conv) {
    ok = ok && k.rows() == h &&
         k.cols() == static_cast<Eigen::Index>(kSpatialFeatureDim);
  }
  if (!ok) throw InvalidArgument("spatial projection has inconsistent shapes");
}

Eigen::VectorXd LayerNorm(const Eigen::VectorXd& x, const Eigen::VectorXd& gamma,
                          const Eigen::VectorXd& beta, double eps) {
  const double mean = x.mean();
  const double var = (x.array() - mean).square().mean();
  const Eigen::VectorXd z = (x.array() - mean) / std::sqrt(var + eps);
  return gamma.cwiseProduct(z) + beta;
}

std::vector<Eigen::VectorXd> SpatialCondition(
    const SpatialFeatureSequence& s_sound, double target_rate,
    const SpatialProjection& proj) {
  if (s_sound.frames.empty()) {
    throw InvalidArgument("spatial feature sequence is empty");
  }
  proj.Validate();
  std::vector<Eigen::VectorXd> in;
  in.reserve(s_sound.frames.size());
  for (const SpatialFeatureVector& f : s_sound.frames) {
    const auto a = f.AsArray();
    in.push_back(Eigen::Map<const Eigen::VectorXd>(a.data(), a.size()));
  }
  const std::vector<Eigen::VectorXd> up = UpsampleLinear(
      in, ResampledFrameCount(in.size(), s_sound.frame_rate, target_rate));

  const size_t n = up.size();
  std::vector<Eigen::VectorXd> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const Eigen::VectorXd& prev = up[i == 0 ? 0 : i - 1];
    const Eigen::VectorXd& next = up[i + 1 == n ? i : i + 1];
    const Eigen::VectorXd c = (proj.conv[0] * prev + proj.conv[1] * up[i] +
                               proj.conv[2] * next + proj.conv_bias)
                                  .array()
                                  .tanh();
    const Eigen::VectorXd h = (proj.w1 * c + proj.b1).array().tanh();
    out.push_back(LayerNorm(proj.w2 * h + proj.b2, proj.gamma, proj.beta,
                            SpatialProjection::kLayerNormEps));
  }
  return out;
}

}  // namespace sv2a
