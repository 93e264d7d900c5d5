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

#ifndef SV2A_CONDITIONING_H_
#define SV2A_CONDITIONING_H_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "sv2a/heatmap_features.h"

namespace sv2a {

inline constexpr double kLatentFrameRate = 31.25;
inline constexpr size_t kLatentDim = 20;

// T x d latent frames.
struct LatentSequence {
  Eigen::MatrixXd frames;  // rows are frames
  double frame_rate = kLatentFrameRate;

  size_t num_frames() const { return static_cast<size_t>(frames.rows()); }
  size_t dim() const { return static_cast<size_t>(frames.cols()); }
  // Throws InvalidArgument for non-finite entries or a bad rate.
  void Validate() const;
};

// Pairs (sin(2 pi 2^k t), cos(2 pi 2^k t)), k = 0 .. dim/2 - 1. Throws
// InvalidArgument for odd dim.
Eigen::VectorXd TimestepEmbedding(double t, size_t dim);

struct ConditioningDims {
  size_t text = 0;
  size_t vis = 0;
  size_t sync = 0;
  size_t time_embedding = 8;
};

// Stand-ins for the text, visual and synchronization encoder outputs plus
// the spatial feature stream.
struct ConditioningBundle {
  ConditioningDims dims;
  Eigen::VectorXd f_text;
  Eigen::VectorXd f_vis;
  std::vector<Eigen::VectorXd> f_sync;
  SpatialFeatureSequence s_sound;

  // Throws InvalidArgument when a vector disagrees with `dims`.
  void Validate() const;
};

// C_g = f_text ++ f_vis ++ e(t).
Eigen::VectorXd AssembleGlobalCond(const ConditioningBundle& bundle, double t);

// C_f[i] = f_sync[i] ++ C_g. Throws InvalidArgument unless f_sync has
// `num_frames` entries.
std::vector<Eigen::VectorXd> AssembleFrameCond(const ConditioningBundle& bundle,
                                               double t, size_t num_frames);

// Linear resampling that maps the first and last input frames onto the first
// and last output frames.
std::vector<Eigen::VectorXd> UpsampleLinear(
    const std::vector<Eigen::VectorXd>& frames, size_t num_out);

// Frames at `target_rate` covering the same duration as `num_in` frames at
// `source_rate`, at least 1.
size_t ResampledFrameCount(size_t num_in, double source_rate,
                           double target_rate);

// Weights of LayerNorm(ConvMLP(UpSample(S))): a kernel-3 temporal
// convolution 5 -> hidden with edge-replicated padding, tanh, a per-frame
// hidden -> hidden -> out perceptron with tanh between, then layer norm.
struct SpatialProjection {
  static constexpr size_t kHidden = 32;
  static constexpr double kLayerNormEps = 1e-5;

  std::vector<Eigen::MatrixXd> conv;  // 3 taps, each hidden x 5
  Eigen::VectorXd conv_bias;
  Eigen::MatrixXd w1;
  Eigen::VectorXd b1;
  Eigen::MatrixXd w2;
  Eigen::VectorXd b2;
  Eigen::VectorXd gamma;
  Eigen::VectorXd beta;

  size_t out_dim() const { return static_cast<size_t>(w2.rows()); }
  // Small Gaussian weights, unit gamma, zero beta.
  static SpatialProjection Random(size_t out_dim, uint64_t seed);
  void Validate() const;
};

// Per-frame layer norm over the feature dimension.
Eigen::VectorXd LayerNorm(const Eigen::VectorXd& x, const Eigen::VectorXd& gamma,
                          const Eigen::VectorXd& beta, double eps);

// C_s at `target_rate`. Throws InvalidArgument for an empty sequence or a
// non-positive rate.
std::vector<Eigen::VectorXd> SpatialCondition(
    const SpatialFeatureSequence& s_sound, double target_rate,
    const SpatialProjection& proj);

}  // namespace sv2a

#endif  // SV2A_CONDITIONING_H_
