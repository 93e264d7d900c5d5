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

#ifndef SV2A_FLOW_MATCHING_H_
#define SV2A_FLOW_MATCHING_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace sv2a {

// x_t = (1 - t) x0 + t x1.
Eigen::VectorXd Interpolate(const Eigen::VectorXd& x0,
                            const Eigen::VectorXd& x1, double t);
// u = x1 - x0.
Eigen::VectorXd TargetVelocity(const Eigen::VectorXd& x0,
                               const Eigen::VectorXd& x1);

// v(x_t, t, c).
class VelocityField {
 public:
  virtual ~VelocityField() = default;
  virtual size_t data_dim() const = 0;
  virtual size_t cond_dim() const = 0;
  virtual Eigen::VectorXd Evaluate(const Eigen::VectorXd& x, double t,
                                   const Eigen::VectorXd& cond) const = 0;
};

// Wraps a callable; handy for rigged fields.
class FunctionField : public VelocityField {
 public:
  using Fn = std::function<Eigen::VectorXd(const Eigen::VectorXd&, double,
                                           const Eigen::VectorXd&)>;
  FunctionField(size_t data_dim, size_t cond_dim, Fn fn)
      : data_dim_(data_dim), cond_dim_(cond_dim), fn_(std::move(fn)) {}
  size_t data_dim() const override { return data_dim_; }
  size_t cond_dim() const override { return cond_dim_; }
  Eigen::VectorXd Evaluate(const Eigen::VectorXd& x, double t,
                           const Eigen::VectorXd& cond) const override {
    return fn_(x, t, cond);
  }

 private:
  size_t data_dim_;
  size_t cond_dim_;
  Fn fn_;
};

struct NetConfig {
  size_t data_dim = 1;
  size_t cond_dim = 0;
  size_t time_embedding_dim = 8;
  size_t hidden_width = 64;
  // Appends a scalar channel flag to the input (shared-weight mode).
  bool channel_flag = false;

  size_t input_dim() const {
    return data_dim + time_embedding_dim + cond_dim + (channel_flag ? 1 : 0);
  }
  void Validate() const;
};

struct CfmSample {
  Eigen::VectorXd x0;
  Eigen::VectorXd x1;
  double t = 0.0;
  Eigen::VectorXd cond;
};

// Two-hidden-layer tanh perceptron on x ++ e(t) ++ cond [++ flag].
// Parameters are exposed as one flat vector: W1, b1, W2, b2, W3, b3 with
// matrices in column-major order.
class VelocityFieldNet : public VelocityField {
 public:
  // Zero weights.
  explicit VelocityFieldNet(const NetConfig& config);
  // Scaled Gaussian initialization.
  static VelocityFieldNet Random(const NetConfig& config, uint64_t seed);

  const NetConfig& config() const { return config_; }
  size_t data_dim() const override { return config_.data_dim; }
  size_t cond_dim() const override { return config_.cond_dim; }

  // Throws InvalidArgument when the net has a channel flag.
  Eigen::VectorXd Evaluate(const Eigen::VectorXd& x, double t,
                           const Eigen::VectorXd& cond) const override;
  // Throws InvalidArgument when the net has no channel flag.
  Eigen::VectorXd EvaluateChannel(const Eigen::VectorXd& x, double t,
                                  const Eigen::VectorXd& cond,
                                  double flag) const;

  size_t num_parameters() const;
  Eigen::VectorXd parameters() const;
  void set_parameters(const Eigen::VectorXd& p);

  const Eigen::MatrixXd& w1() const { return w1_; }
  const Eigen::MatrixXd& w2() const { return w2_; }
  const Eigen::MatrixXd& w3() const { return w3_; }
  const Eigen::VectorXd& b1() const { return b1_; }
  const Eigen::VectorXd& b2() const { return b2_; }
  const Eigen::VectorXd& b3() const { return b3_; }

  // Mean squared velocity error over `batch` and its exact gradient with
  // respect to parameters(). `flag` is required iff the net has a channel
  // flag.
  double LossAndGradient(std::span<const CfmSample> batch,
                         std::optional<double> flag,
                         Eigen::VectorXd* gradient) const;

 private:
  Eigen::MatrixXd BuildInputs(std::span<const CfmSample> batch,
                              std::optional<double> flag) const;
  Eigen::MatrixXd Forward(const Eigen::MatrixXd& inputs) const;

  NetConfig config_;
  Eigen::MatrixXd w1_, w2_, w3_;
  Eigen::VectorXd b1_, b2_, b3_;
};

// Evaluates a flagged net as one channel.
class ChannelView : public VelocityField {
 public:
  ChannelView(const VelocityFieldNet& net, double flag)
      : net_(net), flag_(flag) {}
  size_t data_dim() const override { return net_.data_dim(); }
  size_t cond_dim() const override { return net_.cond_dim(); }
  Eigen::VectorXd Evaluate(const Eigen::VectorXd& x, double t,
                           const Eigen::VectorXd& cond) const override {
    return net_.EvaluateChannel(x, t, cond, flag_);
  }

 private:
  const VelocityFieldNet& net_;
  double flag_;
};

inline constexpr double kLeftChannelFlag = -1.0;
inline constexpr double kRightChannelFlag = 1.0;

// Mean over the batch of |v(x_t, t, c) - (x1 - x0)|^2. Throws
// InvalidArgument for an empty batch or mismatched shapes.
double CfmLoss(const VelocityField& field, std::span<const CfmSample> batch);

// Left and right samples share t and cond.
struct BinauralCfmSample {
  Eigen::VectorXd x0_left, x1_left;
  Eigen::VectorXd x0_right, x1_right;
  double t = 0.0;
  Eigen::VectorXd cond;

  CfmSample left() const { return {x0_left, x1_left, t, cond}; }
  CfmSample right() const { return {x0_right, x1_right, t, cond}; }
};

// CfmLoss(left field, left halves) + CfmLoss(right field, right halves).
double BinauralCfmLoss(const VelocityField& left, const VelocityField& right,
                       std::span<const BinauralCfmSample> batch);

// Per-channel fields, either two nets or one flagged net.
class BinauralVelocityModel {
 public:
  static BinauralVelocityModel Separate(const NetConfig& config, uint64_t seed);
  static BinauralVelocityModel Shared(NetConfig config, uint64_t seed);
  // One flagged net when shared, otherwise left then right.
  BinauralVelocityModel(std::vector<VelocityFieldNet> nets, bool shared);
  BinauralVelocityModel(BinauralVelocityModel&&) = default;
  BinauralVelocityModel& operator=(BinauralVelocityModel&&) = default;

  bool shared() const { return shared_; }
  const std::vector<VelocityFieldNet>& nets() const { return nets_; }
  // Do not resize; channel views point into this vector.
  std::vector<VelocityFieldNet>& mutable_nets() { return nets_; }
  // 0 = left, 1 = right.
  const VelocityField& channel(int index) const;

  double Loss(std::span<const BinauralCfmSample> batch) const;
  // Gradient over the concatenated parameters of nets().
  double LossAndGradient(std::span<const BinauralCfmSample> batch,
                         Eigen::VectorXd* gradient) const;
  Eigen::VectorXd parameters() const;
  void set_parameters(const Eigen::VectorXd& p);

 private:
  std::vector<VelocityFieldNet> nets_;
  bool shared_;
  std::vector<std::unique_ptr<VelocityField>> views_;
};

// Clean targets and condition of one training clip.
struct PairedExample {
  Eigen::VectorXd x1_left;
  Eigen::VectorXd x1_right;
  Eigen::VectorXd cond;
};

struct TrainConfig {
  double learning_rate = 1e-3;
  size_t batch_size = 128;
  size_t steps = 2000;
  uint64_t rng_seed = 0;
  size_t hidden_width = 64;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_epsilon = 1e-8;
  double divergence_threshold = 1e6;
  bool shared_weights = false;

  void Validate() const;
};

struct TrainResult {
  std::vector<double> losses;  // one per step, before the update
};

// Adam on the binaural objective. Each step draws a batch of examples with
// replacement, x0 ~ N(0, I) per channel and t ~ U[0, 1). Throws
// NumericalError when a loss exceeds the divergence threshold or is not
// finite. Single-threaded and deterministic given the seed.
TrainResult Train(BinauralVelocityModel& model,
                  std::span<const PairedExample> dataset,
                  const TrainConfig& config);

// x_{k+1} = x_k + v(x_k, k / steps, c) / steps. Throws NumericalError on a
// non-finite state.
Eigen::VectorXd SampleEuler(const VelocityField& field,
                            const Eigen::VectorXd& x0,
                            const Eigen::VectorXd& cond, size_t steps);

// Binary checkpoint: "SV2A", format version, shared flag, net configs and
// layer shapes, then little-endian float64 parameters.
void SaveCheckpoint(const std::filesystem::path& path,
                    const BinauralVelocityModel& model);
BinauralVelocityModel LoadCheckpoint(const std::filesystem::path& path);

// CSV `step,loss`.
void WriteLossCsv(const std::filesystem::path& path,
                  std::span<const double> losses);

}  // namespace sv2a

#endif  // SV2A_FLOW_MATCHING_H_
