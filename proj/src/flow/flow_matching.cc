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

#include "sv2a/flow_matching.h"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <random>
#include <string>

#include "sv2a/conditioning.h"
#include "sv2a/errors.h"

namespace sv2a {
namespace {

constexpr char kMagic[4] = {'S', 'V', '2', 'A'};
constexpr uint32_t kCheckpointVersion = 1;

void CheckSameShape(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) {
    throw InvalidArgument("shape mismatch: " + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()));
  }
}

void CheckSample(const VelocityField& field, const CfmSample& s) {
  if (static_cast<size_t>(s.x0.size()) != field.data_dim() ||
      static_cast<size_t>(s.x1.size()) != field.data_dim()) {
    throw InvalidArgument("sample data size does not match the field");
  }
  if (static_cast<size_t>(s.cond.size()) != field.cond_dim()) {
    throw InvalidArgument("sample condition size does not match the field");
  }
}

Eigen::MatrixXd Gaussian(Eigen::Index rows, Eigen::Index cols, double stddev,
                         std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, stddev);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = dist(rng);
  return m;
}

// Copies a block of the flat parameter vector into a matrix or back.
template <typename M>
void Unpack(const Eigen::VectorXd& p, Eigen::Index* offset, M* m) {
  *m = Eigen::Map<const M>(p.data() + *offset, m->rows(), m->cols());
  *offset += m->size();
}
template <typename M>
void Pack(const M& m, Eigen::Index* offset, Eigen::VectorXd* p) {
  p->segment(*offset, m.size()) = Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
  *offset += m.size();
}

// Little-endian binary helpers.
void PutU32(std::string* out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void PutF64(std::string* out, double v) {
  const uint64_t bits = std::bit_cast<uint64_t>(v);
  for (int i = 0; i < 8; ++i) {
    out->push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
  }
}

class Reader {
 public:
  Reader(std::string data, std::filesystem::path path)
      : data_(std::move(data)), path_(std::move(path)) {}
  uint64_t Uint(int bytes) {
    if (pos_ + static_cast<size_t>(bytes) > data_.size()) {
      throw FormatError(path_.string() + ": truncated checkpoint");
    }
    uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) {
      v |= static_cast<uint64_t>(static_cast<unsigned char>(data_[pos_++]))
           << (8 * i);
    }
    return v;
  }
  uint32_t U32() { return static_cast<uint32_t>(Uint(4)); }
  double F64() { return std::bit_cast<double>(Uint(8)); }
  std::string Bytes(size_t n) {
    if (pos_ + n > data_.size()) {
      throw FormatError(path_.string() + ": truncated checkpoint");
    }
    std::string s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool AtEnd() const { return pos_ == data_.size(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::string data_;
  std::filesystem::path path_;
  size_t pos_ = 0;
};

}  // namespace

Eigen::VectorXd Interpolate(const Eigen::VectorXd& x0,
                            const Eigen::VectorXd& x1, double t) {
  CheckSameShape(x0, x1);
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("t must lie in [0, 1]");
  return (1.0 - t) * x0 + t * x1;
}

Eigen::VectorXd TargetVelocity(const Eigen::VectorXd& x0,
                               const Eigen::VectorXd& x1) {
  CheckSameShape(x0, x1);
  return x1 - x0;
}

void NetConfig::Validate() const {
  if (data_dim == 0) throw InvalidArgument("data dimension must be positive");
  if (hidden_width == 0) throw InvalidArgument("hidden width must be positive");
  if (time_embedding_dim % 2 != 0) {
    throw InvalidArgument("timestep embedding size must be even");
  }
}

VelocityFieldNet::VelocityFieldNet(const NetConfig& config) : config_(config) {
  config.Validate();
  const auto in = static_cast<Eigen::Index>(config.input_dim());
  const auto h = static_cast<Eigen::Index>(config.hidden_width);
  const auto d = static_cast<Eigen::Index>(config.data_dim);
  w1_ = Eigen::MatrixXd::Zero(h, in);
  b1_ = Eigen::VectorXd::Zero(h);
  w2_ = Eigen::MatrixXd::Zero(h, h);
  b2_ = Eigen::VectorXd::Zero(h);
  w3_ = Eigen::MatrixXd::Zero(d, h);
  b3_ = Eigen::VectorXd::Zero(d);
}

VelocityFieldNet VelocityFieldNet::Random(const NetConfig& config,
                                          uint64_t seed) {
  VelocityFieldNet net(config);
  std::mt19937_64 rng(seed);
  const auto in = net.w1_.cols();
  const auto h = net.w1_.rows();
  net.w1_ = Gaussian(h, in, 1.0 / std::sqrt(static_cast<double>(in)), rng);
  net.w2_ = Gaussian(h, h, 1.0 / std::sqrt(static_cast<double>(h)), rng);
  net.w3_ = Gaussian(net.w3_.rows(), h, 1.0 / std::sqrt(static_cast<double>(h)),
                     rng);
  return net;
}

Eigen::MatrixXd VelocityFieldNet::BuildInputs(std::span<const CfmSample> batch,
                                              std::optional<double> flag) const {
  if (flag.has_value() != config_.channel_flag) {
    throw InvalidArgument(config_.channel_flag
                              ? "net expects a channel flag"
                              : "net has no channel flag input");
  }
  const auto d = static_cast<Eigen::Index>(config_.data_dim);
  const auto e = static_cast<Eigen::Index>(config_.time_embedding_dim);
  const auto c = static_cast<Eigen::Index>(config_.cond_dim);
  Eigen::MatrixXd x(static_cast<Eigen::Index>(config_.input_dim()),
                    static_cast<Eigen::Index>(batch.size()));
  for (size_t j = 0; j < batch.size(); ++j) {
    const CfmSample& s = batch[j];
    CheckSample(*this, s);
    const auto col = static_cast<Eigen::Index>(j);
    x.col(col).head(d) = Interpolate(s.x0, s.x1, s.t);
    x.col(col).segment(d, e) = TimestepEmbedding(s.t, config_.time_embedding_dim);
    x.col(col).segment(d + e, c) = s.cond;
    if (flag.has_value()) x(d + e + c, col) = *flag;
  }
  return x;
}

Eigen::MatrixXd VelocityFieldNet::Forward(const Eigen::MatrixXd& inputs) const {
  const Eigen::MatrixXd h1 = ((w1_ * inputs).colwise() + b1_).array().tanh();
  const Eigen::MatrixXd h2 = ((w2_ * h1).colwise() + b2_).array().tanh();
  return (w3_ * h2).colwise() + b3_;
}

Eigen::VectorXd VelocityFieldNet::Evaluate(const Eigen::VectorXd& x, double t,
                                           const Eigen::VectorXd& cond) const {
  if (config_.channel_flag) {
    throw InvalidArgument("net expects a channel flag");
  }
  const CfmSample s{x, x, t, cond};
  return Forward(BuildInputs({&s, 1}, std::nullopt)).col(0);
}

Eigen::VectorXd VelocityFieldNet::EvaluateChannel(const Eigen::VectorXd& x,
                                                  double t,
                                                  const Eigen::VectorXd& cond,
                                                  double flag) const {
  const CfmSample s{x, x, t, cond};
  return Forward(BuildInputs({&s, 1}, flag)).col(0);
}

size_t VelocityFieldNet::num_parameters() const {
  return static_cast<size_t>(w1_.size() + b1_.size() + w2_.size() +
                             b2_.size() + w3_.size() + b3_.size());
}

Eigen::VectorXd VelocityFieldNet::parameters() const {
  Eigen::VectorXd p(static_cast<Eigen::Index>(num_parameters()));
  Eigen::Index off = 0;
  Pack(w1_, &off, &p);
  Pack(b1_, &off, &p);
  Pack(w2_, &off, &p);
  Pack(b2_, &off, &p);
  Pack(w3_, &off, &p);
  Pack(b3_, &off, &p);
  return p;
}

void VelocityFieldNet::set_parameters(const Eigen::VectorXd& p) {
  if (static_cast<size_t>(p.size()) != num_parameters()) {
    throw InvalidArgument("expected " + std::to_string(num_parameters()) +
                          " parameters, got " + std::to_string(p.size()));
  }
  Eigen::Index off = 0;
  Unpack(p, &off, &w1_);
  Unpack(p, &off, &b1_);
  Unpack(p, &off, &w2_);
  Unpack(p, &off, &b2_);
  Unpack(p, &off, &w3_);
  Unpack(p, &off, &b3_);
}

double VelocityFieldNet::LossAndGradient(std::span<const CfmSample> batch,
                                         std::optional<double> flag,
                                         Eigen::VectorXd* gradient) const {
  if (batch.empty()) throw InvalidArgument("empty batch");
  const Eigen::MatrixXd x = BuildInputs(batch, flag);
  Eigen::MatrixXd u(w3_.rows(), static_cast<Eigen::Index>(batch.size()));
  for (size_t j = 0; j < batch.size(); ++j) {
    u.col(static_cast<Eigen::Index>(j)) = TargetVelocity(batch[j].x0, batch[j].x1);
  }
  const Eigen::MatrixXd h1 = ((w1_ * x).colwise() + b1_).array().tanh();
  const Eigen::MatrixXd h2 = ((w2_ * h1).colwise() + b2_).array().tanh();
  const Eigen::MatrixXd residual = ((w3_ * h2).colwise() + b3_) - u;
  const double n = static_cast<double>(batch.size());
  const double loss = residual.squaredNorm() / n;
  if (gradient == nullptr) return loss;

  const Eigen::MatrixXd g_out = (2.0 / n) * residual;
  const Eigen::MatrixXd g_a2 =
      (w3_.transpose() * g_out).array() * (1.0 - h2.array().square());
  const Eigen::MatrixXd g_a1 =
      (w2_.transpose() * g_a2).array() * (1.0 - h1.array().square());

  gradient->resize(static_cast<Eigen::Index>(num_parameters()));
  Eigen::Index off = 0;
  Pack(Eigen::MatrixXd(g_a1 * x.transpose()), &off, gradient);
  Pack(Eigen::VectorXd(g_a1.rowwise().sum()), &off, gradient);
  Pack(Eigen::MatrixXd(g_a2 * h1.transpose()), &off, gradient);
  Pack(Eigen::VectorXd(g_a2.rowwise().sum()), &off, gradient);
  Pack(Eigen::MatrixXd(g_out * h2.transpose()), &off, gradient);
  Pack(Eigen::VectorXd(g_out.rowwise().sum()), &off, gradient);
  return loss;
}

double CfmLoss(const VelocityField& field, std::span<const CfmSample> batch) {
  if (batch.empty()) throw InvalidArgument("empty batch");
  double sum = 0.0;
  for (const CfmSample& s : batch) {
    CheckSample(field, s);
    const Eigen::VectorXd v =
        field.Evaluate(Interpolate(s.x0, s.x1, s.t), s.t, s.cond);
    sum += (v - TargetVelocity(s.x0, s.x1)).squaredNorm();
  }
  return sum / static_cast<double>(batch.size());
}

namespace {

std::vector<CfmSample> Halves(std::span<const BinauralCfmSample> batch,
                              bool left) {
  std::vector<CfmSample> out;
  out.reserve(batch.size());
  for (const BinauralCfmSample& s : batch) {
    out.push_back(left ? s.left() : s.right());
  }
  return out;
}

}  // namespace

double BinauralCfmLoss(const VelocityField& left, const VelocityField& right,
                       std::span<const BinauralCfmSample> batch) {
  if (batch.empty()) throw InvalidArgument("empty batch");
  for (const BinauralCfmSample& s : batch) {
    if (s.x0_left.size() != s.x0_right.size() ||
        s.x1_left.size() != s.x1_right.size()) {
      throw InvalidArgument("left and right channels are not paired");
    }
  }
  return CfmLoss(left, Halves(batch, true)) +
         CfmLoss(right, Halves(batch, false));
}

BinauralVelocityModel BinauralVelocityModel::Separate(const NetConfig& config,
                                                      uint64_t seed) {
  NetConfig c = config;
  c.channel_flag = false;
  std::vector<VelocityFieldNet> nets;
  nets.push_back(VelocityFieldNet::Random(c, seed));
  nets.push_back(VelocityFieldNet::Random(c, seed + 1));
  return BinauralVelocityModel(std::move(nets), false);
}

BinauralVelocityModel BinauralVelocityModel::Shared(NetConfig config,
                                                    uint64_t seed) {
  config.channel_flag = true;
  std::vector<VelocityFieldNet> nets;
  nets.push_back(VelocityFieldNet::Random(config, seed));
  return BinauralVelocityModel(std::move(nets), true);
}

BinauralVelocityModel::BinauralVelocityModel(std::vector<VelocityFieldNet> nets,
                                             bool shared)
    : nets_(std::move(nets)), shared_(shared) {
  if (shared_) {
    if (nets_.size() != 1 || !nets_[0].config().channel_flag) {
      throw InvalidArgument("shared model needs one net with a channel flag");
    }
    views_.push_back(std::make_unique<ChannelView>(nets_[0], kLeftChannelFlag));
    views_.push_back(std::make_unique<ChannelView>(nets_[0], kRightChannelFlag));
  } else if (nets_.size() != 2 || nets_[0].config().channel_flag ||
             nets_[1].config().channel_flag) {
    throw InvalidArgument("separate model needs two unflagged nets");
  }
}

const VelocityField& BinauralVelocityModel::channel(int index) const {
  if (index != 0 && index != 1) throw InvalidArgument("channel must be 0 or 1");
  if (shared_) return *views_[static_cast<size_t>(index)];
  return nets_[static_cast<size_t>(index)];
}

double BinauralVelocityModel::Loss(
    std::span<const BinauralCfmSample> batch) const {
  return BinauralCfmLoss(channel(0), channel(1), batch);
}

double BinauralVelocityModel::LossAndGradient(
    std::span<const BinauralCfmSample> batch, Eigen::VectorXd* gradient) const {
  const std::vector<CfmSample> left = Halves(batch, true);
  const std::vector<CfmSample> right = Halves(batch, false);
  Eigen::VectorXd gl, gr;
  double loss = 0.0;
  if (shared_) {
    loss = nets_[0].LossAndGradient(left, kLeftChannelFlag, &gl) +
           nets_[0].LossAndGradient(right, kRightChannelFlag, &gr);
    *gradient = gl + gr;
  } else {
    loss = nets_[0].LossAndGradient(left, std::nullopt, &gl) +
           nets_[1].LossAndGradient(right, std::nullopt, &gr);
    gradient->resize(gl.size() + gr.size());
    *gradient << gl, gr;
  }
  return loss;
}

Eigen::VectorXd BinauralVelocityModel::parameters() const {
  if (shared_) return nets_[0].parameters();
  const Eigen::VectorXd a = nets_[0].parameters();
  const Eigen::VectorXd b = nets_[1].parameters();
  Eigen::VectorXd p(a.size() + b.size());
  p << a, b;
  return p;
}

void BinauralVelocityModel::set_parameters(const Eigen::VectorXd& p) {
  if (shared_) {
    nets_[0].set_parameters(p);
    return;
  }
  const auto na = static_cast<Eigen::Index>(nets_[0].num_parameters());
  if (p.size() != na + static_cast<Eigen::Index>(nets_[1].num_parameters())) {
    throw InvalidArgument("parameter count does not match the model");
  }
  nets_[0].set_parameters(p.head(na));
  nets_[1].set_parameters(p.tail(p.size() - na));
}

void TrainConfig::Validate() const {
  if (!(learning_rate >= 0.0)) {
    throw InvalidArgument("learning rate must be non-negative");
  }
  if (batch_size == 0) throw InvalidArgument("batch size must be positive");
  if (hidden_width == 0) throw InvalidArgument("hidden width must be positive");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw InvalidArgument("Adam betas must lie in [0, 1)");
  }
  if (!(adam_epsilon > 0.0)) throw InvalidArgument("Adam epsilon must be positive");
  if (!(divergence_threshold > 0.0)) {
    throw InvalidArgument("divergence threshold must be positive");
  }
}

TrainResult Train(BinauralVelocityModel& model,
                  std::span<const PairedExample> dataset,
                  const TrainConfig& config) {
  config.Validate();
  if (dataset.empty()) throw InvalidArgument("empty training set");
  std::mt19937_64 rng(config.rng_seed);
  std::uniform_int_distribution<size_t> pick(0, dataset.size() - 1);
  std::uniform_real_distribution<double> time(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 1.0);
  auto gaussian = [&](Eigen::Index n) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = noise(rng);
    return v;
  };

  Eigen::VectorXd params = model.parameters();
  Eigen::VectorXd m = Eigen::VectorXd::Zero(params.size());
  Eigen::VectorXd v = Eigen::VectorXd::Zero(params.size());
  Eigen::VectorXd grad;
  std::vector<BinauralCfmSample> batch(config.batch_size);
  TrainResult result;
  result.losses.reserve(config.steps);
  double beta1_pow = 1.0, beta2_pow = 1.0;

  for (size_t step = 0; step < config.steps; ++step) {
    for (BinauralCfmSample& s : batch) {
      const PairedExample& ex = dataset[pick(rng)];
      s.x1_left = ex.x1_left;
      s.x1_right = ex.x1_right;
      s.cond = ex.cond;
      s.x0_left = gaussian(ex.x1_left.size());
      s.x0_right = gaussian(ex.x1_right.size());
      s.t = time(rng);
    }
    const double loss = model.LossAndGradient(batch, &grad);
    if (!std::isfinite(loss) || loss > config.divergence_threshold) {
      throw NumericalError("training diverged at step " + std::to_string(step) +
                           " (loss " + std::to_string(loss) + ")");
    }
    result.losses.push_back(loss);

    beta1_pow *= config.beta1;
    beta2_pow *= config.beta2;
    m = config.beta1 * m + (1.0 - config.beta1) * grad;
    v = config.beta2 * v + (1.0 - config.beta2) * grad.cwiseAbs2();
    const Eigen::ArrayXd m_hat = m.array() / (1.0 - beta1_pow);
    const Eigen::ArrayXd v_hat = v.array() / (1.0 - beta2_pow);
    params.array() -=
        config.learning_rate * m_hat / (v_hat.sqrt() + config.adam_epsilon);
    model.set_parameters(params);
  }
  return result;
}

Eigen::VectorXd SampleEuler(const VelocityField& field,
                            const Eigen::VectorXd& x0,
                            const Eigen::VectorXd& cond, size_t steps) {
  if (steps == 0) throw InvalidArgument("Euler sampling needs at least 1 step");
  if (static_cast<size_t>(x0.size()) != field.data_dim()) {
    throw InvalidArgument("initial state size does not match the field");
  }
  const double dt = 1.0 / static_cast<double>(steps);
  Eigen::VectorXd x = x0;
  for (size_t k = 0; k < steps; ++k) {
    x += dt * field.Evaluate(x, static_cast<double>(k) * dt, cond);
    if (!x.allFinite()) {
      throw NumericalError("non-finite state at Euler step " +
                           std::to_string(k));
    }
  }
  return x;
}

void SaveCheckpoint(const std::filesystem::path& path,
                    const BinauralVelocityModel& model) {
  std::string out(kMagic, 4);
  PutU32(&out, kCheckpointVersion);
  PutU32(&out, model.shared() ? 1 : 0);
  PutU32(&out, static_cast<uint32_t>(model.nets().size()));
  for (const VelocityFieldNet& net : model.nets()) {
    const NetConfig& c = net.config();
    PutU32(&out, static_cast<uint32_t>(c.data_dim));
    PutU32(&out, static_cast<uint32_t>(c.cond_dim));
    PutU32(&out, static_cast<uint32_t>(c.time_embedding_dim));
    PutU32(&out, static_cast<uint32_t>(c.hidden_width));
    PutU32(&out, c.channel_flag ? 1 : 0);
    const Eigen::MatrixXd* layers[] = {&net.w1(), &net.w2(), &net.w3()};
    PutU32(&out, 3);
    for (const Eigen::MatrixXd* w : layers) {
      PutU32(&out, static_cast<uint32_t>(w->rows()));
      PutU32(&out, static_cast<uint32_t>(w->cols()));
    }
    const Eigen::VectorXd p = net.parameters();
    for (Eigen::Index i = 0; i < p.size(); ++i) PutF64(&out, p(i));
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write checkpoint " + path.string());
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw IoError("failed writing " + path.string());
}

BinauralVelocityModel LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open checkpoint " + path.string());
  Reader r(std::string(std::istreambuf_iterator<char>(f), {}), path);
  if (r.Bytes(4) != std::string(kMagic, 4)) {
    throw FormatError(path.string() + ": not an SV2A checkpoint");
  }
  const uint32_t version = r.U32();
  if (version != kCheckpointVersion) {
    throw FormatError(path.string() + ": unsupported checkpoint version " +
                      std::to_string(version));
  }
  const bool shared = r.U32() != 0;
  const uint32_t count = r.U32();
  if (count != (shared ? 1u : 2u)) {
    throw FormatError(path.string() + ": unexpected net count");
  }
  std::vector<VelocityFieldNet> nets;
  for (uint32_t n = 0; n < count; ++n) {
    NetConfig c;
    c.data_dim = r.U32();
    c.cond_dim = r.U32();
    c.time_embedding_dim = r.U32();
    c.hidden_width = r.U32();
    c.channel_flag = r.U32() != 0;
    VelocityFieldNet net = [&] {
      try {
        return VelocityFieldNet(c);
      } catch (const InvalidArgument& e) {
        throw FormatError(path.string() + ": " + e.what());
      }
    }();
    if (r.U32() != 3) throw FormatError(path.string() + ": expected 3 layers");
    const Eigen::MatrixXd* layers[] = {&net.w1(), &net.w2(), &net.w3()};
    for (const Eigen::MatrixXd* w : layers) {
      const uint32_t rows = r.U32();
      const uint32_t cols = r.U32();
      if (rows != w->rows() || cols != w->cols()) {
        throw FormatError(path.string() + ": layer shape mismatch");
      }
    }
    Eigen::VectorXd p(static_cast<Eigen::Index>(net.num_parameters()));
    for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = r.F64();
    net.set_parameters(p);
    nets.push_back(std::move(net));
  }
  if (!r.AtEnd()) throw FormatError(path.string() + ": trailing bytes");
  try {
    return BinauralVelocityModel(std::move(nets), shared);
  } catch (const InvalidArgument& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void WriteLossCsv(const std::filesystem::path& path,
                  std::span<const double> losses) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "step,loss\n";
  char buf[64];
  for (size_t i = 0; i < losses.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", i, losses[i]);
    out << buf;
  }
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace sv2a
