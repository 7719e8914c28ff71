#include "gabc/model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "gabc/math.hpp"
#include "gabc/rng.hpp"

namespace gabc {

namespace {

constexpr Scalar kDegenerateNorm = 1e-12;

Matrix gaussian_matrix(Index rows, Index cols, Scalar stddev, std::mt19937_64& rng) {
  std::normal_distribution<Scalar> dist(0.0, stddev);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = dist(rng);
  }
  return m;
}

}  // namespace

void ModelConfig::validate() const {
  if (input_dim < 1) throw ConfigError("model: input_dim must be >= 1");
  if (hidden_dim < 1) throw ConfigError("model: hidden_dim must be >= 1");
  if (feature_dim < 1) throw ConfigError("model: feature_dim must be >= 1");
  if (num_classes < 2) throw ConfigError("model: num_classes must be >= 2");
  if (!(temperature > 0.0)) throw ConfigError("model: temperature must be > 0");
}

ModelParams init_model(const ModelConfig& config, std::uint64_t seed) {
  config.validate();
  auto rng = make_rng(seed, 0x6d6f64656cull);  // model init substream
  ModelParams p;
  p.w1 = gaussian_matrix(config.hidden_dim, config.input_dim,
                         1.0 / std::sqrt(static_cast<Scalar>(config.input_dim)), rng);
  p.b1 = Vector::Zero(config.hidden_dim);
  p.w2 = gaussian_matrix(config.feature_dim, config.hidden_dim,
                         1.0 / std::sqrt(static_cast<Scalar>(config.hidden_dim)), rng);
  p.b2 = Vector::Zero(config.feature_dim);
  p.prototypes = gaussian_matrix(config.feature_dim, config.num_classes,
                                 1.0 / std::sqrt(static_cast<Scalar>(config.feature_dim)), rng);
  p.temperature = config.temperature;
  return p;
}

BatchForward forward(const ModelParams& params, const Eigen::Ref<const Matrix>& inputs) {
  if (inputs.rows() != params.input_dim()) {
    throw std::invalid_argument("forward: input dimension mismatch, got " +
                                std::to_string(inputs.rows()) + ", expected " +
                                std::to_string(params.input_dim()));
  }
  if (inputs.cols() == 0) throw std::invalid_argument("forward: empty batch");
  if (!(params.temperature > 0.0)) throw std::invalid_argument("forward: temperature must be > 0");

  BatchForward c;
  c.inputs = inputs;
  c.hidden = ((params.w1 * inputs).colwise() + params.b1).array().tanh().matrix();
  c.raw = (params.w2 * c.hidden).colwise() + params.b2;
  c.raw_norms = c.raw.colwise().norm();
  for (Index j = 0; j < c.raw_norms.size(); ++j) {
    if (!(c.raw_norms(j) > kDegenerateNorm)) {
      throw NumericError("forward: degenerate raw feature (norm " +
                         std::to_string(c.raw_norms(j)) + ") at sample " + std::to_string(j));
    }
  }
  c.features = c.raw.array().rowwise() /
               (params.temperature * c.raw_norms).transpose().array();
  c.logits.noalias() = params.prototypes.transpose() * c.features;
  if (!c.logits.allFinite()) {
    for (Index j = 0; j < c.logits.cols(); ++j) {
      for (Index i = 0; i < c.logits.rows(); ++i) {
        if (!std::isfinite(c.logits(i, j))) {
          throw NumericError("forward: non-finite logit at class " + std::to_string(i) +
                             ", sample " + std::to_string(j));
        }
      }
    }
  }
  c.probs.resize(c.logits.rows(), c.logits.cols());
  for (Index j = 0; j < c.logits.cols(); ++j) {
    c.probs.col(j) = softmax(c.logits.col(j));
  }
  return c;
}

ModelGrad ModelGrad::zeros_like(const ModelParams& params) {
  ModelGrad g;
  g.w1 = Matrix::Zero(params.w1.rows(), params.w1.cols());
  g.b1 = Vector::Zero(params.b1.size());
  g.w2 = Matrix::Zero(params.w2.rows(), params.w2.cols());
  g.b2 = Vector::Zero(params.b2.size());
  g.prototypes = Matrix::Zero(params.prototypes.rows(), params.prototypes.cols());
  return g;
}

void ModelGrad::set_zero() {
  w1.setZero();
  b1.setZero();
  w2.setZero();
  b2.setZero();
  prototypes.setZero();
}

void ModelGrad::add_scaled(const ModelGrad& other, Scalar factor) {
  w1 += factor * other.w1;
  b1 += factor * other.b1;
  w2 += factor * other.w2;
  b2 += factor * other.b2;
  prototypes += factor * other.prototypes;
}

Scalar ModelGrad::squared_norm() const {
  return w1.squaredNorm() + b1.squaredNorm() + w2.squaredNorm() + b2.squaredNorm() +
         prototypes.squaredNorm();
}

void backward(const ModelParams& params, const BatchForward& cache,
              const Eigen::Ref<const Matrix>& dprobs, ModelGrad& grad) {
  if (dprobs.rows() != cache.probs.rows() || dprobs.cols() != cache.probs.cols()) {
    throw std::invalid_argument("backward: dprobs shape mismatch");
  }

  // softmax: dz = p .* (dp - <p, dp>)
  Eigen::ArrayXXd pd = cache.probs.array() * dprobs.array();
  Eigen::Array<Scalar, 1, Eigen::Dynamic> inner = pd.colwise().sum();
  Matrix dlogits = (pd - cache.probs.array().rowwise() * inner).matrix();

  grad.prototypes.noalias() += cache.features * dlogits.transpose();
  Matrix dfeat = params.prototypes * dlogits;

  // f = raw / (T * |raw|):  draw = (df - rhat <rhat, df>) / (T * |raw|)
  Eigen::ArrayXXd rhat = cache.raw.array().rowwise() / cache.raw_norms.transpose().array();
  Eigen::Array<Scalar, 1, Eigen::Dynamic> proj = (rhat * dfeat.array()).colwise().sum();
  Eigen::Array<Scalar, 1, Eigen::Dynamic> denom =
      (params.temperature * cache.raw_norms).transpose().array();
  Matrix draw = ((dfeat.array() - rhat.rowwise() * proj).rowwise() / denom).matrix();

  grad.b2 += draw.rowwise().sum();
  grad.w2.noalias() += draw * cache.hidden.transpose();
  Matrix dhidden = params.w2.transpose() * draw;
  Matrix dpre = (dhidden.array() * (1.0 - cache.hidden.array().square())).matrix();
  grad.b1 += dpre.rowwise().sum();
  grad.w1.noalias() += dpre * cache.inputs.transpose();
}

Vector extract_feature(const ModelParams& params, const Eigen::Ref<const Vector>& x) {
  if (x.size() != params.input_dim()) {
    throw std::invalid_argument("extract_feature: input dimension mismatch");
  }
  return forward(params, x).features.col(0);
}

Vector predict(const ModelParams& params, const Eigen::Ref<const Vector>& x) {
  if (x.size() != params.input_dim()) {
    throw std::invalid_argument("predict: input dimension mismatch");
  }
  return forward(params, x).probs.col(0);
}

Matrix predict_batch(const ModelParams& params, const Eigen::Ref<const Matrix>& inputs) {
  return forward(params, inputs).probs;
}

Index predicted_label(const Eigen::Ref<const Vector>& probs) {
  require_distribution(probs, "predicted_label");
  return argmax_lowest(probs);
}

}  // namespace gabc
