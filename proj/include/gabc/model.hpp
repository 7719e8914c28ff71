#pragma once

#include <cstdint>

#include "gabc/types.hpp"

namespace gabc {

struct ModelConfig {
  Index input_dim = 2;
  Index hidden_dim = 32;
  Index feature_dim = 16;
  Index num_classes = 5;
  Scalar temperature = 0.05;  // scaling of the normalized feature, f = F(x)/(T*|F(x)|)

  void validate() const;
};

// Two-layer tanh extractor followed by a bias-free prototype classifier on the
// temperature-normalized feature. Prototype columns act as class anchors on
// the sphere of radius 1/T.
struct ModelParams {
  Matrix w1;          // hidden_dim x input_dim
  Vector b1;          // hidden_dim
  Matrix w2;          // feature_dim x hidden_dim
  Vector b2;          // feature_dim
  Matrix prototypes;  // feature_dim x num_classes
  Scalar temperature = 0.05;

  Index input_dim() const { return w1.cols(); }
  Index hidden_dim() const { return w1.rows(); }
  Index feature_dim() const { return w2.rows(); }
  Index num_classes() const { return prototypes.cols(); }
};

ModelParams init_model(const ModelConfig& config, std::uint64_t seed);

// Everything the backward pass needs, cached per batch (columns = samples).
struct BatchForward {
  Matrix inputs;    // d x n
  Matrix hidden;    // hidden_dim x n, tanh applied
  Matrix raw;       // feature_dim x n, pre-normalization extractor output
  Vector raw_norms; // n
  Matrix features;  // feature_dim x n, norm 1/T columns
  Matrix logits;    // K x n
  Matrix probs;     // K x n, softmax columns

  Index size() const { return inputs.cols(); }
};

// Forward pass over a batch. Throws NumericError when a raw feature norm
// falls below 1e-12 or a logit is non-finite (message names the sample).
BatchForward forward(const ModelParams& params, const Eigen::Ref<const Matrix>& inputs);

// Gradient container mirroring the trainable tensors of ModelParams.
struct ModelGrad {
  Matrix w1;
  Vector b1;
  Matrix w2;
  Vector b2;
  Matrix prototypes;

  static ModelGrad zeros_like(const ModelParams& params);
  void set_zero();
  void add_scaled(const ModelGrad& other, Scalar factor);
  Scalar squared_norm() const;
};

// Accumulates into grad the chain of d(loss)/d(probs) back through softmax,
// classifier, feature normalization and the extractor.
void backward(const ModelParams& params, const BatchForward& cache,
              const Eigen::Ref<const Matrix>& dprobs, ModelGrad& grad);

// Single-sample convenience wrappers.
Vector extract_feature(const ModelParams& params, const Eigen::Ref<const Vector>& x);
Vector predict(const ModelParams& params, const Eigen::Ref<const Vector>& x);
Matrix predict_batch(const ModelParams& params, const Eigen::Ref<const Matrix>& inputs);

// Index of the maximal entry, ties broken toward the lowest class index.
Index predicted_label(const Eigen::Ref<const Vector>& probs);

}  // namespace gabc
