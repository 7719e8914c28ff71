#pragma once

#include <vector>

#include "gabc/math.hpp"
#include "gabc/model.hpp"
#include "gabc/types.hpp"

namespace gabc {

struct GateThresholds {
  Scalar tau = 0.95;    // confidence threshold for node removal
  Scalar kappa = 0.20;  // prediction-similarity threshold for edge pruning

  void validate() const {
    if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument("gates: tau must lie in [0, 1]");
    if (!std::isfinite(kappa)) throw std::invalid_argument("gates: kappa must be finite");
  }
};

// Pairwise label similarity: 1 iff the unlabeled sample's predicted class
// equals the labeled sample's ground-truth class.
inline bool pairwise_label_similarity(const Eigen::Ref<const Vector>& p_unlabeled,
                                      Index y_labeled) {
  require_distribution(p_unlabeled, "pairwise_label_similarity");
  if (y_labeled < 0 || y_labeled >= p_unlabeled.size()) {
    throw std::invalid_argument("pairwise_label_similarity: label out of range");
  }
  return argmax_lowest(p_unlabeled) == y_labeled;
}

// Confidence-uncertainty node removal: keep the node iff max confidence
// strictly exceeds tau.
inline bool cunr_gate(const Eigen::Ref<const Vector>& p_unlabeled, Scalar tau) {
  require_distribution(p_unlabeled, "cunr_gate");
  if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument("cunr_gate: tau must lie in [0, 1]");
  return p_unlabeled.maxCoeff() > tau;
}

// Prediction-dissimilarity edge pruning: an edge survives when the pair was
// dissimilar by label (a_ij = 0) or the prediction dot product strictly
// exceeds kappa.
inline bool pdep_gate(bool a_ij, const Eigen::Ref<const Vector>& p_i,
                      const Eigen::Ref<const Vector>& p_j, Scalar kappa) {
  require_distribution(p_i, "pdep_gate: p_i");
  require_distribution(p_j, "pdep_gate: p_j");
  if (p_i.size() != p_j.size()) throw std::invalid_argument("pdep_gate: length mismatch");
  return !a_ij || p_i.dot(p_j) > kappa;
}

inline bool combined_gate(bool node_kept, bool edge_kept) { return node_kept && edge_kept; }

// Per-pair gate grid over an unlabeled batch (rows) and a labeled batch
// (columns), composing the scalar gates above.
struct BatchGates {
  Eigen::ArrayXXi similarity;  // a_ij
  Eigen::ArrayXi node_kept;    // g_i
  Eigen::ArrayXXi edge_kept;   // g~_ij
  Eigen::ArrayXXi combined;    // g_i^j

  Index unlabeled_size() const { return similarity.rows(); }
  Index labeled_size() const { return similarity.cols(); }
};

BatchGates batch_gates(const Eigen::Ref<const Matrix>& probs_unlabeled,
                       const std::vector<int>& labels,
                       const Eigen::Ref<const Matrix>& probs_labeled,
                       const GateThresholds& thresholds);

}  // namespace gabc
