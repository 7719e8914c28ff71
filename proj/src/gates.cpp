#include "gabc/gates.hpp"

#include <stdexcept>
#include <string>

namespace gabc {

BatchGates batch_gates(const Eigen::Ref<const Matrix>& probs_unlabeled,
                       const std::vector<int>& labels,
                       const Eigen::Ref<const Matrix>& probs_labeled,
                       const GateThresholds& thresholds) {
  thresholds.validate();
  const Index n_u = probs_unlabeled.cols();
  const Index n_l = probs_labeled.cols();
  if (n_u == 0 || n_l == 0) throw std::invalid_argument("batch_gates: empty batch");
  if (probs_unlabeled.rows() != probs_labeled.rows()) {
    throw std::invalid_argument("batch_gates: class-count mismatch between batches");
  }
  if (static_cast<Index>(labels.size()) != n_l) {
    throw std::invalid_argument("batch_gates: label count mismatch");
  }
  const Index k = probs_unlabeled.rows();
  for (int y : labels) {
    if (y < 0 || y >= k) throw std::invalid_argument("batch_gates: label out of range");
  }
  if (!probs_unlabeled.allFinite() || !probs_labeled.allFinite()) {
    throw std::invalid_argument("batch_gates: non-finite probabilities");
  }

  BatchGates g;
  g.node_kept.resize(n_u);
  Eigen::ArrayXi predicted(n_u);
  for (Index i = 0; i < n_u; ++i) {
    predicted(i) = static_cast<int>(argmax_lowest(probs_unlabeled.col(i)));
    g.node_kept(i) = probs_unlabeled.col(i).maxCoeff() > thresholds.tau ? 1 : 0;
  }

  // All pairwise prediction similarities at once.
  Matrix dots = probs_unlabeled.transpose() * probs_labeled;  // n_u x n_l

  g.similarity.resize(n_u, n_l);
  g.edge_kept.resize(n_u, n_l);
  g.combined.resize(n_u, n_l);
  for (Index j = 0; j < n_l; ++j) {
    for (Index i = 0; i < n_u; ++i) {
      const int a = predicted(i) == labels[static_cast<std::size_t>(j)] ? 1 : 0;
      const int kept = (!a || dots(i, j) > thresholds.kappa) ? 1 : 0;
      g.similarity(i, j) = a;
      g.edge_kept(i, j) = kept;
      g.combined(i, j) = g.node_kept(i) * kept;
    }
  }
  return g;
}

}  // namespace gabc
