#pragma once

#include <iosfwd>
#include <vector>

#include "gabc/model.hpp"
#include "gabc/types.hpp"

namespace gabc {

// Confidence-selected hard labels over a subset of the unlabeled pool.
// indices refer into the unlabeled set the selection ran on; confidences are
// the max predicted probability at selection time (each strictly > tau_prime).
struct PseudoLabeledSet {
  std::vector<Index> indices;
  std::vector<int> labels;
  std::vector<Scalar> confidences;

  Index size() const { return static_cast<Index>(indices.size()); }
  bool empty() const { return indices.empty(); }
};

// Selects exactly the unlabeled samples whose clean max confidence strictly
// exceeds tau_prime, labeled with their argmax class.
PseudoLabeledSet select_pseudo_labels(const ModelParams& params,
                                      const Eigen::Ref<const Matrix>& unlabeled_samples,
                                      Scalar tau_prime);

// CSV dump (sample id, pseudo label, confidence), one row per selected sample.
void write_pseudo_labels_csv(std::ostream& out, const PseudoLabeledSet& set);

}  // namespace gabc
