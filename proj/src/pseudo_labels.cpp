#include "gabc/pseudo_labels.hpp"

#include <ostream>
#include <stdexcept>

#include "gabc/math.hpp"

namespace gabc {

PseudoLabeledSet select_pseudo_labels(const ModelParams& params,
                                      const Eigen::Ref<const Matrix>& unlabeled_samples,
                                      Scalar tau_prime) {
  if (!(tau_prime >= 0.0 && tau_prime <= 1.0)) {
    throw std::invalid_argument("select_pseudo_labels: tau_prime must lie in [0, 1]");
  }
  PseudoLabeledSet set;
  if (unlabeled_samples.cols() == 0) return set;
  const Matrix probs = predict_batch(params, unlabeled_samples);
  for (Index i = 0; i < probs.cols(); ++i) {
    const Scalar confidence = probs.col(i).maxCoeff();
    if (confidence > tau_prime) {
      set.indices.push_back(i);
      set.labels.push_back(static_cast<int>(argmax_lowest(probs.col(i))));
      set.confidences.push_back(confidence);
    }
  }
  return set;
}

void write_pseudo_labels_csv(std::ostream& out, const PseudoLabeledSet& set) {
  out << "sample_id,pseudo_label,confidence\n";
  for (std::size_t i = 0; i < set.indices.size(); ++i) {
    out << set.indices[i] << ',' << set.labels[i] << ',' << set.confidences[i] << '\n';
  }
}

}  // namespace gabc
