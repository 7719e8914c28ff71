#pragma once

#include <vector>

#include "gabc/gates.hpp"
#include "gabc/types.hpp"

namespace gabc {

struct LossWeights {
  Scalar alpha = 0.03;  // weight of the consistency loss
  Scalar beta = 25.0;   // weight of the pairwise clustering loss

  void validate() const {
    if (!(alpha >= 0.0) || !(beta >= 0.0)) {
      throw std::invalid_argument("loss weights must be >= 0");
    }
  }
};

// Term switches for the pairwise clustering loss; ablations drop one side.
struct PairLossTerms {
  bool positive = true;  // pull term on similar pairs
  bool negative = true;  // push term on dissimilar pairs
};

struct LossBreakdown {
  Scalar ce = 0.0;
  Scalar lab = 0.0;
  Scalar con = 0.0;
  Scalar wdbc = 0.0;
  Scalar adbc = 0.0;
  Scalar abc = 0.0;
  Scalar overall = 0.0;
};

// Binary cross-entropy on the prediction dot product of one pair. The dot
// product is clamped to [kLogEps, 1 - kLogEps] before the logs, so one-hot
// pairs stay finite.
Scalar abc_pair_loss(const Eigen::Ref<const Vector>& p_i, const Eigen::Ref<const Vector>& p_j,
                     int similar, const PairLossTerms& terms = {});

// Within-domain betweenness clustering: mean over the unlabeled x labeled
// pair grid of gate-weighted pair losses. probs_unlabeled carries the
// (augmented) unlabeled predictions, probs_labeled the clean predictions of
// the labeled-target pool (with pseudo-labeled samples appended when used).
// Gradients accumulate into the optional output matrices.
Scalar wdbc_loss(const Eigen::Ref<const Matrix>& probs_unlabeled,
                 const Eigen::Ref<const Matrix>& probs_labeled, const BatchGates& gates,
                 const PairLossTerms& terms = {}, Matrix* dprobs_unlabeled = nullptr,
                 Matrix* dprobs_labeled = nullptr);

// Across-domain betweenness clustering: same structure against the labeled
// source pool (never includes pseudo-labeled samples).
Scalar adbc_loss(const Eigen::Ref<const Matrix>& probs_unlabeled,
                 const Eigen::Ref<const Matrix>& probs_source, const BatchGates& gates,
                 const PairLossTerms& terms = {}, Matrix* dprobs_unlabeled = nullptr,
                 Matrix* dprobs_source = nullptr);

// KL(sharpened target || augmented prediction), mean over the batch. The
// targets are constants: no gradient flows through them.
Scalar consistency_kl_loss(const Eigen::Ref<const Matrix>& sharpened_targets,
                           const Eigen::Ref<const Matrix>& probs_augmented,
                           Matrix* dprobs_augmented = nullptr);

// Mean cross-entropy of augmented predictions against hard pseudo-labels.
// Empty batch is valid and contributes zero (with a logged warning).
Scalar label_consistency_loss(const std::vector<int>& pseudo_labels,
                              const Eigen::Ref<const Matrix>& probs_augmented,
                              Matrix* dprobs_augmented = nullptr);

// Mean cross-entropy on ground-truth labels; labeled batches are never empty.
Scalar supervised_ce(const std::vector<int>& labels, const Eigen::Ref<const Matrix>& probs,
                     Matrix* dprobs = nullptr);

// coeff * sum_i -log(clamped p[y_i, i]) with matching gradient accumulation;
// building block shared by the mean cross-entropies and the trainer's
// union-batch supervision term.
Scalar cross_entropy_sum(const std::vector<int>& labels, const Eigen::Ref<const Matrix>& probs,
                         Matrix* dprobs, Scalar coeff);

// ce + lab + alpha * con + beta * abc; throws NumericError naming the first
// non-finite component.
Scalar overall_loss(Scalar ce, Scalar lab, Scalar con, Scalar abc, const LossWeights& weights);

LossBreakdown make_breakdown(Scalar ce, Scalar lab, Scalar con, Scalar wdbc, Scalar adbc,
                             const LossWeights& weights);

}  // namespace gabc
