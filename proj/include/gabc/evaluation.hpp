#pragma once

#include <iosfwd>

#include "gabc/data.hpp"
#include "gabc/gates.hpp"
#include "gabc/model.hpp"
#include "gabc/types.hpp"

namespace gabc {

// Fraction of argmax-correct clean predictions on a labeled set.
Scalar target_accuracy(const ModelParams& params, const LabeledSet& test_set);

// Class-wise similarity scores: entry (c, c') is the mean prediction dot
// product between unlabeled samples of evaluation class c and labeled samples
// (target and source pools) of class c'. Entries with an empty class on
// either side are flagged absent rather than zero.
struct CssMatrix {
  Matrix scores;               // K x K
  Eigen::ArrayXXi present;     // 1 where both classes are populated

  Index k() const { return scores.rows(); }
  Scalar mean_diagonal() const;
  Scalar mean_off_diagonal() const;
};

CssMatrix css_matrix(const ModelParams& params, const UnlabeledSet& unlabeled,
                     const LabeledSet& labeled_target, const LabeledSet& source);

void write_css_csv(std::ostream& out, const CssMatrix& css);

// Gate statistics over the unlabeled x labeled pair grid, from clean
// predictions: the fraction of unlabeled nodes kept by the confidence gate
// and the fraction of pairs in each (label similarity, dot > kappa) cell.
struct GateRatioStats {
  Scalar node_kept_fraction = 0.0;
  // cell_fraction[a][d]: a = pairwise label similarity, d = dot > kappa.
  Scalar cell_fraction[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  Scalar combined_gate_fraction = 0.0;  // mean of g_i^j over the pair grid

  Scalar similar_fraction() const { return cell_fraction[1][0] + cell_fraction[1][1]; }
};

GateRatioStats gate_ratio_stats(const ModelParams& params, const UnlabeledSet& unlabeled,
                                const LabeledSet& labeled_target, const LabeledSet& source,
                                const GateThresholds& thresholds);

}  // namespace gabc
