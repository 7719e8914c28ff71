#include "gabc/evaluation.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "gabc/math.hpp"

namespace gabc {

Scalar target_accuracy(const ModelParams& params, const LabeledSet& test_set) {
  if (test_set.size() == 0) throw std::invalid_argument("target_accuracy: empty test set");
  const Matrix probs = predict_batch(params, test_set.samples);
  Index correct = 0;
  for (Index i = 0; i < probs.cols(); ++i) {
    if (argmax_lowest(probs.col(i)) == test_set.labels[static_cast<std::size_t>(i)]) ++correct;
  }
  return static_cast<Scalar>(correct) / static_cast<Scalar>(test_set.size());
}

namespace {

Scalar masked_mean(const CssMatrix& css, bool diagonal) {
  Scalar sum = 0.0;
  Index count = 0;
  for (Index c = 0; c < css.k(); ++c) {
    for (Index cp = 0; cp < css.k(); ++cp) {
      if ((c == cp) != diagonal) continue;
      if (!css.present(c, cp)) continue;
      sum += css.scores(c, cp);
      ++count;
    }
  }
  return count == 0 ? std::numeric_limits<Scalar>::quiet_NaN()
                    : sum / static_cast<Scalar>(count);
}

}  // namespace

Scalar CssMatrix::mean_diagonal() const { return masked_mean(*this, true); }
Scalar CssMatrix::mean_off_diagonal() const { return masked_mean(*this, false); }

CssMatrix css_matrix(const ModelParams& params, const UnlabeledSet& unlabeled,
                     const LabeledSet& labeled_target, const LabeledSet& source) {
  const Index k = params.num_classes();
  CssMatrix css;
  css.scores = Matrix::Zero(k, k);
  css.present = Eigen::ArrayXXi::Zero(k, k);
  if (unlabeled.size() == 0 || unlabeled.eval_labels.empty()) return css;
  if (labeled_target.size() + source.size() == 0) return css;

  const Matrix probs_u = predict_batch(params, unlabeled.samples);

  Matrix labeled_samples(unlabeled.samples.rows(), labeled_target.size() + source.size());
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(labeled_samples.cols()));
  labeled_samples.leftCols(labeled_target.size()) = labeled_target.samples;
  labeled_samples.rightCols(source.size()) = source.samples;
  labels.insert(labels.end(), labeled_target.labels.begin(), labeled_target.labels.end());
  labels.insert(labels.end(), source.labels.begin(), source.labels.end());
  const Matrix probs_l = predict_batch(params, labeled_samples);

  const Matrix dots = probs_u.transpose() * probs_l;  // n_u x n_l

  Matrix sums = Matrix::Zero(k, k);
  Mat<Index> counts = Mat<Index>::Zero(k, k);
  for (Index i = 0; i < dots.rows(); ++i) {
    const int c = unlabeled.eval_labels[static_cast<std::size_t>(i)];
    if (c < 0 || c >= k) throw std::invalid_argument("css_matrix: eval label out of range");
    for (Index j = 0; j < dots.cols(); ++j) {
      const int cp = labels[static_cast<std::size_t>(j)];
      if (cp < 0 || cp >= k) throw std::invalid_argument("css_matrix: label out of range");
      sums(c, cp) += dots(i, j);
      counts(c, cp) += 1;
    }
  }
  for (Index c = 0; c < k; ++c) {
    for (Index cp = 0; cp < k; ++cp) {
      if (counts(c, cp) > 0) {
        css.scores(c, cp) = sums(c, cp) / static_cast<Scalar>(counts(c, cp));
        css.present(c, cp) = 1;
      }
    }
  }
  return css;
}

void write_css_csv(std::ostream& out, const CssMatrix& css) {
  out << "unlabeled_class";
  for (Index cp = 0; cp < css.k(); ++cp) out << ",labeled_" << cp;
  out << '\n';
  for (Index c = 0; c < css.k(); ++c) {
    out << c;
    for (Index cp = 0; cp < css.k(); ++cp) {
      out << ',';
      if (css.present(c, cp)) {
        out << css.scores(c, cp);
      } else {
        out << "absent";
      }
    }
    out << '\n';
  }
}

GateRatioStats gate_ratio_stats(const ModelParams& params, const UnlabeledSet& unlabeled,
                                const LabeledSet& labeled_target, const LabeledSet& source,
                                const GateThresholds& thresholds) {
  thresholds.validate();
  if (unlabeled.size() == 0) throw std::invalid_argument("gate_ratio_stats: empty unlabeled pool");
  if (labeled_target.size() + source.size() == 0) {
    throw std::invalid_argument("gate_ratio_stats: empty labeled pools");
  }

  const Matrix probs_u = predict_batch(params, unlabeled.samples);

  Matrix labeled_samples(unlabeled.samples.rows(), labeled_target.size() + source.size());
  std::vector<int> labels;
  labeled_samples.leftCols(labeled_target.size()) = labeled_target.samples;
  labeled_samples.rightCols(source.size()) = source.samples;
  labels.insert(labels.end(), labeled_target.labels.begin(), labeled_target.labels.end());
  labels.insert(labels.end(), source.labels.begin(), source.labels.end());
  const Matrix probs_l = predict_batch(params, labeled_samples);

  const Matrix dots = probs_u.transpose() * probs_l;

  GateRatioStats stats;
  Index kept = 0;
  Index cells[2][2] = {{0, 0}, {0, 0}};
  Index combined = 0;
  for (Index i = 0; i < probs_u.cols(); ++i) {
    const Index predicted = argmax_lowest(probs_u.col(i));
    const bool node = probs_u.col(i).maxCoeff() > thresholds.tau;
    if (node) ++kept;
    for (Index j = 0; j < probs_l.cols(); ++j) {
      const bool a = predicted == labels[static_cast<std::size_t>(j)];
      const bool d = dots(i, j) > thresholds.kappa;
      ++cells[a ? 1 : 0][d ? 1 : 0];
      if (node && (!a || d)) ++combined;
    }
  }
  const Scalar pair_count = static_cast<Scalar>(probs_u.cols() * probs_l.cols());
  stats.node_kept_fraction = static_cast<Scalar>(kept) / static_cast<Scalar>(probs_u.cols());
  for (int a = 0; a < 2; ++a) {
    for (int d = 0; d < 2; ++d) {
      stats.cell_fraction[a][d] = static_cast<Scalar>(cells[a][d]) / pair_count;
    }
  }
  stats.combined_gate_fraction = static_cast<Scalar>(combined) / pair_count;
  return stats;
}

}  // namespace gabc
