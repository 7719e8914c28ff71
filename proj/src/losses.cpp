#include "gabc/losses.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gabc/math.hpp"

namespace gabc {

namespace {

// Shared core of the two betweenness-clustering losses.
Scalar pair_grid_loss(const Eigen::Ref<const Matrix>& probs_u,
                      const Eigen::Ref<const Matrix>& probs_l, const BatchGates& gates,
                      const PairLossTerms& terms, Matrix* dprobs_u, Matrix* dprobs_l,
                      const char* name) {
  const Index n_u = probs_u.cols();
  const Index n_l = probs_l.cols();
  if (n_u == 0) {
    warn(std::string(name) + ": empty unlabeled batch, loss contributes zero");
    return 0.0;
  }
  if (n_l == 0) {
    warn(std::string(name) + ": empty labeled batch, loss contributes zero");
    return 0.0;
  }
  if (probs_u.rows() != probs_l.rows()) {
    throw std::invalid_argument(std::string(name) + ": class-count mismatch");
  }
  if (!probs_u.allFinite() || !probs_l.allFinite()) {
    throw std::invalid_argument(std::string(name) + ": non-finite probabilities");
  }
  if (gates.combined.rows() != n_u || gates.combined.cols() != n_l) {
    throw std::invalid_argument(std::string(name) + ": gate grid shape mismatch");
  }

  const Scalar eps = kLogEps;
  const Scalar scale = 1.0 / static_cast<Scalar>(n_u * n_l);

  Eigen::ArrayXXd dots = (probs_u.transpose() * probs_l).array();
  Eigen::ArrayXXd clamped = dots.max(eps).min(1.0 - eps);
  Eigen::ArrayXXd sim = gates.similarity.cast<Scalar>();
  Eigen::ArrayXXd gate = gates.combined.cast<Scalar>();

  Eigen::ArrayXXd loss = Eigen::ArrayXXd::Zero(n_u, n_l);
  if (terms.positive) loss -= sim * clamped.log();
  if (terms.negative) loss -= (1.0 - sim) * (1.0 - clamped).log();
  const Scalar value = (gate * loss).sum() * scale;

  if (dprobs_u != nullptr || dprobs_l != nullptr) {
    Eigen::ArrayXXd in_range =
        ((dots > eps) && (dots < 1.0 - eps)).cast<Scalar>();
    Eigen::ArrayXXd dloss_ddot = Eigen::ArrayXXd::Zero(n_u, n_l);
    if (terms.positive) dloss_ddot -= sim / clamped;
    if (terms.negative) dloss_ddot += (1.0 - sim) / (1.0 - clamped);
    Matrix weight = (gate * in_range * dloss_ddot * scale).matrix();
    if (dprobs_u != nullptr) {
      if (dprobs_u->size() == 0) dprobs_u->setZero(probs_u.rows(), n_u);
      dprobs_u->noalias() += probs_l * weight.transpose();
    }
    if (dprobs_l != nullptr) {
      if (dprobs_l->size() == 0) dprobs_l->setZero(probs_l.rows(), n_l);
      dprobs_l->noalias() += probs_u * weight;
    }
  }
  return value;
}

}  // namespace

Scalar abc_pair_loss(const Eigen::Ref<const Vector>& p_i, const Eigen::Ref<const Vector>& p_j,
                     int similar, const PairLossTerms& terms) {
  require_distribution(p_i, "abc_pair_loss: p_i");
  require_distribution(p_j, "abc_pair_loss: p_j");
  if (p_i.size() != p_j.size()) throw std::invalid_argument("abc_pair_loss: length mismatch");
  if (similar != 0 && similar != 1) {
    throw std::invalid_argument("abc_pair_loss: pairwise label must be 0 or 1");
  }
  const Scalar eps = kLogEps;
  const Scalar dot = std::min(std::max(p_i.dot(p_j), eps), 1.0 - eps);
  Scalar loss = 0.0;
  if (terms.positive) loss -= similar * std::log(dot);
  if (terms.negative) loss -= (1 - similar) * std::log(1.0 - dot);
  return loss;
}

Scalar wdbc_loss(const Eigen::Ref<const Matrix>& probs_unlabeled,
                 const Eigen::Ref<const Matrix>& probs_labeled, const BatchGates& gates,
                 const PairLossTerms& terms, Matrix* dprobs_unlabeled, Matrix* dprobs_labeled) {
  return pair_grid_loss(probs_unlabeled, probs_labeled, gates, terms, dprobs_unlabeled,
                        dprobs_labeled, "wdbc_loss");
}

Scalar adbc_loss(const Eigen::Ref<const Matrix>& probs_unlabeled,
                 const Eigen::Ref<const Matrix>& probs_source, const BatchGates& gates,
                 const PairLossTerms& terms, Matrix* dprobs_unlabeled, Matrix* dprobs_source) {
  return pair_grid_loss(probs_unlabeled, probs_source, gates, terms, dprobs_unlabeled,
                        dprobs_source, "adbc_loss");
}

Scalar consistency_kl_loss(const Eigen::Ref<const Matrix>& sharpened_targets,
                           const Eigen::Ref<const Matrix>& probs_augmented,
                           Matrix* dprobs_augmented) {
  const Index n = probs_augmented.cols();
  if (n == 0) throw std::invalid_argument("consistency_kl_loss: empty batch");
  if (sharpened_targets.rows() != probs_augmented.rows() ||
      sharpened_targets.cols() != probs_augmented.cols()) {
    throw std::invalid_argument("consistency_kl_loss: shape mismatch");
  }
  if (!sharpened_targets.allFinite() || !probs_augmented.allFinite()) {
    throw std::invalid_argument("consistency_kl_loss: non-finite input");
  }
  const Scalar eps = kLogEps;
  const Scalar scale = 1.0 / static_cast<Scalar>(n);
  Eigen::ArrayXXd t = sharpened_targets.array();
  Eigen::ArrayXXd p = probs_augmented.array();
  const Scalar value = (t * (t.max(eps).log() - p.max(eps).log())).sum() * scale;
  if (dprobs_augmented != nullptr) {
    if (dprobs_augmented->size() == 0) {
      dprobs_augmented->setZero(probs_augmented.rows(), n);
    }
    dprobs_augmented->array() -= scale * (p > eps).cast<Scalar>() * t / p.max(eps);
  }
  return value;
}

Scalar cross_entropy_sum(const std::vector<int>& labels, const Eigen::Ref<const Matrix>& probs,
                         Matrix* dprobs, Scalar coeff) {
  const Index n = probs.cols();
  const Index k = probs.rows();
  if (static_cast<Index>(labels.size()) != n) {
    throw std::invalid_argument("cross_entropy_sum: label count mismatch");
  }
  if (!probs.allFinite()) throw std::invalid_argument("cross_entropy_sum: non-finite input");
  if (dprobs != nullptr && dprobs->size() == 0) dprobs->setZero(k, n);
  const Scalar eps = kLogEps;
  Scalar sum = 0.0;
  for (Index i = 0; i < n; ++i) {
    const int y = labels[static_cast<std::size_t>(i)];
    if (y < 0 || y >= k) throw std::invalid_argument("cross_entropy_sum: label out of range");
    const Scalar p = probs(y, i);
    sum -= clamped_log(p);
    if (dprobs != nullptr && p > eps) (*dprobs)(y, i) -= coeff / p;
  }
  return coeff * sum;
}

Scalar label_consistency_loss(const std::vector<int>& pseudo_labels,
                              const Eigen::Ref<const Matrix>& probs_augmented,
                              Matrix* dprobs_augmented) {
  if (probs_augmented.cols() == 0) {
    warn("label_consistency_loss: empty pseudo batch, loss contributes zero");
    return 0.0;
  }
  return cross_entropy_sum(pseudo_labels, probs_augmented, dprobs_augmented,
                           1.0 / static_cast<Scalar>(probs_augmented.cols()));
}

Scalar supervised_ce(const std::vector<int>& labels, const Eigen::Ref<const Matrix>& probs,
                     Matrix* dprobs) {
  if (probs.cols() == 0) throw std::invalid_argument("supervised_ce: empty labeled batch");
  return cross_entropy_sum(labels, probs, dprobs, 1.0 / static_cast<Scalar>(probs.cols()));
}

Scalar overall_loss(Scalar ce, Scalar lab, Scalar con, Scalar abc, const LossWeights& weights) {
  weights.validate();
  const struct {
    const char* name;
    Scalar value;
  } components[] = {{"ce", ce}, {"lab", lab}, {"con", con}, {"abc", abc}};
  for (const auto& c : components) {
    if (!std::isfinite(c.value)) {
      throw NumericError(std::string("overall_loss: non-finite component ") + c.name);
    }
  }
  return ce + lab + weights.alpha * con + weights.beta * abc;
}

LossBreakdown make_breakdown(Scalar ce, Scalar lab, Scalar con, Scalar wdbc, Scalar adbc,
                             const LossWeights& weights) {
  LossBreakdown b;
  b.ce = ce;
  b.lab = lab;
  b.con = con;
  b.wdbc = wdbc;
  b.adbc = adbc;
  b.abc = wdbc + adbc;
  b.overall = overall_loss(ce, lab, con, b.abc, weights);
  return b;
}

}  // namespace gabc
