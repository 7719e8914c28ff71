#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <string>

#include "gabc/types.hpp"

namespace gabc {

// Floor for every log argument; keeps one-hot dot products (exactly 0 or 1)
// finite in the pairwise and cross-entropy losses.
inline constexpr Scalar kLogEps = 1e-7;

// Tolerance used when checking that a vector lies on the probability simplex.
inline constexpr Scalar kSimplexTol = 1e-6;

template <typename T>
inline T clamped_log(T x, T eps = T(kLogEps)) {
  return std::log(x < eps ? eps : x);
}

template <typename Derived>
bool is_distribution(const Eigen::MatrixBase<Derived>& p,
                     typename Derived::Scalar tol = kSimplexTol) {
  using T = typename Derived::Scalar;
  if (p.size() == 0 || !p.allFinite()) return false;
  if ((p.array() < T(0)).any()) return false;
  return std::abs(p.sum() - T(1)) <= tol;
}

template <typename Derived>
void require_distribution(const Eigen::MatrixBase<Derived>& p, const char* what) {
  if (!is_distribution(p)) {
    throw std::invalid_argument(std::string(what) + ": not a probability distribution");
  }
}

// Numerically stable softmax.
template <typename Derived>
Vec<typename Derived::Scalar> softmax(const Eigen::MatrixBase<Derived>& logits) {
  using T = typename Derived::Scalar;
  Vec<T> z = logits;
  Vec<T> e = (z.array() - z.maxCoeff()).exp();
  return e / e.sum();
}

// argmax with ties broken toward the lowest index.
template <typename Derived>
Index argmax_lowest(const Eigen::MatrixBase<Derived>& v) {
  if (v.size() == 0) throw std::invalid_argument("argmax_lowest: empty vector");
  Index best = 0;
  for (Index i = 1; i < v.size(); ++i) {
    if (v(i) > v(best)) best = i;
  }
  return best;
}

// Entropy sharpening: entries raised to 1/t_prime and renormalized.
// t_prime in (0, 1]; t_prime = 1 leaves the distribution unchanged and the
// argmax is preserved for every t_prime.
template <typename Derived>
Vec<typename Derived::Scalar> sharpen(const Eigen::MatrixBase<Derived>& p,
                                      typename Derived::Scalar t_prime) {
  using T = typename Derived::Scalar;
  if (!(t_prime > T(0)) || t_prime > T(1)) {
    throw std::invalid_argument("sharpen: t_prime must lie in (0, 1]");
  }
  require_distribution(p, "sharpen");
  Vec<T> w = p.array().pow(T(1) / t_prime);
  return w / w.sum();
}

// Column-wise sharpening of a K x n matrix of distributions.
template <typename Derived>
Mat<typename Derived::Scalar> sharpen_columns(const Eigen::MatrixBase<Derived>& probs,
                                              typename Derived::Scalar t_prime) {
  Mat<typename Derived::Scalar> out(probs.rows(), probs.cols());
  for (Index j = 0; j < probs.cols(); ++j) {
    out.col(j) = sharpen(probs.col(j), t_prime);
  }
  return out;
}

}  // namespace gabc
