#pragma once

#include <Eigen/Core>

#include <iostream>
#include <stdexcept>
#include <string>

// Dense-type conventions used across the library:
//   - samples are COLUMNS of a Matrix (d x n),
//   - prediction distributions are columns of a K x n matrix,
//   - everything is double precision.

namespace gabc {

using Index = Eigen::Index;

template <typename T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <typename T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

using Scalar = double;
using Vector = Vec<Scalar>;
using Matrix = Mat<Scalar>;

// A computation degenerated numerically (zero feature norm, non-finite
// logits or loss). The message names the offending quantity/index.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed configuration or infeasible data spec.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

inline void warn(const std::string& message) {
  std::cerr << "[gabc] warning: " << message << '\n';
}

}  // namespace gabc
