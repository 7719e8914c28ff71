#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gabc/types.hpp"

namespace gabc {

struct LabeledSet {
  Matrix samples;           // d x n
  std::vector<int> labels;  // n, values in [0, K)

  Index size() const { return samples.cols(); }
};

struct UnlabeledSet {
  Matrix samples;                // d x n
  std::vector<int> eval_labels;  // held out, used only for evaluation grouping;
                                 // empty when unknown (externally injected data)

  Index size() const { return samples.cols(); }
};

// Synthetic domain-shift benchmark: K Gaussian blobs with means on a circle
// in the first two coordinates; the target domain is the source distribution
// rotated / scaled / translated, with its own spread.
struct DomainSpec {
  Index num_classes = 5;
  Index dim = 2;
  Scalar class_radius = 3.0;
  Scalar source_stddev = 0.6;
  Scalar target_stddev = 0.6;
  Scalar rotation_deg = 35.0;
  Scalar translation_x = 0.0;
  Scalar translation_y = 0.0;
  Scalar scale = 1.0;
  Index source_size = 500;
  Index target_size = 500;  // partitioned disjointly into labeled / unlabeled / test
  Index shots = 3;          // labeled target samples per class
  Index test_size = 300;

  void validate() const;
};

struct SplitDataset {
  LabeledSet source;            // D_s
  LabeledSet labeled_target;    // D_l
  UnlabeledSet unlabeled_target;  // D_u (eval labels retained for evaluation only)
  LabeledSet test;              // held-out target test set

  Index dim() const { return source.samples.rows(); }
};

// Deterministic in (spec, seed). The target pool is partitioned disjointly:
// exactly `shots` per class into D_l, then `test_size` into the test split,
// the remainder into D_u.
SplitDataset generate(const DomainSpec& spec, std::uint64_t seed);

struct AugmentParams {
  Scalar noise_stddev = 0.3;  // additive Gaussian feature noise
  Scalar erase_prob = 0.05;   // per-coordinate zeroing probability

  void validate() const;
};

// Additive Gaussian noise followed by random coordinate erasure; a pure
// function of (x, params, rng state).
Vector augment(const Eigen::Ref<const Vector>& x, const AugmentParams& params,
               std::mt19937_64& rng);
Matrix augment_columns(const Eigen::Ref<const Matrix>& samples, const AugmentParams& params,
                       std::mt19937_64& rng);

// CSV pool dump/load: one row per sample, "split,label,f0,f1,...". Unlabeled
// rows carry their evaluation label when known, -1 otherwise.
void write_dataset_csv(const std::string& path, const SplitDataset& data);
SplitDataset read_dataset_csv(const std::string& path);

}  // namespace gabc
