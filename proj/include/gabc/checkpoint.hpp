#pragma once

#include <cstdint>
#include <string>

#include "gabc/model.hpp"
#include "gabc/pseudo_labels.hpp"
#include "gabc/types.hpp"

namespace gabc {

// Versioned, self-describing training snapshot. Besides the model it carries
// the optimizer momentum buffer, the training position and the standing
// pseudo-labeled set, which together make an interrupted run resumable with a
// trajectory identical to the uninterrupted one.
struct Checkpoint {
  static constexpr int kVersion = 1;

  ModelParams params;
  ModelGrad velocity;
  PseudoLabeledSet pseudo;
  std::uint64_t seed = 0;
  Index epochs_completed = 0;
  Index global_iteration = 0;
};

void save_checkpoint(const std::string& path, const Checkpoint& checkpoint);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace gabc
