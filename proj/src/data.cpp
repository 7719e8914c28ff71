#include "gabc/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "gabc/rng.hpp"

namespace gabc {

namespace {

Matrix class_means(const DomainSpec& spec) {
  Matrix means = Matrix::Zero(spec.dim, spec.num_classes);
  for (Index k = 0; k < spec.num_classes; ++k) {
    const Scalar angle = 2.0 * std::numbers::pi * static_cast<Scalar>(k) /
                         static_cast<Scalar>(spec.num_classes);
    means(0, k) = spec.class_radius * std::cos(angle);
    if (spec.dim > 1) means(1, k) = spec.class_radius * std::sin(angle);
  }
  return means;
}

// Target-domain map: rotate the first two coordinates, then scale, then translate.
Vector shift_to_target(const DomainSpec& spec, const Vector& x) {
  Vector y = x;
  if (spec.dim > 1) {
    const Scalar theta = spec.rotation_deg * std::numbers::pi / 180.0;
    const Scalar c = std::cos(theta);
    const Scalar s = std::sin(theta);
    const Scalar x0 = x(0);
    const Scalar x1 = x(1);
    y(0) = c * x0 - s * x1;
    y(1) = s * x0 + c * x1;
  }
  y *= spec.scale;
  y(0) += spec.translation_x;
  if (spec.dim > 1) y(1) += spec.translation_y;
  return y;
}

// Balanced labels (i mod K), Gaussian blobs around the class means.
void sample_pool(const DomainSpec& spec, Index count, Scalar stddev, bool target,
                 std::mt19937_64& rng, Matrix& samples, std::vector<int>& labels) {
  const Matrix means = class_means(spec);
  std::normal_distribution<Scalar> noise(0.0, 1.0);
  samples.resize(spec.dim, count);
  labels.resize(static_cast<std::size_t>(count));
  for (Index i = 0; i < count; ++i) {
    const Index k = i % spec.num_classes;
    Vector x = means.col(k);
    for (Index d = 0; d < spec.dim; ++d) x(d) += stddev * noise(rng);
    if (target) x = shift_to_target(spec, x);
    samples.col(i) = x;
    labels[static_cast<std::size_t>(i)] = static_cast<int>(k);
  }
}

std::vector<Index> shuffled_indices(Index count, std::mt19937_64& rng) {
  std::vector<Index> order(static_cast<std::size_t>(count));
  for (Index i = 0; i < count; ++i) order[static_cast<std::size_t>(i)] = i;
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

}  // namespace

void DomainSpec::validate() const {
  if (num_classes < 2) throw ConfigError("data: num_classes must be >= 2");
  if (dim < 1) throw ConfigError("data: dim must be >= 1");
  if (source_size < 1) throw ConfigError("data: source_size must be >= 1");
  if (target_size < 1) throw ConfigError("data: target_size must be >= 1");
  if (shots < 1) throw ConfigError("data: shots must be >= 1");
  if (test_size < 0) throw ConfigError("data: test_size must be >= 0");
  if (!(class_radius > 0.0)) throw ConfigError("data: class_radius must be > 0");
  if (!(source_stddev >= 0.0) || !(target_stddev >= 0.0)) {
    throw ConfigError("data: stddev must be >= 0");
  }
  if (!(scale > 0.0)) throw ConfigError("data: scale must be > 0");
  // Balanced generation gives floor(target_size / K) samples to every class.
  const Index per_class = target_size / num_classes;
  if (per_class < shots) {
    throw ConfigError("data: shots exceed per-class target samples");
  }
  if (shots * num_classes + test_size >= target_size) {
    throw ConfigError("data: labeled + test split leaves no unlabeled target samples");
  }
}

SplitDataset generate(const DomainSpec& spec, std::uint64_t seed) {
  spec.validate();
  SplitDataset data;

  auto source_rng = make_rng(seed, 0x736f757263ull);
  sample_pool(spec, spec.source_size, spec.source_stddev, false, source_rng,
              data.source.samples, data.source.labels);

  Matrix pool;
  std::vector<int> pool_labels;
  auto target_rng = make_rng(seed, 0x746172676574ull);
  sample_pool(spec, spec.target_size, spec.target_stddev, true, target_rng, pool, pool_labels);

  auto split_rng = make_rng(seed, 0x73706c6974ull);
  const std::vector<Index> order = shuffled_indices(spec.target_size, split_rng);

  std::vector<Index> labeled_idx;
  std::vector<Index> rest;
  std::vector<Index> taken(static_cast<std::size_t>(spec.num_classes), 0);
  for (Index i : order) {
    const int y = pool_labels[static_cast<std::size_t>(i)];
    if (taken[static_cast<std::size_t>(y)] < spec.shots) {
      ++taken[static_cast<std::size_t>(y)];
      labeled_idx.push_back(i);
    } else {
      rest.push_back(i);
    }
  }
  const std::vector<Index> test_idx(rest.begin(), rest.begin() + spec.test_size);
  const std::vector<Index> unlabeled_idx(rest.begin() + spec.test_size, rest.end());

  auto gather = [&](const std::vector<Index>& idx, Matrix& samples, std::vector<int>& labels) {
    samples.resize(spec.dim, static_cast<Index>(idx.size()));
    labels.resize(idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) {
      samples.col(static_cast<Index>(j)) = pool.col(idx[j]);
      labels[j] = pool_labels[static_cast<std::size_t>(idx[j])];
    }
  };
  gather(labeled_idx, data.labeled_target.samples, data.labeled_target.labels);
  gather(test_idx, data.test.samples, data.test.labels);
  gather(unlabeled_idx, data.unlabeled_target.samples, data.unlabeled_target.eval_labels);
  return data;
}

void AugmentParams::validate() const {
  if (!(noise_stddev >= 0.0)) throw ConfigError("augment: noise_stddev must be >= 0");
  if (!(erase_prob >= 0.0 && erase_prob <= 1.0)) {
    throw ConfigError("augment: erase_prob must lie in [0, 1]");
  }
}

Vector augment(const Eigen::Ref<const Vector>& x, const AugmentParams& params,
               std::mt19937_64& rng) {
  params.validate();
  std::normal_distribution<Scalar> noise(0.0, 1.0);
  std::uniform_real_distribution<Scalar> unit(0.0, 1.0);
  Vector y = x;
  for (Index d = 0; d < y.size(); ++d) y(d) += params.noise_stddev * noise(rng);
  for (Index d = 0; d < y.size(); ++d) {
    if (unit(rng) < params.erase_prob) y(d) = 0.0;
  }
  return y;
}

Matrix augment_columns(const Eigen::Ref<const Matrix>& samples, const AugmentParams& params,
                       std::mt19937_64& rng) {
  Matrix out(samples.rows(), samples.cols());
  for (Index j = 0; j < samples.cols(); ++j) {
    out.col(j) = augment(samples.col(j), params, rng);
  }
  return out;
}

namespace {

const char* kSplitNames[] = {"source", "labeled_target", "unlabeled_target", "test"};

void write_split(std::ostream& out, const char* tag, const Matrix& samples,
                 const std::vector<int>* labels) {
  for (Index j = 0; j < samples.cols(); ++j) {
    out << tag << ',';
    if (labels != nullptr && !labels->empty()) {
      out << (*labels)[static_cast<std::size_t>(j)];
    } else {
      out << -1;
    }
    for (Index i = 0; i < samples.rows(); ++i) out << ',' << samples(i, j);
    out << '\n';
  }
}

}  // namespace

void write_dataset_csv(const std::string& path, const SplitDataset& data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_dataset_csv: cannot open " + path);
  out.precision(17);
  out << "split,label";
  for (Index d = 0; d < data.dim(); ++d) out << ",f" << d;
  out << '\n';
  write_split(out, kSplitNames[0], data.source.samples, &data.source.labels);
  write_split(out, kSplitNames[1], data.labeled_target.samples, &data.labeled_target.labels);
  write_split(out, kSplitNames[2], data.unlabeled_target.samples,
              &data.unlabeled_target.eval_labels);
  write_split(out, kSplitNames[3], data.test.samples, &data.test.labels);
  if (!out) throw std::runtime_error("write_dataset_csv: write failed for " + path);
}

SplitDataset read_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_dataset_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("read_dataset_csv: empty file " + path);

  struct Rows {
    std::vector<Vector> samples;
    std::vector<int> labels;
  };
  Rows rows[4];
  Index dim = -1;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::getline(ss, field, ',');
    int split = -1;
    for (int s = 0; s < 4; ++s) {
      if (field == kSplitNames[s]) split = s;
    }
    if (split < 0) {
      throw ConfigError("read_dataset_csv: unknown split '" + field + "' at line " +
                        std::to_string(line_no));
    }
    std::getline(ss, field, ',');
    const int label = std::stoi(field);
    std::vector<Scalar> values;
    while (std::getline(ss, field, ',')) values.push_back(std::stod(field));
    if (dim < 0) dim = static_cast<Index>(values.size());
    if (static_cast<Index>(values.size()) != dim || dim == 0) {
      throw ConfigError("read_dataset_csv: inconsistent feature count at line " +
                        std::to_string(line_no));
    }
    Vector x(dim);
    for (Index d = 0; d < dim; ++d) x(d) = values[static_cast<std::size_t>(d)];
    rows[split].samples.push_back(std::move(x));
    rows[split].labels.push_back(label);
  }

  auto to_matrix = [&](const Rows& r) {
    Matrix m(dim, static_cast<Index>(r.samples.size()));
    for (std::size_t j = 0; j < r.samples.size(); ++j) {
      m.col(static_cast<Index>(j)) = r.samples[j];
    }
    return m;
  };

  SplitDataset data;
  data.source.samples = to_matrix(rows[0]);
  data.source.labels = rows[0].labels;
  data.labeled_target.samples = to_matrix(rows[1]);
  data.labeled_target.labels = rows[1].labels;
  data.unlabeled_target.samples = to_matrix(rows[2]);
  data.unlabeled_target.eval_labels = rows[2].labels;
  const bool any_eval = std::any_of(rows[2].labels.begin(), rows[2].labels.end(),
                                    [](int y) { return y >= 0; });
  if (!any_eval) data.unlabeled_target.eval_labels.clear();
  data.test.samples = to_matrix(rows[3]);
  data.test.labels = rows[3].labels;
  for (int y : data.source.labels) {
    if (y < 0) throw ConfigError("read_dataset_csv: source rows must be labeled");
  }
  return data;
}

}  // namespace gabc
