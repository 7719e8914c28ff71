#include "gabc/checkpoint.hpp"

#include <fstream>

#include <json.hpp>

namespace gabc {

namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  std::vector<Scalar> flat(static_cast<std::size_t>(m.size()));
  Eigen::Map<Matrix>(flat.data(), m.rows(), m.cols()) = m;
  j["data"] = flat;  // column-major
  return j;
}

Matrix matrix_from_json(const json& j) {
  const Index rows = j.at("rows").get<Index>();
  const Index cols = j.at("cols").get<Index>();
  const auto flat = j.at("data").get<std::vector<Scalar>>();
  if (static_cast<Index>(flat.size()) != rows * cols) {
    throw ConfigError("checkpoint: matrix payload size mismatch");
  }
  return Eigen::Map<const Matrix>(flat.data(), rows, cols);
}

json vector_to_json(const Vector& v) {
  return json(std::vector<Scalar>(v.data(), v.data() + v.size()));
}

Vector vector_from_json(const json& j) {
  const auto flat = j.get<std::vector<Scalar>>();
  return Eigen::Map<const Vector>(flat.data(), static_cast<Index>(flat.size()));
}

}  // namespace

void save_checkpoint(const std::string& path, const Checkpoint& checkpoint) {
  json j;
  j["format"] = "gabc.checkpoint";
  j["version"] = Checkpoint::kVersion;
  j["seed"] = checkpoint.seed;
  j["epochs_completed"] = checkpoint.epochs_completed;
  j["global_iteration"] = checkpoint.global_iteration;

  json model;
  model["temperature"] = checkpoint.params.temperature;
  model["w1"] = matrix_to_json(checkpoint.params.w1);
  model["b1"] = vector_to_json(checkpoint.params.b1);
  model["w2"] = matrix_to_json(checkpoint.params.w2);
  model["b2"] = vector_to_json(checkpoint.params.b2);
  model["prototypes"] = matrix_to_json(checkpoint.params.prototypes);
  j["model"] = model;

  json velocity;
  velocity["w1"] = matrix_to_json(checkpoint.velocity.w1);
  velocity["b1"] = vector_to_json(checkpoint.velocity.b1);
  velocity["w2"] = matrix_to_json(checkpoint.velocity.w2);
  velocity["b2"] = vector_to_json(checkpoint.velocity.b2);
  velocity["prototypes"] = matrix_to_json(checkpoint.velocity.prototypes);
  j["velocity"] = velocity;

  json pseudo;
  pseudo["indices"] = checkpoint.pseudo.indices;
  pseudo["labels"] = checkpoint.pseudo.labels;
  pseudo["confidences"] = checkpoint.pseudo.confidences;
  j["pseudo"] = pseudo;

  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_checkpoint: cannot open " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("save_checkpoint: write failed for " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_checkpoint: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("load_checkpoint: malformed JSON in " + path + ": " + e.what());
  }
  if (j.value("format", "") != "gabc.checkpoint") {
    throw ConfigError("load_checkpoint: not a checkpoint file: " + path);
  }
  if (j.at("version").get<int>() != Checkpoint::kVersion) {
    throw ConfigError("load_checkpoint: unsupported version " +
                      std::to_string(j.at("version").get<int>()));
  }

  Checkpoint c;
  c.seed = j.at("seed").get<std::uint64_t>();
  c.epochs_completed = j.at("epochs_completed").get<Index>();
  c.global_iteration = j.at("global_iteration").get<Index>();

  const json& model = j.at("model");
  c.params.temperature = model.at("temperature").get<Scalar>();
  c.params.w1 = matrix_from_json(model.at("w1"));
  c.params.b1 = vector_from_json(model.at("b1"));
  c.params.w2 = matrix_from_json(model.at("w2"));
  c.params.b2 = vector_from_json(model.at("b2"));
  c.params.prototypes = matrix_from_json(model.at("prototypes"));

  const json& velocity = j.at("velocity");
  c.velocity.w1 = matrix_from_json(velocity.at("w1"));
  c.velocity.b1 = vector_from_json(velocity.at("b1"));
  c.velocity.w2 = matrix_from_json(velocity.at("w2"));
  c.velocity.b2 = vector_from_json(velocity.at("b2"));
  c.velocity.prototypes = matrix_from_json(velocity.at("prototypes"));

  const json& pseudo = j.at("pseudo");
  c.pseudo.indices = pseudo.at("indices").get<std::vector<Index>>();
  c.pseudo.labels = pseudo.at("labels").get<std::vector<int>>();
  c.pseudo.confidences = pseudo.at("confidences").get<std::vector<Scalar>>();
  return c;
}

}  // namespace gabc
