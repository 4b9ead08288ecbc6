#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace semnet {

// Fully connected network: ReLU on hidden layers, tanh on the scalar output.
// weights[l] is dims[l+1] x dims[l], row-major.
struct MlpModel {
  std::vector<int> dims;
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;
  std::uint64_t seed = 0;
  nlohmann::ordered_json training = nlohmann::ordered_json::object();

  int layer_count() const { return static_cast<int>(dims.size()) - 1; }
  std::size_t parameter_count() const;
  // Throws Error on a broken shape chain or non-finite parameter.
  void validate() const;

  bool operator==(const MlpModel& other) const {
    return dims == other.dims && weights == other.weights && biases == other.biases && seed == other.seed;
  }
};

// Uniform in +-sqrt(6 / (fan_in + fan_out)), zero biases.
MlpModel init_model(std::vector<int> dims, std::uint64_t seed);
MlpModel zero_model(std::vector<int> dims);

double mlp_forward(const MlpModel& model, std::span<const double> x);

struct Gradients {
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;

  explicit Gradients(const MlpModel& shape);
  void zero();
};

// Adds scale * d/dtheta (f(x) - target)^2 into `grads`; returns f(x).
double accumulate_gradient(const MlpModel& model, std::span<const double> x, double target, double scale,
                           Gradients& grads);

// Worst relative error between the analytic gradient of (f(x) - label)^2 and
// central finite differences over every parameter. Relative error is
// |a - n| / max(|a|, |n|), taken as 0 when both vanish; absolute differences
// below 1e-11 are treated as agreement.
double gradient_check(const MlpModel& model, std::span<const double> x, double label, double epsilon);

nlohmann::ordered_json model_to_json(const MlpModel& model);
MlpModel model_from_json(const nlohmann::json& j);
MlpModel load_model(const std::filesystem::path& path);

}  // namespace semnet
