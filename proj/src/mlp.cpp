#include "semnet/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "semnet/error.hpp"
#include "semnet/random.hpp"

namespace semnet {

std::size_t MlpModel::parameter_count() const {
  std::size_t total = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) total += weights[l].size() + biases[l].size();
  return total;
}

void MlpModel::validate() const {
  if (dims.size() < 2) throw Error("model needs at least an input and an output layer");
  if (dims.back() != 1) throw Error("model output must be scalar");
  if (weights.size() != dims.size() - 1 || biases.size() != dims.size() - 1) throw Error("model layer count mismatch");
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    if (dims[l] <= 0 || dims[l + 1] <= 0) throw Error("model layer widths must be positive");
    if (weights[l].size() != static_cast<std::size_t>(dims[l + 1]) * dims[l]) {
      throw Error(fmt::format("weight {} has {} entries, expected {}x{}", l, weights[l].size(), dims[l + 1], dims[l]));
    }
    if (biases[l].size() != static_cast<std::size_t>(dims[l + 1])) throw Error(fmt::format("bias {} size mismatch", l));
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(weights[l].begin(), weights[l].end(), finite) ||
        !std::all_of(biases[l].begin(), biases[l].end(), finite)) {
      throw Error(fmt::format("layer {} has non-finite parameters", l));
    }
  }
}

MlpModel zero_model(std::vector<int> dims) {
  MlpModel m;
  m.dims = std::move(dims);
  for (std::size_t l = 0; l + 1 < m.dims.size(); ++l) {
    m.weights.emplace_back(static_cast<std::size_t>(m.dims[l + 1]) * m.dims[l], 0.0);
    m.biases.emplace_back(m.dims[l + 1], 0.0);
  }
  m.validate();
  return m;
}

MlpModel init_model(std::vector<int> dims, std::uint64_t seed) {
  MlpModel m = zero_model(std::move(dims));
  m.seed = seed;
  Rng rng(seed);
  for (std::size_t l = 0; l < m.weights.size(); ++l) {
    const double limit = std::sqrt(6.0 / (m.dims[l] + m.dims[l + 1]));
    for (auto& w : m.weights[l]) w = rng.uniform(-limit, limit);
  }
  return m;
}

namespace {

// Pre-activations per layer; activations[0] is the input.
struct Trace {
  std::vector<std::vector<double>> pre;
  std::vector<std::vector<double>> act;
};

Trace run(const MlpModel& m, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(m.dims.front())) {
    throw Error(fmt::format("model expects {} inputs, got {}", m.dims.front(), x.size()));
  }
  Trace t;
  t.act.emplace_back(x.begin(), x.end());
  const int layers = m.layer_count();
  for (int l = 0; l < layers; ++l) {
    const int in = m.dims[l];
    const int out = m.dims[l + 1];
    const auto& prev = t.act.back();
    std::vector<double> z(out);
    for (int r = 0; r < out; ++r) {
      double acc = m.biases[l][r];
      const double* row = m.weights[l].data() + static_cast<std::size_t>(r) * in;
      for (int c = 0; c < in; ++c) acc += row[c] * prev[c];
      z[r] = acc;
    }
    std::vector<double> a(out);
    const bool last = l + 1 == layers;
    for (int r = 0; r < out; ++r) a[r] = last ? std::tanh(z[r]) : std::max(0.0, z[r]);
    t.pre.push_back(std::move(z));
    t.act.push_back(std::move(a));
  }
  return t;
}

}  // namespace

double mlp_forward(const MlpModel& model, std::span<const double> x) { return run(model, x).act.back()[0]; }

Gradients::Gradients(const MlpModel& shape) {
  for (std::size_t l = 0; l < shape.weights.size(); ++l) {
    weights.emplace_back(shape.weights[l].size(), 0.0);
    biases.emplace_back(shape.biases[l].size(), 0.0);
  }
}

void Gradients::zero() {
  for (auto& w : weights) std::fill(w.begin(), w.end(), 0.0);
  for (auto& b : biases) std::fill(b.begin(), b.end(), 0.0);
}

double accumulate_gradient(const MlpModel& model, std::span<const double> x, double target, double scale,
                           Gradients& grads) {
  const Trace t = run(model, x);
  const int layers = model.layer_count();
  const double y = t.act.back()[0];
  // dLoss/dz at the output through tanh.
  std::vector<double> delta{scale * 2.0 * (y - target) * (1.0 - y * y)};
  for (int l = layers - 1; l >= 0; --l) {
    const int in = model.dims[l];
    const int out = model.dims[l + 1];
    const auto& prev = t.act[l];
    for (int r = 0; r < out; ++r) {
      grads.biases[l][r] += delta[r];
      double* grow = grads.weights[l].data() + static_cast<std::size_t>(r) * in;
      for (int c = 0; c < in; ++c) grow[c] += delta[r] * prev[c];
    }
    if (l == 0) break;
    std::vector<double> next(in, 0.0);
    for (int r = 0; r < out; ++r) {
      const double* row = model.weights[l].data() + static_cast<std::size_t>(r) * in;
      for (int c = 0; c < in; ++c) next[c] += row[c] * delta[r];
    }
    const auto& z = t.pre[l - 1];
    for (int c = 0; c < in; ++c) next[c] = z[c] > 0.0 ? next[c] : 0.0;
    delta = std::move(next);
  }
  return y;
}

double gradient_check(const MlpModel& model, std::span<const double> x, double label, double epsilon) {
  if (!(epsilon >= 1e-7 && epsilon <= 1e-4)) throw Error("gradient check epsilon must lie in [1e-7, 1e-4]");
  Gradients analytic(model);
  accumulate_gradient(model, x, label, 1.0, analytic);

  MlpModel probe = model;
  auto loss = [&] {
    const double d = mlp_forward(probe, x) - label;
    return d * d;
  };
  double worst = 0.0;
  auto check = [&](double& param, double a) {
    const double saved = param;
    param = saved + epsilon;
    const double up = loss();
    param = saved - epsilon;
    const double down = loss();
    param = saved;
    const double numeric = (up - down) / (2.0 * epsilon);
    const double diff = std::abs(a - numeric);
    const double scale = std::max(std::abs(a), std::abs(numeric));
    if (diff < 1e-11 || scale == 0.0) return;
    worst = std::max(worst, diff / scale);
  };
  for (std::size_t l = 0; l < probe.weights.size(); ++l) {
    for (std::size_t k = 0; k < probe.weights[l].size(); ++k) check(probe.weights[l][k], analytic.weights[l][k]);
    for (std::size_t k = 0; k < probe.biases[l].size(); ++k) check(probe.biases[l][k], analytic.biases[l][k]);
  }
  return worst;
}

nlohmann::ordered_json model_to_json(const MlpModel& model) {
  nlohmann::ordered_json j;
  j["format"] = "semnet-mlp";
  j["version"] = 1;
  j["layer_dims"] = model.dims;
  j["hidden_activation"] = "relu";
  j["output_activation"] = "tanh";
  j["weights"] = model.weights;
  j["biases"] = model.biases;
  j["seed"] = model.seed;
  j["training"] = model.training;
  return j;
}

MlpModel model_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format") != "semnet-mlp") throw Error("not a semnet-mlp model");
    if (j.at("version") != 1) throw Error(fmt::format("unsupported model version {}", j.at("version").dump()));
    if (j.at("hidden_activation") != "relu" || j.at("output_activation") != "tanh") {
      throw Error("unsupported activation functions");
    }
    MlpModel m;
    m.dims = j.at("layer_dims").get<std::vector<int>>();
    m.weights = j.at("weights").get<std::vector<std::vector<double>>>();
    m.biases = j.at("biases").get<std::vector<std::vector<double>>>();
    m.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("training")) m.training = j.at("training");
    m.validate();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(fmt::format("malformed model: {}", e.what()));
  }
}

MlpModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open model file '{}'", path.string()));
  try {
    return model_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(fmt::format("{}: {}", path.string(), e.what()));
  }
}

}  // namespace semnet
