#include "semnet/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "semnet/error.hpp"
#include "semnet/parallel.hpp"
#include "semnet/random.hpp"

namespace semnet {

std::vector<LabeledExample> build_training_set(const TemporalNetwork& net, int year,
                                               const TrainingSetOptions& options) {
  if (options.horizon < 1) throw Error("horizon must be at least 1");
  if (year + options.horizon > net.last_year()) {
    throw Error(fmt::format("year {} + horizon {} is past the last data year {}", year, options.horizon,
                            net.last_year()));
  }
  if (options.neg_ratio < 1.0) throw Error("negative:positive ratio must be at least 1");

  const FeatureExtractor extractor(net, year, options.features);
  const Snapshot future = snapshot(net, year + options.horizon);

  std::vector<ConceptPair> positives;
  std::vector<ConceptPair> negatives;
  for (const auto& pr : extractor.unconnected_pairs()) {
    if (options.max_cosine && !(cosine_similarity(extractor.snapshot(), pr.first, pr.second) < *options.max_cosine)) {
      continue;
    }
    (future.connected(pr.first, pr.second) ? positives : negatives).push_back(pr);
  }
  if (positives.empty()) {
    throw Error(fmt::format("no pair unconnected in {} becomes connected by {}; pick another year or a denser "
                            "synthetic config",
                            year, year + options.horizon));
  }

  const auto wanted = static_cast<std::size_t>(std::floor(options.neg_ratio * positives.size()));
  if (negatives.size() > wanted) {
    Rng rng(options.seed);
    // Partial Fisher-Yates: the first `wanted` slots become the sample.
    for (std::size_t k = 0; k < wanted; ++k) {
      std::swap(negatives[k], negatives[k + rng.below(negatives.size() - k)]);
    }
    negatives.resize(wanted);
  }

  std::vector<std::pair<ConceptPair, double>> chosen;
  for (const auto& p : positives) chosen.emplace_back(p, 1.0);
  for (const auto& p : negatives) chosen.emplace_back(p, -1.0);
  std::sort(chosen.begin(), chosen.end());

  std::vector<ConceptPair> pairs;
  for (const auto& c : chosen) pairs.push_back(c.first);
  const auto vectors = extractor.compute_all(pairs);
  std::vector<LabeledExample> out;
  out.reserve(chosen.size());
  for (std::size_t k = 0; k < chosen.size(); ++k) out.push_back({vectors[k], chosen[k].second});
  return out;
}

void TrainConfig::validate() const {
  if (h1 <= 0 || h2 <= 0) throw Error("hidden widths must be positive");
  if (!(learning_rate > 0)) throw Error("learning rate must be positive");
  if (batch_size <= 0 || epochs <= 0) throw Error("batch size and epochs must be positive");
  if (neg_ratio < 1.0) throw Error("negative:positive ratio must be at least 1");
}

namespace {

struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;
};

Standardizer fit_standardizer(std::span<const LabeledExample> data) {
  Standardizer s{std::vector<double>(kFeatureCount, 0.0), std::vector<double>(kFeatureCount, 1.0)};
  const double n = static_cast<double>(data.size());
  for (const auto& ex : data) {
    for (int d = 0; d < kFeatureCount; ++d) s.mean[d] += ex.features.p[d];
  }
  for (auto& m : s.mean) m /= n;
  std::vector<double> var(kFeatureCount, 0.0);
  for (const auto& ex : data) {
    for (int d = 0; d < kFeatureCount; ++d) {
      const double diff = ex.features.p[d] - s.mean[d];
      var[d] += diff * diff;
    }
  }
  for (int d = 0; d < kFeatureCount; ++d) {
    const double sd = std::sqrt(var[d] / n);
    s.scale[d] = sd > 1e-12 ? sd : 1.0;
  }
  return s;
}

// W1 (x - mean) / scale + b1  ==  (W1 / scale) x + (b1 - W1 mean / scale)
void fold_standardizer(MlpModel& m, const Standardizer& s) {
  const int in = m.dims[0];
  for (int r = 0; r < m.dims[1]; ++r) {
    double shift = 0.0;
    for (int c = 0; c < in; ++c) {
      double& w = m.weights[0][static_cast<std::size_t>(r) * in + c];
      w /= s.scale[c];
      shift += w * s.mean[c];
    }
    m.biases[0][r] -= shift;
  }
}

class AdamState {
 public:
  explicit AdamState(const MlpModel& m) : first_(m), second_(m) {}

  void step(MlpModel& m, const Gradients& g, double lr) {
    ++t_;
    const double c1 = 1.0 - std::pow(kBeta1, t_);
    const double c2 = 1.0 - std::pow(kBeta2, t_);
    auto update = [&](std::vector<double>& param, const std::vector<double>& grad, std::vector<double>& mom,
                      std::vector<double>& vel) {
      for (std::size_t k = 0; k < param.size(); ++k) {
        mom[k] = kBeta1 * mom[k] + (1.0 - kBeta1) * grad[k];
        vel[k] = kBeta2 * vel[k] + (1.0 - kBeta2) * grad[k] * grad[k];
        param[k] -= lr * (mom[k] / c1) / (std::sqrt(vel[k] / c2) + kEps);
      }
    };
    for (std::size_t l = 0; l < m.weights.size(); ++l) {
      update(m.weights[l], g.weights[l], first_.weights[l], second_.weights[l]);
      update(m.biases[l], g.biases[l], first_.biases[l], second_.biases[l]);
    }
  }

 private:
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEps = 1e-8;
  Gradients first_;
  Gradients second_;
  int t_ = 0;
};

void sgd_step(MlpModel& m, const Gradients& g, double lr) {
  for (std::size_t l = 0; l < m.weights.size(); ++l) {
    for (std::size_t k = 0; k < m.weights[l].size(); ++k) m.weights[l][k] -= lr * g.weights[l][k];
    for (std::size_t k = 0; k < m.biases[l].size(); ++k) m.biases[l][k] -= lr * g.biases[l][k];
  }
}

}  // namespace

TrainingResult mlp_train(std::span<const LabeledExample> data, const TrainConfig& cfg) {
  cfg.validate();
  if (data.empty()) throw Error("training data is empty");
  const bool has_pos = std::any_of(data.begin(), data.end(), [](const auto& e) { return e.label > 0; });
  const bool has_neg = std::any_of(data.begin(), data.end(), [](const auto& e) { return e.label < 0; });
  if (!has_pos || !has_neg) throw Error("training data needs both labels");

  Standardizer standardizer{std::vector<double>(kFeatureCount, 0.0), std::vector<double>(kFeatureCount, 1.0)};
  if (cfg.standardize_inputs) standardizer = fit_standardizer(data);
  std::vector<std::array<double, kFeatureCount>> inputs(data.size());
  for (std::size_t k = 0; k < data.size(); ++k) {
    for (int d = 0; d < kFeatureCount; ++d) {
      inputs[k][d] = (data[k].features.p[d] - standardizer.mean[d]) / standardizer.scale[d];
    }
  }

  TrainingResult result;
  result.model = init_model({kFeatureCount, cfg.h1, cfg.h2, 1}, cfg.seed);
  MlpModel& model = result.model;
  Gradients grads(model);
  AdamState adam(model);
  Rng rng(cfg.seed ^ 0x5851f42d4c957f2dULL);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(order);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
      const double scale = 1.0 / static_cast<double>(end - start);
      grads.zero();
      for (std::size_t k = start; k < end; ++k) {
        const auto idx = order[k];
        const double y = accumulate_gradient(model, inputs[idx], data[idx].label, scale, grads);
        const double d = y - data[idx].label;
        epoch_loss += d * d;
      }
      if (cfg.optimizer == Optimizer::adam) {
        adam.step(model, grads, cfg.learning_rate);
      } else {
        sgd_step(model, grads, cfg.learning_rate);
      }
    }
    epoch_loss /= static_cast<double>(data.size());
    if (!std::isfinite(epoch_loss)) {
      throw Error(fmt::format("training diverged at epoch {} (loss is not finite); lower the learning rate "
                              "(currently {})",
                              epoch + 1, cfg.learning_rate));
    }
    result.loss_history.push_back(epoch_loss);
  }

  if (cfg.standardize_inputs) fold_standardizer(model, standardizer);
  model.validate();
  model.training = {{"examples", data.size()},
                    {"epochs", cfg.epochs},
                    {"batch_size", cfg.batch_size},
                    {"learning_rate", cfg.learning_rate},
                    {"optimizer", cfg.optimizer == Optimizer::adam ? "adam" : "sgd"},
                    {"loss", "mse"},
                    {"final_loss", result.loss_history.back()}};
  return result;
}

LinkPredictorFit train_link_predictor(const TemporalNetwork& net, int year, int horizon, const TrainConfig& cfg,
                                      const FeatureOptions& features, std::optional<double> max_cosine) {
  cfg.validate();
  TrainingSetOptions ts;
  ts.horizon = horizon;
  ts.neg_ratio = cfg.neg_ratio;
  ts.seed = cfg.seed;
  ts.max_cosine = max_cosine;
  ts.features = features;
  const auto examples = build_training_set(net, year, ts);
  LinkPredictorFit fit;
  fit.examples = examples.size();
  fit.positives =
      static_cast<std::size_t>(std::count_if(examples.begin(), examples.end(), [](const auto& e) { return e.label > 0; }));
  fit.result = mlp_train(examples, cfg);
  fit.result.model.training["year"] = year;
  fit.result.model.training["horizon"] = horizon;
  fit.result.model.training["positives"] = fit.positives;
  return fit;
}

std::vector<RankedPair> rank_scored(std::vector<RankedPair> scored) {
  std::sort(scored.begin(), scored.end(), [](const RankedPair& a, const RankedPair& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.pair < b.pair;
  });
  return scored;
}

std::vector<RankedPair> predict_and_rank(const MlpModel& model, const FeatureExtractor& extractor,
                                         const CandidateFilter& filter) {
  const auto vectors = extractor.compute_all(extractor.unconnected_pairs());
  std::vector<const PairFeatureVector*> kept;
  for (const auto& v : vectors) {
    if (!filter || filter(v)) kept.push_back(&v);
  }
  std::vector<RankedPair> scored(kept.size());
  parallel_for(kept.size(), extractor.threads(), [&](std::size_t k) {
    scored[k] = {{kept[k]->i, kept[k]->j}, mlp_forward(model, kept[k]->p)};
  });
  return rank_scored(std::move(scored));
}

CandidateFilter parse_filter(const std::string& spec) {
  if (spec.empty() || spec == "all" || spec == "none") return {};
  struct Clause {
    int field;  // 0 = cosine, 1 = mean degree
    double limit;
  };
  std::vector<Clause> clauses;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const auto comma = spec.find(',', start);
    const auto term = spec.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const auto lt = term.find('<');
    if (lt == std::string::npos) throw Error(fmt::format("bad filter term '{}'; expected e.g. cos<0.2", term));
    const auto name = term.substr(0, lt);
    double limit = 0.0;
    try {
      limit = std::stod(term.substr(lt + 1));
    } catch (const std::exception&) {
      throw Error(fmt::format("bad filter threshold in '{}'", term));
    }
    if (name == "cos" || name == "cosS") {
      clauses.push_back({0, limit});
    } else if (name == "deg") {
      clauses.push_back({1, limit});
    } else {
      throw Error(fmt::format("unknown filter field '{}'; use cos or deg", name));
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return [clauses](const PairFeatureVector& v) {
    for (const auto& c : clauses) {
      const double value = c.field == 0 ? v.p[4] : 0.5 * (v.p[0] + v.p[1]);
      if (!(value < c.limit)) return false;
    }
    return true;
  };
}

}  // namespace semnet
