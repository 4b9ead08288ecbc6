#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semnet/features.hpp"
#include "semnet/mlp.hpp"
#include "semnet/network.hpp"

namespace semnet {

struct LabeledExample {
  PairFeatureVector features;
  double label = -1.0;  // +1 when the pair is connected `horizon` years later
};

struct TrainingSetOptions {
  int horizon = 5;
  double neg_ratio = 5.0;
  std::uint64_t seed = 1;
  // Keep only candidates with cosine similarity below this value.
  std::optional<double> max_cosine;
  FeatureOptions features;
};

// Candidates are all pairs unconnected at `year`; every positive is kept and
// negatives are sampled uniformly without replacement down to
// neg_ratio * positives. Output is in (i, j) order.
std::vector<LabeledExample> build_training_set(const TemporalNetwork& net, int year,
                                               const TrainingSetOptions& options = {});

enum class Optimizer { adam, sgd };

struct TrainConfig {
  int h1 = 64;
  int h2 = 64;
  double learning_rate = 1e-3;
  int batch_size = 128;
  int epochs = 50;
  double neg_ratio = 5.0;
  std::uint64_t seed = 1;
  Optimizer optimizer = Optimizer::adam;
  // Fit on standardized inputs, then fold the affine map into the first layer.
  bool standardize_inputs = true;

  void validate() const;
};

struct TrainingResult {
  MlpModel model;
  std::vector<double> loss_history;  // mean squared error per epoch
};

// Minibatch training of a [17, h1, h2, 1] network on squared error against
// +-1 targets. Deterministic for a given config.
TrainingResult mlp_train(std::span<const LabeledExample> data, const TrainConfig& cfg);

struct LinkPredictorFit {
  TrainingResult result;
  std::size_t examples = 0;
  std::size_t positives = 0;
};

// build_training_set at `year` followed by mlp_train; negatives are sampled
// with cfg.seed.
LinkPredictorFit train_link_predictor(const TemporalNetwork& net, int year, int horizon, const TrainConfig& cfg,
                                      const FeatureOptions& features = {},
                                      std::optional<double> max_cosine = std::nullopt);

struct RankedPair {
  ConceptPair pair;
  double score = 0.0;
};

using CandidateFilter = std::function<bool(const PairFeatureVector&)>;

// Scores every unconnected pair at the extractor's year that passes `filter`
// (all pairs when empty); descending score, ties by (i, j).
std::vector<RankedPair> predict_and_rank(const MlpModel& model, const FeatureExtractor& extractor,
                                         const CandidateFilter& filter = {});
std::vector<RankedPair> rank_scored(std::vector<RankedPair> scored);

// Parses filters like "cos<0.2", "deg<0.05", "cos<0.15,deg<0.05" or "all".
CandidateFilter parse_filter(const std::string& spec);

}  // namespace semnet
