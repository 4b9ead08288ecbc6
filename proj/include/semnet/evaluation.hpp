#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "semnet/features.hpp"
#include "semnet/network.hpp"
#include "semnet/predictor.hpp"

namespace semnet {

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // (0,0) first, (1,1) last
  double auc = 0.0;
};

// Threshold sweep over distinct scores, highest first. Tied scores move the
// curve in one diagonal step. Labels are +1 / -1.
RocCurve roc_curve(std::span<const double> scores, std::span<const double> labels);

// Fraction of (positive, negative) pairs ordered correctly, ties worth 1/2.
double auc_pairwise(std::span<const double> scores, std::span<const double> labels);

struct ProtocolConfig {
  int horizon = 5;
  double max_cosine = 0.2;         // evaluation candidates need cosine < this
  bool filter_training = false;    // apply the same cosine filter to training pairs
  TrainConfig train;
  FeatureOptions features;
  std::uint64_t control_seed = 7;  // permutation for the label-shuffled control
};

struct ProtocolReport {
  int train_year = 0;
  int validate_year = 0;
  int horizon = 0;
  double max_cosine = 0.0;
  std::size_t training_examples = 0;
  std::size_t training_positives = 0;
  std::size_t candidates = 0;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  RocCurve curve;
  double auc_cosine = 0.0;       // raw p5 as the score
  double auc_walks = 0.0;        // raw p6 as the score
  double auc_shuffled = 0.0;     // model scores against permuted labels
  MlpModel model;
  std::vector<double> loss_history;
};

// Trains at train_year (labels from train_year + horizon), then scores the
// cosine-filtered unconnected pairs at validate_year against links present at
// validate_year + horizon.
ProtocolReport evaluate_protocol(const TemporalNetwork& net, int train_year, int validate_year,
                                 const ProtocolConfig& cfg = {});
// The validation half of the protocol for an already trained model.
ProtocolReport evaluate_model(const TemporalNetwork& net, const MlpModel& model, int validate_year,
                              const ProtocolConfig& cfg = {});

// Permutes labels with a seeded shuffle and recomputes the AUC against fixed scores.
double shuffled_label_auc(std::span<const double> scores, std::span<const double> labels, std::uint64_t seed);

nlohmann::ordered_json report_to_json(const ProtocolReport& report);

}  // namespace semnet
