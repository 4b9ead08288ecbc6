#include "semnet/evaluation.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "semnet/error.hpp"
#include "semnet/parallel.hpp"
#include "semnet/random.hpp"

namespace semnet {

namespace {

void check_inputs(std::span<const double> scores, std::span<const double> labels) {
  if (scores.size() != labels.size()) {
    throw Error(fmt::format("{} scores but {} labels", scores.size(), labels.size()));
  }
  std::size_t pos = 0, neg = 0;
  for (double l : labels) {
    if (l == 1.0) {
      ++pos;
    } else if (l == -1.0) {
      ++neg;
    } else {
      throw Error(fmt::format("labels must be +1 or -1, got {}", l));
    }
  }
  if (pos == 0 || neg == 0) throw Error("ROC needs at least one positive and one negative label");
}

}  // namespace

RocCurve roc_curve(std::span<const double> scores, std::span<const double> labels) {
  check_inputs(scores, labels);
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  const auto total_pos = static_cast<std::uint64_t>(std::count(labels.begin(), labels.end(), 1.0));
  const auto total_neg = static_cast<std::uint64_t>(labels.size()) - total_pos;

  RocCurve curve;
  curve.points.push_back({0.0, 0.0});
  std::uint64_t tp = 0, fp = 0;
  // Twice the area in units of one (positive, negative) cell.
  unsigned __int128 doubled_area = 0;
  for (std::size_t k = 0; k < order.size();) {
    const double threshold = scores[order[k]];
    std::uint64_t dtp = 0, dfp = 0;
    for (; k < order.size() && scores[order[k]] == threshold; ++k) {
      (labels[order[k]] > 0 ? dtp : dfp) += 1;
    }
    doubled_area += static_cast<unsigned __int128>(dfp) * (2 * tp + dtp);
    tp += dtp;
    fp += dfp;
    curve.points.push_back({static_cast<double>(fp) / total_neg, static_cast<double>(tp) / total_pos});
  }
  curve.auc = static_cast<double>(doubled_area) / (2.0 * static_cast<double>(total_pos) * static_cast<double>(total_neg));
  return curve;
}

double auc_pairwise(std::span<const double> scores, std::span<const double> labels) {
  check_inputs(scores, labels);
  std::uint64_t doubled = 0, pairs = 0;
  for (std::size_t a = 0; a < scores.size(); ++a) {
    if (labels[a] < 0) continue;
    for (std::size_t b = 0; b < scores.size(); ++b) {
      if (labels[b] > 0) continue;
      ++pairs;
      if (scores[a] > scores[b]) {
        doubled += 2;
      } else if (scores[a] == scores[b]) {
        doubled += 1;
      }
    }
  }
  return static_cast<double>(doubled) / (2.0 * static_cast<double>(pairs));
}

double shuffled_label_auc(std::span<const double> scores, std::span<const double> labels, std::uint64_t seed) {
  std::vector<double> permuted(labels.begin(), labels.end());
  Rng rng(seed);
  rng.shuffle(permuted);
  return roc_curve(scores, permuted).auc;
}

namespace {

void check_years(const TemporalNetwork& net, int validate_year, int horizon) {
  if (horizon < 1) throw Error("horizon must be at least 1");
  if (validate_year + horizon > net.last_year()) {
    throw Error(fmt::format("validation year {} + horizon {} is past the last data year {}", validate_year, horizon,
                            net.last_year()));
  }
}

}  // namespace

ProtocolReport evaluate_model(const TemporalNetwork& net, const MlpModel& model, int validate_year,
                              const ProtocolConfig& cfg) {
  check_years(net, validate_year, cfg.horizon);
  ProtocolReport report;
  report.validate_year = validate_year;
  report.horizon = cfg.horizon;
  report.max_cosine = cfg.max_cosine;
  report.model = model;

  const FeatureExtractor extractor(net, validate_year, cfg.features);
  const Snapshot future = snapshot(net, validate_year + cfg.horizon);
  std::vector<ConceptPair> candidates;
  for (const auto& pr : extractor.unconnected_pairs()) {
    if (cosine_similarity(extractor.snapshot(), pr.first, pr.second) < cfg.max_cosine) candidates.push_back(pr);
  }
  const auto vectors = extractor.compute_all(candidates);
  std::vector<double> scores(vectors.size());
  parallel_for(vectors.size(), cfg.features.threads,
               [&](std::size_t k) { scores[k] = mlp_forward(model, vectors[k].p); });
  std::vector<double> labels(vectors.size());
  std::vector<double> cosine(vectors.size());
  std::vector<double> walks(vectors.size());
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    labels[k] = future.connected(vectors[k].i, vectors[k].j) ? 1.0 : -1.0;
    cosine[k] = vectors[k].p[4];
    walks[k] = vectors[k].p[5];
  }
  report.candidates = vectors.size();
  report.positives = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1.0));
  report.negatives = report.candidates - report.positives;
  if (report.positives == 0 || report.negatives == 0) {
    throw Error(fmt::format("validation set at {} has {} positives and {} negatives; both are needed", validate_year,
                            report.positives, report.negatives));
  }
  report.curve = roc_curve(scores, labels);
  report.auc_cosine = roc_curve(cosine, labels).auc;
  report.auc_walks = roc_curve(walks, labels).auc;
  report.auc_shuffled = shuffled_label_auc(scores, labels, cfg.control_seed);
  return report;
}

ProtocolReport evaluate_protocol(const TemporalNetwork& net, int train_year, int validate_year,
                                 const ProtocolConfig& cfg) {
  check_years(net, validate_year, cfg.horizon);
  if (validate_year < train_year + cfg.horizon) {
    throw Error(fmt::format("validation year {} must be at least train year {} + horizon {}", validate_year,
                            train_year, cfg.horizon));
  }
  auto fit = train_link_predictor(net, train_year, cfg.horizon, cfg.train, cfg.features,
                                  cfg.filter_training ? std::optional<double>(cfg.max_cosine) : std::nullopt);
  ProtocolReport report = evaluate_model(net, fit.result.model, validate_year, cfg);
  report.train_year = train_year;
  report.training_examples = fit.examples;
  report.training_positives = fit.positives;
  report.loss_history = std::move(fit.result.loss_history);
  return report;
}

nlohmann::ordered_json report_to_json(const ProtocolReport& r) {
  nlohmann::ordered_json j;
  j["auc"] = r.curve.auc;
  j["train_year"] = r.train_year;
  j["validate_year"] = r.validate_year;
  j["horizon"] = r.horizon;
  j["filter"] = {{"cosine_below", r.max_cosine}};
  j["counts"] = {{"training_examples", r.training_examples},
                 {"training_positives", r.training_positives},
                 {"candidates", r.candidates},
                 {"positives", r.positives},
                 {"negatives", r.negatives}};
  j["baselines"] = {{"cosine_auc", r.auc_cosine}, {"walks2_auc", r.auc_walks}};
  j["shuffled_label_auc"] = r.auc_shuffled;
  auto points = nlohmann::ordered_json::array();
  for (const auto& p : r.curve.points) points.push_back({p.fpr, p.tpr});
  j["points"] = std::move(points);
  return j;
}

}  // namespace semnet
