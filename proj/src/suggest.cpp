#include "semnet/suggest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/format.h>

#include "semnet/error.hpp"
#include "semnet/parallel.hpp"

namespace semnet {

std::vector<std::uint64_t> corpus_totals(const TemporalNetwork& net) {
  std::vector<std::uint64_t> totals(net.size());
  for (int c = 0; c < net.size(); ++c) totals[c] = net.concept_total(c);
  return totals;
}

ResearchProfile research_profile(std::span<const Document> scientist_docs, const ConceptVocabulary& vocab,
                                 std::span<const std::uint64_t> totals) {
  if (scientist_docs.empty()) throw Error("scientist profile needs at least one document");
  const std::size_t n = vocab.size();
  if (totals.size() != n) {
    throw Error(fmt::format("corpus totals cover {} concepts but the vocabulary has {}", totals.size(), n));
  }
  ResearchProfile p;
  p.scientist_counts.assign(n, 0);
  p.corpus_counts.assign(totals.begin(), totals.end());
  for (const auto& doc : scientist_docs) {
    p.document_ids.push_back(doc.id);
    for (int c : match_concepts(doc, vocab)) ++p.scientist_counts[c];
  }
  std::uint64_t sum_n = 0, sum_m = 0;
  for (std::size_t c = 0; c < n; ++c) {
    sum_n += p.scientist_counts[c];
    sum_m += p.corpus_counts[c];
  }
  if (sum_n == 0) throw Error("the scientist's documents mention no known concept");
  if (sum_m == 0) throw Error("corpus totals are all zero");

  const double nan = std::numeric_limits<double>::quiet_NaN();
  p.p_scientist.resize(n);
  p.p_total.resize(n);
  p.ratio.assign(n, nan);
  for (std::size_t c = 0; c < n; ++c) {
    p.p_scientist[c] = static_cast<double>(p.scientist_counts[c]) / static_cast<double>(sum_n);
    p.p_total[c] = static_cast<double>(p.corpus_counts[c]) / static_cast<double>(sum_m);
    if (p.corpus_counts[c] > 0) {
      p.ratio[c] = p.p_scientist[c] / p.p_total[c];
      if (p.ratio[c] > 1.0) p.key_concepts.push_back(static_cast<int>(c));
    }
  }
  return p;
}

std::vector<ConceptPair> candidate_pairs(const ResearchProfile* profile, const Snapshot& s) {
  std::vector<ConceptPair> out;
  const int n = s.size();
  if (profile == nullptr) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (!s.connected(i, j)) out.emplace_back(i, j);
      }
    }
    return out;
  }
  for (int k : profile->key_concepts) {
    for (int c = 0; c < n; ++c) {
      if (c != k && !s.connected(k, c)) out.push_back(ordered_pair(k, c));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<SuggestionRecord> make_records(const FeatureExtractor& extractor, const MlpModel& model,
                                           const std::vector<ConceptPair>& pairs) {
  const auto vectors = extractor.compute_all(pairs);
  std::vector<SuggestionRecord> records(vectors.size());
  parallel_for(vectors.size(), extractor.threads(), [&](std::size_t k) {
    auto& r = records[k];
    r.pair = {vectors[k].i, vectors[k].j};
    std::copy(vectors[k].p.begin(), vectors[k].p.end(), r.values.begin());
    r.values[kFeatureCount] = mlp_forward(model, vectors[k].p);
  });
  return records;
}

std::vector<double> outlier_coordinates(const SuggestionRecord& r, OutlierSpace space) {
  switch (space) {
    case OutlierSpace::full:
      return {r.values.begin(), r.values.end()};
    case OutlierSpace::cos_deg_pred:
      return {r.cosine(), r.degree(), r.prediction()};
    case OutlierSpace::cos_deg:
      return {r.cosine(), r.degree()};
  }
  return {};
}

namespace {

// Scores that tie in exact arithmetic can differ in the last bits depending on
// how the coordinates were scaled; rounding keeps such ties exact so the
// ranking falls back to the pair order.
double round_significant(double v) {
  char buf[64];
  const auto end = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12).ptr;
  double out = v;
  std::from_chars(buf, end, out);
  return out;
}

}  // namespace

std::vector<double> outlier_scores(std::span<const SuggestionRecord> records, OutlierSpace space) {
  if (records.size() < 2) throw Error("outlier scores need at least two records");
  std::vector<std::vector<double>> coords;
  coords.reserve(records.size());
  for (const auto& r : records) coords.push_back(outlier_coordinates(r, space));
  const std::size_t dims = coords.front().size();

  // Welford running mean and sum of squared deviations.
  std::vector<double> mean(dims, 0.0), m2(dims, 0.0);
  double count = 0.0;
  for (const auto& x : coords) {
    count += 1.0;
    for (std::size_t d = 0; d < dims; ++d) {
      const double delta = x[d] - mean[d];
      mean[d] += delta / count;
      m2[d] += delta * (x[d] - mean[d]);
    }
  }
  std::vector<double> sd(dims, 0.0);
  for (std::size_t d = 0; d < dims; ++d) sd[d] = std::sqrt(m2[d] / count);

  std::vector<double> scores(coords.size(), 0.0);
  for (std::size_t k = 0; k < coords.size(); ++k) {
    double acc = 0.0;
    for (std::size_t d = 0; d < dims; ++d) {
      if (!(sd[d] > 0.0)) continue;
      const double z = (coords[k][d] - mean[d]) / sd[d];
      acc += z * z;
    }
    scores[k] = round_significant(std::sqrt(acc));
  }
  return scores;
}

bool passes(const SuggestionRecord& r, const Thresholds& t) {
  if (t.max_cosine && !(r.cosine() < *t.max_cosine)) return false;
  if (t.max_degree && !(r.degree() < *t.max_degree)) return false;
  if (t.min_pred && !(r.prediction() >= *t.min_pred)) return false;
  if (t.max_pred && !(r.prediction() <= *t.max_pred)) return false;
  return true;
}

std::vector<SuggestionRecord> filter_and_rank(std::span<const SuggestionRecord> records, const Thresholds& t,
                                              SortKey key, std::size_t top_n) {
  std::vector<SuggestionRecord> kept;
  for (const auto& r : records) {
    if (passes(r, t)) kept.push_back(r);
  }
  auto primary = [key](const SuggestionRecord& r) {
    switch (key) {
      case SortKey::pred_desc:
        return -r.prediction();
      case SortKey::pred_asc:
        return r.prediction();
      case SortKey::outlier_desc:
        return -r.outlier;
    }
    return 0.0;
  };
  std::sort(kept.begin(), kept.end(), [&](const SuggestionRecord& a, const SuggestionRecord& b) {
    const double ka = primary(a), kb = primary(b);
    if (ka != kb) return ka < kb;
    return a.pair < b.pair;
  });
  if (kept.size() > top_n) kept.resize(top_n);
  return kept;
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = [] {
    std::vector<Preset> v;
    v.push_back({"unrestricted", {}, SortKey::pred_desc, OutlierSpace::full});
    v.push_back({"cos015", {0.15, {}, {}, {}}, SortKey::pred_desc, OutlierSpace::full});
    v.push_back({"deg005", {{}, 0.05, {}, {}}, SortKey::pred_desc, OutlierSpace::full});
    v.push_back({"cos015-deg005", {0.15, 0.05, {}, {}}, SortKey::pred_desc, OutlierSpace::full});
    v.push_back({"cos003-deg01", {0.03, 0.1, {}, {}}, SortKey::pred_desc, OutlierSpace::full});
    v.push_back({"lowest", {}, SortKey::pred_asc, OutlierSpace::full});
    v.push_back({"outlier", {}, SortKey::outlier_desc, OutlierSpace::full});
    v.push_back({"outlier-cdp", {}, SortKey::outlier_desc, OutlierSpace::cos_deg_pred});
    v.push_back({"outlier-cd", {}, SortKey::outlier_desc, OutlierSpace::cos_deg});
    return v;
  }();
  return all;
}

const Preset& find_preset(const std::string& name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  std::string known;
  for (const auto& p : presets()) known += (known.empty() ? "" : ", ") + p.name;
  throw Error(fmt::format("unknown preset '{}'; known presets: {}", name, known));
}

void write_suggestions_csv(std::ostream& out, const std::vector<std::string>& names,
                           std::span<const SuggestionRecord> ranked) {
  out << "rank,concept_a,concept_b,cosS,deg,pred,outlier\n";
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    const auto& r = ranked[k];
    out << fmt::format("{},{},{},{:.6f},{:.6f},{:.6f},{:.6f}\n", k + 1, names.at(r.pair.first),
                       names.at(r.pair.second), r.cosine(), r.degree(), r.prediction(), r.outlier);
  }
}

}  // namespace semnet
