#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semnet/corpus.hpp"
#include "semnet/features.hpp"
#include "semnet/mlp.hpp"
#include "semnet/network.hpp"
#include "semnet/vocab.hpp"

namespace semnet {

// N(c): the scientist's documents mentioning c. M(c): the same over the whole
// corpus. p_* are the normalized counts and ratio = p_scientist / p_total,
// NaN where M(c) = 0.
struct ResearchProfile {
  std::vector<std::string> document_ids;
  std::vector<std::uint64_t> scientist_counts;
  std::vector<std::uint64_t> corpus_counts;
  std::vector<double> p_scientist;
  std::vector<double> p_total;
  std::vector<double> ratio;
  std::vector<int> key_concepts;  // ratio > 1, ascending id
};

ResearchProfile research_profile(std::span<const Document> scientist_docs, const ConceptVocabulary& vocab,
                                 std::span<const std::uint64_t> corpus_totals);
std::vector<std::uint64_t> corpus_totals(const TemporalNetwork& net);

// Unordered pairs (k, c) with k a key concept, unconnected in `s`, sorted and
// unique. A null profile yields every unconnected pair.
std::vector<ConceptPair> candidate_pairs(const ResearchProfile* profile, const Snapshot& s);

constexpr int kRecordDims = kFeatureCount + 1;

struct SuggestionRecord {
  ConceptPair pair;
  std::array<double, kRecordDims> values{};  // p1..p17, prediction
  double outlier = 0.0;

  double cosine() const { return values[4]; }
  double degree() const { return 0.5 * (values[0] + values[1]); }
  double prediction() const { return values[kFeatureCount]; }
};

std::vector<SuggestionRecord> make_records(const FeatureExtractor& extractor, const MlpModel& model,
                                           const std::vector<ConceptPair>& pairs);

// Which coordinates enter the outlier distance.
enum class OutlierSpace { full, cos_deg_pred, cos_deg };

// Z-scores each coordinate over the record set (population deviation;
// constant coordinates dropped) and returns each record's Euclidean norm,
// rounded to 12 significant digits.
std::vector<double> outlier_scores(std::span<const SuggestionRecord> records, OutlierSpace space = OutlierSpace::full);
std::vector<double> outlier_coordinates(const SuggestionRecord& record, OutlierSpace space);

struct Thresholds {
  std::optional<double> max_cosine;  // keep p5 < value
  std::optional<double> max_degree;  // keep mean(p1, p2) < value
  std::optional<double> min_pred;    // keep pred >= value
  std::optional<double> max_pred;    // keep pred <= value
};

enum class SortKey { pred_desc, pred_asc, outlier_desc };

bool passes(const SuggestionRecord& r, const Thresholds& t);
std::vector<SuggestionRecord> filter_and_rank(std::span<const SuggestionRecord> records, const Thresholds& t,
                                              SortKey key, std::size_t top_n);

struct Preset {
  std::string name;
  Thresholds thresholds;
  SortKey key = SortKey::pred_desc;
  OutlierSpace space = OutlierSpace::full;
};

const std::vector<Preset>& presets();
const Preset& find_preset(const std::string& name);

// CSV `rank,concept_a,concept_b,cosS,deg,pred,outlier`.
void write_suggestions_csv(std::ostream& out, const std::vector<std::string>& names,
                           std::span<const SuggestionRecord> ranked);

}  // namespace semnet
