#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace semnet {

struct Document {
  std::string id;
  std::string title;
  std::string abstract;
  int year = 0;

  bool operator==(const Document&) const = default;
};

struct YearLimits {
  int min_year = 1800;
  int max_year = 2100;
};

// Corpus files hold one flat JSON object per line with exactly the keys
// id, title, abstract and year. Blank lines and lines starting with '#'
// (provenance headers) are skipped.
std::vector<Document> load_corpus(const std::filesystem::path& path, const YearLimits& limits = {});
std::vector<Document> parse_corpus(std::istream& in, const YearLimits& limits = {},
                                   const std::string& source = "<stream>");

std::string to_record_line(const Document& doc);
void write_corpus(std::ostream& out, std::span<const Document> docs);

// A concept that does not appear before `start_year`; from then on each
// document includes it with probability `intensity`.
struct BurstSpec {
  int concept_index = 0;
  int start_year = 0;
  double intensity = 0.25;
};

// Two established concepts that are never co-mentioned before `start_year`;
// from then on each document mentions both with probability `intensity`.
struct PairBurstSpec {
  int first = 0;
  int second = 0;
  int start_year = 0;
  double intensity = 0.2;
};

struct SyntheticConfig {
  int n_concepts = 200;
  int n_docs_per_year = 10;
  // When positive, overrides n_docs_per_year: this many documents are spread
  // as evenly as possible over the years (earlier years take the remainder).
  int total_docs = 0;
  int first_year = 1990;
  int last_year = 2010;

  int min_concepts_per_doc = 2;
  int max_concepts_per_doc = 6;
  double mean_concepts_per_doc = 3.0;

  int n_communities = 10;
  double cross_community_rate = 0.12;
  double closure_rate = 0.3;
  double attachment_exponent = 0.6;
  double popularity_exponent = 0.9;
  // Fraction of ordinary concepts born after the first year.
  double late_birth_fraction = 0.3;

  std::vector<BurstSpec> bursts;
  std::vector<PairBurstSpec> pair_bursts;
  std::uint64_t seed = 42;

  void validate() const;
  int docs_in_year(int year) const;
  int total_documents() const;
};

// What the generator planted, for checking downstream detectors.
struct GeneratorLog {
  std::vector<std::string> concept_names;
  std::vector<int> birth_year;
  std::vector<int> community;
  // Parallel to SyntheticConfig::bursts / pair_bursts; 0 when never realized.
  std::vector<int> burst_first_year;
  std::vector<int> pair_burst_first_year;
};

std::vector<Document> generate_synthetic_corpus(const SyntheticConfig& cfg, GeneratorLog* log = nullptr);

// Concept phrases the generator uses for `cfg`, in concept-index order.
std::vector<std::string> synthetic_concept_names(const SyntheticConfig& cfg);

// A handful of documents written by one "scientist" who works mostly inside
// one community of the synthetic concept space.
std::vector<Document> generate_scientist_corpus(const SyntheticConfig& cfg, int community, int n_docs,
                                                std::uint64_t seed);

// Bundled fixtures: the 200-record ingestion fixture and the ~5000-document
// evaluation fixture (200 concepts, 1990-2010, one planted concept burst and
// one planted pair burst).
SyntheticConfig small_fixture_config();
SyntheticConfig fixture_config();

// Glue words used by the synthetic text templates; all are stopwords.
std::span<const std::string_view> synthetic_glue_words();

}  // namespace semnet
