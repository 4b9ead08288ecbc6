#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semnet/corpus.hpp"
#include "semnet/stopwords.hpp"

namespace semnet {

struct ScoredPhrase {
  std::vector<std::string> phrase;
  double score = 0.0;

  std::string text() const;
};

// Rapid automatic keyword extraction. Candidates are maximal runs of
// non-stopword tokens between stopwords and punctuation (purely numeric
// tokens also break a run), cut to `max_phrase_len` tokens. Each word scores
// deg(w) / freq(w), where deg counts co-members over all candidate
// occurrences including the word itself; a phrase scores the sum over its
// words. Distinct phrases are returned by descending score, ties in order of
// first appearance.
std::vector<ScoredPhrase> rake_extract(std::string_view text, const StopwordSet& stopwords,
                                       int max_phrase_len = 5);

struct Concept {
  int id = 0;
  std::string canonical;             // normalized
  std::vector<std::string> aliases;  // lowercased surface variants
};

// Immutable concept list plus a token trie over every normalized surface form.
class ConceptVocabulary {
 public:
  ConceptVocabulary() = default;
  // Concepts must have ids 0..n-1 in order and pairwise disjoint normalized
  // forms; throws Error otherwise.
  explicit ConceptVocabulary(std::vector<Concept> concepts);

  std::size_t size() const { return concepts_.size(); }
  bool empty() const { return concepts_.empty(); }
  const std::vector<Concept>& concepts() const { return concepts_; }
  const Concept& at(int id) const { return concepts_.at(id); }
  std::optional<int> find(std::string_view phrase) const;
  std::vector<std::string> canonical_names() const;

  // Sorted ids of every concept occurring in the normalized token stream.
  std::vector<int> match_tokens(std::span<const std::string> normalized) const;

 private:
  struct Node {
    std::map<std::string, int, std::less<>> next;
    int concept_id = -1;
  };

  void insert(const std::vector<std::string>& tokens, int id);

  std::vector<Concept> concepts_;
  std::vector<Node> trie_;
};

struct VocabularyOptions {
  int rake_top_k = 2000;
  int min_doc_freq = 3;
  int max_phrase_len = 5;
  std::vector<std::filesystem::path> blocklists;
};

// One concept group per entry: the first element is the canonical form, the
// rest are aliases.
using ConceptList = std::vector<std::vector<std::string>>;

// Human list format: one concept per line, aliases after '|'. '#' lines skipped.
ConceptList read_concept_list(const std::filesystem::path& path);
ConceptList parse_concept_list(std::istream& in);

// Merges human lists with the top RAKE phrases of all titles and abstracts.
// RAKE phrases seen in fewer than min_doc_freq documents are dropped; human
// entries are kept regardless. Groups sharing a normalized form are merged.
ConceptVocabulary build_vocabulary(std::span<const Document> corpus,
                                   std::span<const std::filesystem::path> human_lists,
                                   const VocabularyOptions& options = {});
ConceptVocabulary build_vocabulary(std::span<const Document> corpus, const ConceptList& human,
                                   const ConceptList& blocked, const VocabularyOptions& options);

std::vector<int> match_concepts(const Document& doc, const ConceptVocabulary& vocab);

// Vocabulary file: human-list format, line k holds concept k.
void write_vocabulary(std::ostream& out, const ConceptVocabulary& vocab);
ConceptVocabulary read_vocabulary(const std::filesystem::path& path);

}  // namespace semnet
