#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "semnet/corpus.hpp"
#include "semnet/vocab.hpp"

namespace semnet {

struct YearCount {
  int year = 0;
  std::uint32_t count = 0;

  bool operator==(const YearCount&) const = default;
};

using ConceptPair = std::pair<int, int>;  // always first < second

inline ConceptPair ordered_pair(int a, int b) { return a < b ? ConceptPair{a, b} : ConceptPair{b, a}; }

// Per-pair, per-year co-occurrence counts plus per-concept, per-year
// document counts. Pairs are keyed (i, j) with i < j; absent means zero.
class TemporalNetwork {
 public:
  TemporalNetwork() = default;
  TemporalNetwork(std::vector<std::string> names, int first_year, int last_year);

  int size() const { return static_cast<int>(names_.size()); }
  int first_year() const { return first_year_; }
  int last_year() const { return last_year_; }
  const std::vector<std::string>& names() const { return names_; }

  // Registers one document mentioning the given distinct concepts.
  void add_document(int year, std::span<const int> concepts);
  // Raw increments, as read back from a network file.
  void add_pair_count(int i, int j, int year, std::uint32_t count);
  void add_concept_count(int c, int year, std::uint32_t count);

  const std::map<ConceptPair, std::vector<YearCount>>& edges() const { return edges_; }
  std::span<const YearCount> pair_history(int i, int j) const;
  std::span<const YearCount> concept_history(int c) const { return concepts_.at(c); }

  std::uint64_t pair_count_through(int i, int j, int year) const;
  std::uint64_t concept_count_through(int c, int year) const;
  std::uint64_t concept_total(int c) const;

  std::optional<int> first_connection_year(int i, int j) const;
  std::optional<int> first_occurrence_year(int c) const;

 private:
  void check_concept(int c) const;
  static void bump(std::vector<YearCount>& history, int year, std::uint32_t count);

  std::vector<std::string> names_;
  int first_year_ = 0;
  int last_year_ = -1;
  std::map<ConceptPair, std::vector<YearCount>> edges_;
  std::vector<std::vector<YearCount>> concepts_;
};

// Concept matching runs on `threads` workers; aggregation is sequential in
// document order, so the result does not depend on the worker count.
TemporalNetwork build_network(std::span<const Document> corpus, const ConceptVocabulary& vocab,
                              unsigned threads = 1);

struct Neighbor {
  int id = 0;
  std::uint64_t weight = 0;  // cumulative co-occurrence count
};

// Cumulative view at one year: weighted adjacency A_Y as sorted sparse rows,
// degrees (distinct neighbors) and cumulative occurrence counts.
class Snapshot {
 public:
  Snapshot() = default;
  Snapshot(int year, std::vector<std::vector<Neighbor>> rows, std::vector<std::uint64_t> occurrences);

  int year() const { return year_; }
  int size() const { return static_cast<int>(rows_.size()); }
  std::span<const Neighbor> neighbors(int i) const { return rows_[i]; }
  int degree(int i) const { return static_cast<int>(rows_[i].size()); }
  std::uint64_t occurrences(int i) const { return occurrences_[i]; }
  std::uint64_t weight(int i, int j) const;
  bool connected(int i, int j) const { return weight(i, j) > 0; }
  std::size_t edge_count() const;

 private:
  int year_ = 0;
  std::vector<std::vector<Neighbor>> rows_;
  std::vector<std::uint64_t> occurrences_;
};

Snapshot snapshot(const TemporalNetwork& net, int year);

// Network file:
//   semnet v1 <n>
//   years\t<first>\t<last>
//   #<id>\t<canonical>           one per concept
//   occ\t<c>\t<year>\t<count>    concept document counts, sorted (c, year)
//   <i>\t<j>\t<year>\t<count>    pair events, i < j, sorted (i, j, year)
// Lines starting with "## " are provenance comments.
void write_network(std::ostream& out, const TemporalNetwork& net);
TemporalNetwork read_network(std::istream& in, const std::string& source = "<stream>");
TemporalNetwork load_network(const std::filesystem::path& path);

}  // namespace semnet
