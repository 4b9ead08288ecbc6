#include "semnet/vocab.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

#include "semnet/error.hpp"
#include "semnet/text.hpp"

namespace semnet {

namespace {

bool is_numeric(const std::string& token) {
  return std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

// Splits text into candidate phrases. Punctuation other than hyphens and
// apostrophes ends a phrase; hyphens and apostrophes only split tokens.
std::vector<std::vector<std::string>> rake_candidates(std::string_view text, const StopwordSet& stopwords,
                                                      int max_phrase_len) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> run;
  std::string token;
  auto close_run = [&] {
    if (!run.empty()) {
      if (static_cast<int>(run.size()) > max_phrase_len) run.resize(max_phrase_len);
      out.push_back(std::move(run));
      run.clear();
    }
  };
  auto end_token = [&] {
    if (token.empty()) return;
    if (stopwords.contains(token) || is_numeric(token)) {
      close_run();
    } else {
      run.push_back(token);
    }
    token.clear();
  };
  for (char c : text) {
    if (text::is_token_byte(c)) {
      token.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c);
      continue;
    }
    end_token();
    if (!is_space(c) && c != '-' && c != '\'') close_run();
  }
  end_token();
  close_run();
  return out;
}

}  // namespace

std::string ScoredPhrase::text() const { return text::join(phrase); }

std::vector<ScoredPhrase> rake_extract(std::string_view text, const StopwordSet& stopwords, int max_phrase_len) {
  if (max_phrase_len < 1) throw Error("max_phrase_len must be at least 1");
  const auto candidates = rake_candidates(text, stopwords, max_phrase_len);

  std::unordered_map<std::string, double> degree;
  std::unordered_map<std::string, double> freq;
  for (const auto& phrase : candidates) {
    for (const auto& w : phrase) {
      degree[w] += static_cast<double>(phrase.size());
      freq[w] += 1.0;
    }
  }

  std::vector<ScoredPhrase> scored;
  std::set<std::vector<std::string>> seen;
  for (const auto& phrase : candidates) {
    if (!seen.insert(phrase).second) continue;
    double score = 0.0;
    for (const auto& w : phrase) score += degree[w] / freq[w];
    scored.push_back({phrase, score});
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const ScoredPhrase& a, const ScoredPhrase& b) { return a.score > b.score; });
  return scored;
}

ConceptVocabulary::ConceptVocabulary(std::vector<Concept> concepts) : concepts_(std::move(concepts)) {
  trie_.emplace_back();
  std::unordered_map<std::string, int> owner;
  for (std::size_t k = 0; k < concepts_.size(); ++k) {
    const auto& c = concepts_[k];
    if (c.id != static_cast<int>(k)) throw Error(fmt::format("concept ids must be dense; got {} at {}", c.id, k));
    if (c.canonical.empty() || text::normalize_phrase(c.canonical) != c.canonical) {
      throw Error(fmt::format("concept {} has a non-normalized canonical form '{}'", k, c.canonical));
    }
    std::set<std::string> forms{c.canonical};
    for (const auto& alias : c.aliases) {
      auto norm = text::normalize_phrase(alias);
      if (!norm.empty()) forms.insert(std::move(norm));
    }
    for (const auto& form : forms) {
      auto [it, fresh] = owner.emplace(form, c.id);
      if (!fresh) {
        throw Error(fmt::format("concepts {} and {} share the form '{}'", it->second, c.id, form));
      }
      insert(text::normalize_tokens(form), c.id);
    }
  }
}

void ConceptVocabulary::insert(const std::vector<std::string>& tokens, int id) {
  int node = 0;
  for (const auto& t : tokens) {
    auto it = trie_[node].next.find(t);
    if (it == trie_[node].next.end()) {
      trie_.emplace_back();
      const int child = static_cast<int>(trie_.size()) - 1;
      trie_[node].next.emplace(t, child);
      node = child;
    } else {
      node = it->second;
    }
  }
  trie_[node].concept_id = id;
}

std::optional<int> ConceptVocabulary::find(std::string_view phrase) const {
  const auto tokens = text::normalize_tokens(phrase);
  if (tokens.empty() || trie_.empty()) return std::nullopt;
  int node = 0;
  for (const auto& t : tokens) {
    auto it = trie_[node].next.find(t);
    if (it == trie_[node].next.end()) return std::nullopt;
    node = it->second;
  }
  if (trie_[node].concept_id < 0) return std::nullopt;
  return trie_[node].concept_id;
}

std::vector<std::string> ConceptVocabulary::canonical_names() const {
  std::vector<std::string> names;
  names.reserve(concepts_.size());
  for (const auto& c : concepts_) names.push_back(c.canonical);
  return names;
}

std::vector<int> ConceptVocabulary::match_tokens(std::span<const std::string> normalized) const {
  std::vector<int> found;
  if (trie_.empty()) return found;
  for (std::size_t start = 0; start < normalized.size(); ++start) {
    int node = 0;
    for (std::size_t k = start; k < normalized.size(); ++k) {
      auto it = trie_[node].next.find(normalized[k]);
      if (it == trie_[node].next.end()) break;
      node = it->second;
      if (trie_[node].concept_id >= 0) found.push_back(trie_[node].concept_id);
    }
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

std::vector<int> match_concepts(const Document& doc, const ConceptVocabulary& vocab) {
  // Title and abstract are separate token streams: no phrase spans the seam.
  auto found = vocab.match_tokens(text::normalize_tokens(doc.title));
  auto more = vocab.match_tokens(text::normalize_tokens(doc.abstract));
  found.insert(found.end(), more.begin(), more.end());
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

ConceptList parse_concept_list(std::istream& in) {
  ConceptList list;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> group;
    std::size_t start = 0;
    while (start <= line.size()) {
      const auto bar = line.find('|', start);
      const auto piece = line.substr(start, bar == std::string::npos ? std::string::npos : bar - start);
      auto surface = text::surface_phrase(piece);
      if (!surface.empty()) group.push_back(std::move(surface));
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    if (!group.empty()) list.push_back(std::move(group));
  }
  return list;
}

ConceptList read_concept_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot read concept list '{}'", path.string()));
  return parse_concept_list(in);
}

namespace {

// Union of surface groups keyed by normalized form, in first-seen order.
class GroupMerger {
 public:
  void add(const std::vector<std::string>& surfaces) {
    std::vector<std::string> norms;
    for (const auto& s : surfaces) {
      auto n = text::normalize_phrase(s);
      if (!n.empty()) norms.push_back(std::move(n));
    }
    if (norms.empty()) return;
    const int g = static_cast<int>(parent_.size());
    parent_.push_back(g);
    groups_.push_back({norms.front(), {}, {}});
    for (std::size_t k = 0; k < surfaces.size(); ++k) groups_[g].surfaces.push_back(surfaces[k]);
    for (const auto& n : norms) {
      groups_[g].norms.push_back(n);
      auto [it, fresh] = owner_.emplace(n, g);
      if (!fresh) unite(it->second, g);
    }
  }

  std::vector<Concept> concepts(const std::set<std::string>& blocked) {
    std::vector<std::vector<int>> members(parent_.size());
    for (int g = 0; g < static_cast<int>(parent_.size()); ++g) members[find(g)].push_back(g);
    std::vector<Concept> out;
    for (int root = 0; root < static_cast<int>(parent_.size()); ++root) {
      if (members[root].empty()) continue;
      bool is_blocked = false;
      for (int g : members[root]) {
        for (const auto& n : groups_[g].norms) is_blocked = is_blocked || blocked.contains(n);
      }
      if (is_blocked) continue;
      Concept c;
      c.id = static_cast<int>(out.size());
      c.canonical = groups_[members[root].front()].canonical;
      std::set<std::string> seen{c.canonical};
      for (int g : members[root]) {
        for (const auto& s : groups_[g].surfaces) {
          if (seen.insert(s).second) c.aliases.push_back(s);
        }
      }
      out.push_back(std::move(c));
    }
    return out;
  }

 private:
  struct Group {
    std::string canonical;
    std::vector<std::string> surfaces;
    std::vector<std::string> norms;
  };

  int find(int g) {
    while (parent_[g] != g) g = parent_[g] = parent_[parent_[g]];
    return g;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // The earlier group keeps the canonical form.
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

  std::vector<int> parent_;
  std::vector<Group> groups_;
  std::unordered_map<std::string, int> owner_;
};

}  // namespace

ConceptVocabulary build_vocabulary(std::span<const Document> corpus, const ConceptList& human,
                                   const ConceptList& blocked, const VocabularyOptions& options) {
  if (corpus.empty()) throw Error("cannot build a vocabulary from an empty corpus");

  GroupMerger merger;
  for (const auto& group : human) merger.add(group);

  if (options.rake_top_k > 0) {
    std::string all_text;
    for (const auto& doc : corpus) {
      all_text += doc.title;
      all_text += ".\n";
      all_text += doc.abstract;
      all_text += ".\n";
    }
    auto phrases = rake_extract(all_text, default_stopwords(), options.max_phrase_len);
    std::vector<std::string> picked;
    std::set<std::string> picked_norms;
    for (const auto& p : phrases) {
      if (static_cast<int>(picked.size()) >= options.rake_top_k) break;
      auto surface = p.text();
      if (picked_norms.insert(text::normalize_phrase(surface)).second) picked.push_back(std::move(surface));
    }

    // Document frequency of each picked phrase via a throwaway matcher.
    std::vector<Concept> probe;
    for (std::size_t k = 0; k < picked.size(); ++k) {
      probe.push_back({static_cast<int>(k), text::normalize_phrase(picked[k]), {}});
    }
    const ConceptVocabulary matcher(std::move(probe));
    std::vector<int> doc_freq(picked.size(), 0);
    for (const auto& doc : corpus) {
      for (int id : match_concepts(doc, matcher)) ++doc_freq[id];
    }
    for (std::size_t k = 0; k < picked.size(); ++k) {
      if (doc_freq[k] >= options.min_doc_freq) merger.add({picked[k]});
    }
  }

  std::set<std::string> blocked_norms;
  for (const auto& group : blocked) {
    for (const auto& s : group) blocked_norms.insert(text::normalize_phrase(s));
  }
  return ConceptVocabulary(merger.concepts(blocked_norms));
}

ConceptVocabulary build_vocabulary(std::span<const Document> corpus,
                                   std::span<const std::filesystem::path> human_lists,
                                   const VocabularyOptions& options) {
  ConceptList human;
  for (const auto& path : human_lists) {
    auto list = read_concept_list(path);
    human.insert(human.end(), list.begin(), list.end());
  }
  ConceptList blocked;
  for (const auto& path : options.blocklists) {
    auto list = read_concept_list(path);
    blocked.insert(blocked.end(), list.begin(), list.end());
  }
  return build_vocabulary(corpus, human, blocked, options);
}

void write_vocabulary(std::ostream& out, const ConceptVocabulary& vocab) {
  for (const auto& c : vocab.concepts()) {
    out << c.canonical;
    for (const auto& a : c.aliases) out << '|' << a;
    out << '\n';
  }
}

ConceptVocabulary read_vocabulary(const std::filesystem::path& path) {
  const auto list = read_concept_list(path);
  std::vector<Concept> concepts;
  for (const auto& group : list) {
    Concept c;
    c.id = static_cast<int>(concepts.size());
    c.canonical = text::normalize_phrase(group.front());
    c.aliases.assign(group.begin() + 1, group.end());
    concepts.push_back(std::move(c));
  }
  return ConceptVocabulary(std::move(concepts));
}

}  // namespace semnet
