#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "semnet/corpus.hpp"
#include "semnet/error.hpp"
#include "semnet/random.hpp"
#include "semnet/stopwords.hpp"

namespace semnet {

namespace {

constexpr std::uint64_t kNameStream = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kScientistStream = 0xc2b2ae3d27d4eb4fULL;

constexpr std::array<std::string_view, 24> kGlue = {
    "in", "this", "paper", "we", "study", "show", "that", "and", "are", "related", "our", "results",
    "on", "based", "also", "discuss", "approach", "uses", "with", "the", "of", "for", "a", "between"};

std::string make_word(Rng& rng) {
  static constexpr std::string_view consonants = "bdfgklmnprtvz";
  static constexpr std::string_view vowels = "aeiou";
  const int syllables = 2 + static_cast<int>(rng.below(2));
  std::string w;
  for (int s = 0; s < syllables; ++s) {
    w.push_back(consonants[rng.below(consonants.size())]);
    w.push_back(vowels[rng.below(vowels.size())]);
  }
  return w;
}

std::vector<std::string> make_names(int n, std::uint64_t seed) {
  Rng rng(seed ^ kNameStream);
  const auto& stop = default_stopwords();
  std::set<std::string> used;
  std::vector<std::string> names;
  names.reserve(n);
  for (int c = 0; c < n; ++c) {
    const double r = rng.uniform();
    const int words = r < 0.3 ? 1 : (r < 0.8 ? 2 : 3);
    std::vector<std::string> parts;
    while (static_cast<int>(parts.size()) < words) {
      std::string w = make_word(rng);
      if (stop.contains(w) || used.contains(w)) continue;
      used.insert(w);
      parts.push_back(std::move(w));
    }
    names.push_back(fmt::format("{}", fmt::join(parts, " ")));
  }
  return names;
}

// Sentence templates for abstracts; each consumes one or two concept mentions.
std::string render_abstract(Rng& rng, const std::vector<std::string>& mentions) {
  std::string out;
  std::size_t k = 0;
  auto sentence = [&](std::string s) {
    if (!out.empty()) out.push_back(' ');
    out += s;
  };
  while (k < mentions.size()) {
    const bool two = k + 1 < mentions.size() && rng.bernoulli(0.6);
    if (two) {
      const auto& a = mentions[k];
      const auto& b = mentions[k + 1];
      switch (rng.below(3)) {
        case 0: sentence(fmt::format("we show that {} and {} are related.", a, b)); break;
        case 1: sentence(fmt::format("our results on {} are based on {}.", a, b)); break;
        default: sentence(fmt::format("this approach uses {} with {}.", a, b)); break;
      }
      k += 2;
    } else {
      const auto& a = mentions[k];
      if (rng.bernoulli(0.5)) {
        sentence(fmt::format("in this paper we study {}.", a));
      } else {
        sentence(fmt::format("we also discuss {}.", a));
      }
      k += 1;
    }
  }
  return out;
}

std::string render_title(Rng& rng, const std::vector<std::string>& mentions) {
  if (mentions.size() == 1) return mentions[0];
  switch (rng.below(3)) {
    case 0: return fmt::format("{} and {}", mentions[0], mentions[1]);
    case 1: return fmt::format("on {} in {}", mentions[0], mentions[1]);
    default: return fmt::format("{} with {}", mentions[0], mentions[1]);
  }
}

Document render_document(Rng& rng, const std::vector<std::string>& names, const std::vector<int>& chosen,
                         std::string id, int year) {
  std::vector<std::string> mentions;
  for (int c : chosen) mentions.push_back(names[c]);
  std::vector<std::string> title_mentions(mentions.begin(), mentions.begin() + std::min<std::size_t>(2, mentions.size()));
  Document doc;
  doc.id = std::move(id);
  doc.year = year;
  doc.title = render_title(rng, title_mentions);
  doc.abstract = render_abstract(rng, mentions);
  return doc;
}

class Generator {
 public:
  Generator(const SyntheticConfig& cfg, GeneratorLog* log) : cfg_(cfg), rng_(cfg.seed), log_(log) {
    const int n = cfg.n_concepts;
    names_ = make_names(n, cfg.seed);
    community_.resize(n);
    for (int c = 0; c < n; ++c) community_[c] = c % cfg.n_communities;

    std::vector<int> rank(n);
    std::iota(rank.begin(), rank.end(), 0);
    rng_.shuffle(rank);
    base_.resize(n);
    for (int c = 0; c < n; ++c) base_[c] = 1.0 / std::pow(rank[c] + 1.0, cfg.popularity_exponent);

    birth_.assign(n, cfg.first_year);
    const int late_last = std::max(cfg.first_year + 1, cfg.last_year - 5);
    for (int c = 0; c < n; ++c) {
      if (rng_.bernoulli(cfg.late_birth_fraction)) {
        birth_[c] = cfg.first_year + 1 + static_cast<int>(rng_.below(late_last - cfg.first_year));
      }
    }
    for (const auto& b : cfg.bursts) birth_[b.concept_index] = b.start_year;
    for (const auto& p : cfg.pair_bursts) {
      birth_[p.first] = cfg.first_year;
      birth_[p.second] = cfg.first_year;
    }
    counts_.assign(n, 0);
    neighbors_.resize(n);
    burst_first_.assign(cfg.bursts.size(), 0);
    pair_first_.assign(cfg.pair_bursts.size(), 0);
  }

  std::vector<Document> run() {
    std::vector<Document> docs;
    docs.reserve(cfg_.total_documents());
    for (int year = cfg_.first_year; year <= cfg_.last_year; ++year) {
      const int count = cfg_.docs_in_year(year);
      for (int k = 0; k < count; ++k) {
        auto chosen = sample_concepts(year);
        record(year, chosen);
        docs.push_back(render_document(rng_, names_, chosen, fmt::format("doc-{}-{:04d}", year, k), year));
      }
    }
    if (log_) {
      log_->concept_names = names_;
      log_->birth_year = birth_;
      log_->community = community_;
      log_->burst_first_year = burst_first_;
      log_->pair_burst_first_year = pair_first_;
    }
    return docs;
  }

 private:
  bool active(int c, int year) const { return birth_[c] <= year; }

  double effective_weight(int c, int year) const {
    if (!active(c, year)) return 0.0;
    return base_[c] * std::pow(1.0 + counts_[c], cfg_.attachment_exponent);
  }

  int draw_from_community(int g, int year, const std::vector<int>& chosen) {
    std::vector<double> w(cfg_.n_concepts, 0.0);
    for (int c = g; c < cfg_.n_concepts; c += cfg_.n_communities) w[c] = effective_weight(c, year);
    for (int c : chosen) w[c] = 0.0;
    const auto idx = rng_.weighted(w);
    return idx == w.size() ? -1 : static_cast<int>(idx);
  }

  int draw_community(int year, int exclude) {
    std::vector<double> w(cfg_.n_communities, 0.0);
    for (int c = 0; c < cfg_.n_concepts; ++c) {
      if (community_[c] != exclude) w[community_[c]] += effective_weight(c, year);
    }
    const auto idx = rng_.weighted(w);
    return idx == w.size() ? -1 : static_cast<int>(idx);
  }

  int draw_neighbor(int c) {
    const auto& nb = neighbors_[c];
    if (nb.empty()) return -1;
    std::vector<double> w;
    std::vector<int> ids;
    for (const auto& [id, count] : nb) {
      ids.push_back(id);
      w.push_back(count);
    }
    return ids[rng_.weighted(w)];
  }

  // Two hops through the co-mention history: closes triangles.
  int draw_closure(const std::vector<int>& chosen) {
    const int x = chosen[rng_.below(chosen.size())];
    const int y = draw_neighbor(x);
    if (y < 0) return -1;
    return draw_neighbor(y);
  }

  std::vector<int> sample_concepts(int year) {
    std::vector<int> chosen;
    auto add = [&](int c) {
      if (c >= 0 && std::find(chosen.begin(), chosen.end(), c) == chosen.end()) chosen.push_back(c);
    };
    for (const auto& p : cfg_.pair_bursts) {
      if (year >= p.start_year && rng_.bernoulli(p.intensity)) {
        add(p.first);
        add(p.second);
      }
    }
    for (const auto& b : cfg_.bursts) {
      if (year >= b.start_year && rng_.bernoulli(b.intensity)) add(b.concept_index);
    }

    const int span = cfg_.max_concepts_per_doc - cfg_.min_concepts_per_doc;
    const double p = span > 0 ? (cfg_.mean_concepts_per_doc - cfg_.min_concepts_per_doc) / span : 0.0;
    int k = cfg_.min_concepts_per_doc;
    for (int t = 0; t < span; ++t) k += rng_.bernoulli(p) ? 1 : 0;

    const int home = draw_community(year, -1);
    int misses = 0;
    while (static_cast<int>(chosen.size()) < k && misses < 20 && home >= 0) {
      const double r = rng_.uniform();
      int candidate = -1;
      if (r < cfg_.closure_rate && !chosen.empty()) {
        candidate = draw_closure(chosen);
      } else if (r < cfg_.closure_rate + cfg_.cross_community_rate) {
        const int other = draw_community(year, home);
        if (other >= 0) candidate = draw_from_community(other, year, chosen);
      } else {
        candidate = draw_from_community(home, year, chosen);
      }
      if (candidate < 0 || !active(candidate, year) ||
          std::find(chosen.begin(), chosen.end(), candidate) != chosen.end()) {
        ++misses;
        continue;
      }
      chosen.push_back(candidate);
    }

    // Planted pairs stay apart until their burst.
    for (const auto& pb : cfg_.pair_bursts) {
      if (year >= pb.start_year) continue;
      const bool has_first = std::find(chosen.begin(), chosen.end(), pb.first) != chosen.end();
      auto second = std::find(chosen.begin(), chosen.end(), pb.second);
      if (has_first && second != chosen.end()) chosen.erase(second);
    }
    if (chosen.empty()) {
      for (int c = 0; c < cfg_.n_concepts; ++c) {
        if (active(c, year)) {
          chosen.push_back(c);
          break;
        }
      }
    }
    if (chosen.empty()) throw Error(fmt::format("no concept is active in {}", year));
    return chosen;
  }

  void record(int year, const std::vector<int>& chosen) {
    for (int c : chosen) ++counts_[c];
    for (std::size_t a = 0; a < chosen.size(); ++a) {
      for (std::size_t b = a + 1; b < chosen.size(); ++b) {
        ++neighbors_[chosen[a]][chosen[b]];
        ++neighbors_[chosen[b]][chosen[a]];
      }
    }
    auto contains = [&](int c) { return std::find(chosen.begin(), chosen.end(), c) != chosen.end(); };
    for (std::size_t b = 0; b < cfg_.bursts.size(); ++b) {
      if (burst_first_[b] == 0 && contains(cfg_.bursts[b].concept_index)) burst_first_[b] = year;
    }
    for (std::size_t b = 0; b < cfg_.pair_bursts.size(); ++b) {
      const auto& pb = cfg_.pair_bursts[b];
      if (pair_first_[b] == 0 && contains(pb.first) && contains(pb.second)) pair_first_[b] = year;
    }
  }

  const SyntheticConfig& cfg_;
  Rng rng_;
  GeneratorLog* log_;
  std::vector<std::string> names_;
  std::vector<int> community_;
  std::vector<double> base_;
  std::vector<int> birth_;
  std::vector<long> counts_;
  std::vector<std::map<int, int>> neighbors_;
  std::vector<int> burst_first_;
  std::vector<int> pair_first_;
};

}  // namespace

void SyntheticConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw Error("invalid synthetic config: " + what);
  };
  require(n_concepts > 0, "n_concepts must be positive");
  require(total_docs > 0 || n_docs_per_year > 0, "document count must be positive");
  require(first_year <= last_year, "year range is empty");
  require(min_concepts_per_doc >= 1 && min_concepts_per_doc <= max_concepts_per_doc,
          "concepts-per-doc bounds");
  require(mean_concepts_per_doc >= min_concepts_per_doc && mean_concepts_per_doc <= max_concepts_per_doc,
          "mean concepts per doc outside bounds");
  require(max_concepts_per_doc <= n_concepts, "more concepts per doc than concepts");
  require(n_communities >= 1 && n_communities <= n_concepts, "n_communities");
  require(cross_community_rate >= 0 && closure_rate >= 0 && cross_community_rate + closure_rate <= 1.0,
          "mixing rates");
  for (const auto& b : bursts) {
    require(b.concept_index >= 0 && b.concept_index < n_concepts, "burst concept index");
    require(b.start_year >= first_year && b.start_year <= last_year, "burst start year outside range");
    require(b.intensity > 0 && b.intensity <= 1, "burst intensity must be in (0, 1]");
  }
  for (const auto& p : pair_bursts) {
    require(p.first >= 0 && p.first < n_concepts && p.second >= 0 && p.second < n_concepts &&
                p.first != p.second,
            "pair burst concepts");
    require(p.start_year > first_year && p.start_year <= last_year, "pair burst start year outside range");
    require(p.intensity > 0 && p.intensity <= 1, "pair burst intensity must be in (0, 1]");
    for (const auto& b : bursts) {
      require(b.concept_index != p.first && b.concept_index != p.second,
              "a concept cannot be both a burst and a pair-burst member");
    }
  }
}

int SyntheticConfig::docs_in_year(int year) const {
  if (year < first_year || year > last_year) return 0;
  if (total_docs <= 0) return n_docs_per_year;
  const int years = last_year - first_year + 1;
  const int base = total_docs / years;
  const int extra = total_docs % years;
  return base + ((year - first_year) < extra ? 1 : 0);
}

int SyntheticConfig::total_documents() const {
  if (total_docs > 0) return total_docs;
  return n_docs_per_year * (last_year - first_year + 1);
}

std::vector<Document> generate_synthetic_corpus(const SyntheticConfig& cfg, GeneratorLog* log) {
  cfg.validate();
  Generator gen(cfg, log);
  return gen.run();
}

std::vector<std::string> synthetic_concept_names(const SyntheticConfig& cfg) {
  return make_names(cfg.n_concepts, cfg.seed);
}

std::vector<Document> generate_scientist_corpus(const SyntheticConfig& cfg, int community, int n_docs,
                                                std::uint64_t seed) {
  cfg.validate();
  if (community < 0 || community >= cfg.n_communities) throw Error("scientist community out of range");
  const auto names = make_names(cfg.n_concepts, cfg.seed);
  Rng rng(seed ^ kScientistStream);
  std::vector<int> members;
  for (int c = community; c < cfg.n_concepts; c += cfg.n_communities) members.push_back(c);
  std::vector<Document> docs;
  for (int d = 0; d < n_docs; ++d) {
    const int k = std::min<int>(members.size(), 3 + static_cast<int>(rng.below(3)));
    std::vector<int> pool = members;
    rng.shuffle(pool);
    std::vector<int> chosen(pool.begin(), pool.begin() + k);
    // One out-of-community mention per paper keeps the profile non-trivial.
    int outsider = static_cast<int>(rng.below(cfg.n_concepts));
    if (outsider % cfg.n_communities != community) chosen.push_back(outsider);
    docs.push_back(render_document(rng, names, chosen, fmt::format("sci-{:03d}", d), cfg.last_year));
  }
  return docs;
}

SyntheticConfig small_fixture_config() {
  SyntheticConfig cfg;
  cfg.total_docs = 200;
  cfg.first_year = 1990;
  cfg.last_year = 2010;
  cfg.seed = 42;
  return cfg;
}

SyntheticConfig fixture_config() {
  SyntheticConfig cfg;
  cfg.total_docs = 5000;
  cfg.first_year = 1990;
  cfg.last_year = 2010;
  cfg.bursts = {{7, 2000, 0.25}};
  cfg.pair_bursts = {{3, 14, 2003, 0.2}};
  cfg.seed = 42;
  return cfg;
}

std::span<const std::string_view> synthetic_glue_words() { return kGlue; }

}  // namespace semnet
