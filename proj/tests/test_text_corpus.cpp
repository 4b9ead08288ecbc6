#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "fixture.hpp"
#include "semnet/corpus.hpp"
#include "semnet/error.hpp"
#include "semnet/stopwords.hpp"
#include "semnet/text.hpp"
#include "semnet/vocab.hpp"

using namespace semnet;

TEST_CASE("tokenize lowercases and splits on non-alphanumerics") {
  CHECK(text::tokenize("Quantum-Key Distribution, 2nd ed.") ==
        std::vector<std::string>{"quantum", "key", "distribution", "2nd", "ed"});
  CHECK(text::tokenize("  ").empty());
}

TEST_CASE("plural stripping") {
  CHECK(text::canonical_token("qubits") == "qubit");
  CHECK(text::canonical_token("gas") == "gas");
  CHECK(text::canonical_token("class") == "class");
  CHECK(text::canonical_token("series") == "serie");
  // Stripping is idempotent.
  CHECK(text::canonical_token(text::canonical_token("mechanics")) == "mechanic");
  CHECK(text::normalize_phrase("Classical  Mechanics") == "classical mechanic");
}

TEST_CASE("default stopwords include function words only as whole words") {
  const auto& sw = default_stopwords();
  CHECK(sw.count("of"));
  CHECK(sw.count("and"));
  CHECK_FALSE(sw.count("qubit"));
  CHECK_FALSE(sw.count("entanglement"));
}

namespace {

std::vector<Document> parse(const std::string& body) {
  std::istringstream in(body);
  return parse_corpus(in, {}, "test");
}

}  // namespace

TEST_CASE("parse_corpus keeps valid records in order") {
  const auto docs = parse(
      "{\"id\":\"a\",\"title\":\"T1\",\"abstract\":\"x\",\"year\":1995}\n"
      "\n"
      "## provenance line\n"
      "{\"id\":\"b\",\"title\":\"T2\",\"abstract\":\"\",\"year\":1996}\n"
      "{\"id\":\"c\",\"title\":\"T3\",\"abstract\":\"y\",\"year\":1990}\n");
  REQUIRE(docs.size() == 3);
  CHECK(docs[0].id == "a");
  CHECK(docs[1].abstract.empty());
  CHECK(docs[2].year == 1990);
}

TEST_CASE("parse_corpus errors name the line") {
  auto message = [](const std::string& body) {
    try {
      parse(body);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  const std::string ok = "{\"id\":\"a\",\"title\":\"T\",\"abstract\":\"x\",\"year\":1995}\n";
  CHECK(message(ok + "{\"id\":\"b\",\"title\":\"T\",\"abstract\":\"x\"}\n").find("test:2") != std::string::npos);
  CHECK(message(ok + ok).find("'a'") != std::string::npos);
  CHECK(message("{\"id\":\"a\",\"title\":\"T\",\"abstract\":\"x\",\"year\":1700}\n").find("test:1") !=
        std::string::npos);
  CHECK(message("{\"id\":\"a\",\"title\":\"\",\"abstract\":\"x\",\"year\":1995}\n") != "no error");
  CHECK(message("not json\n").find("test:1") != std::string::npos);
  CHECK(message("{\"id\":\"a\",\"title\":\"T\",\"abstract\":\"x\",\"year\":\"1995\"}\n") != "no error");
  CHECK(message("{\"id\":\"a\",\"title\":\"T\",\"abstract\":\"x\",\"year\":1995,\"extra\":1}\n") != "no error");
}

TEST_CASE("corpus write/read round trip") {
  std::vector<Document> docs{{"x1", "Title with \"quotes\"", "Abstract\nwith newline", 2001},
                             {"x2", "Unicode \xc3\xa9t\xc3\xa9", "", 1999}};
  std::ostringstream out;
  write_corpus(out, docs);
  CHECK(parse(out.str()) == docs);
}

TEST_CASE("synthetic generator is deterministic and respects the year range") {
  SyntheticConfig cfg;
  cfg.n_docs_per_year = 10;
  cfg.first_year = 1990;
  cfg.last_year = 1999;
  const auto a = generate_synthetic_corpus(cfg);
  const auto b = generate_synthetic_corpus(cfg);
  CHECK(a.size() == 100);
  CHECK(a == b);
  for (const auto& d : a) {
    CHECK(d.year >= 1990);
    CHECK(d.year <= 1999);
  }
  cfg.seed = 43;
  CHECK(generate_synthetic_corpus(cfg) != a);
}

TEST_CASE("planted burst concept is absent before its start year") {
  SyntheticConfig cfg;
  cfg.bursts.push_back({7, 2000, 0.5});
  GeneratorLog log;
  const auto docs = generate_synthetic_corpus(cfg, &log);
  const auto name = log.concept_names[7];
  auto mentions = [&](const Document& d) {
    const auto tokens = text::normalize_tokens(d.title + " . " + d.abstract);
    const auto phrase = text::normalize_tokens(name);
    return std::search(tokens.begin(), tokens.end(), phrase.begin(), phrase.end()) != tokens.end();
  };
  int before = 0, after = 0;
  for (const auto& d : docs) {
    if (!mentions(d)) continue;
    if (d.year < 2000) ++before;
    else if (d.year <= 2004) ++after;
  }
  CHECK(before == 0);
  CHECK(after >= 1);
  CHECK(log.burst_first_year[0] == 2000);
}

TEST_CASE("invalid synthetic configs are rejected") {
  SyntheticConfig cfg;
  cfg.n_concepts = 0;
  CHECK_THROWS_AS(generate_synthetic_corpus(cfg), Error);
  cfg = SyntheticConfig{};
  cfg.bursts.push_back({7, 2050, 0.3});
  CHECK_THROWS_AS(generate_synthetic_corpus(cfg), Error);
}

TEST_CASE("bundled fixtures equal their generators") {
  const auto small = load_corpus(fixture::data_dir() / "fixture_small.jsonl");
  CHECK(small.size() == 200);
  int lo = 3000, hi = 0;
  for (const auto& d : small) {
    lo = std::min(lo, d.year);
    hi = std::max(hi, d.year);
  }
  CHECK(lo == 1990);
  CHECK(hi == 2010);
  CHECK(small == generate_synthetic_corpus(small_fixture_config()));

  const auto big = load_corpus(fixture::data_dir() / "fixture_corpus.jsonl");
  CHECK(big.size() == 5000);
  CHECK(big == generate_synthetic_corpus(fixture_config()));

  const auto scientist = load_corpus(fixture::data_dir() / "fixture_scientist.jsonl");
  CHECK(scientist == generate_scientist_corpus(fixture_config(), 0, 5, 42));

  // The bundled concept list is the generator's concept list.
  const auto list = read_concept_list(fixture::data_dir() / "fixture_concepts.txt");
  const auto names = synthetic_concept_names(fixture_config());
  REQUIRE(list.size() == names.size());
  for (std::size_t k = 0; k < names.size(); ++k) CHECK(list[k].front() == names[k]);
}

TEST_CASE("synthetic text is built from concept phrases and stopwords only") {
  const auto cfg = small_fixture_config();
  const auto names = synthetic_concept_names(cfg);
  std::set<std::string> concept_words;
  for (const auto& n : names) {
    for (const auto& t : text::tokenize(n)) concept_words.insert(t);
  }
  for (const auto& d : generate_synthetic_corpus(cfg)) {
    for (const auto& t : text::tokenize(d.title + " " + d.abstract)) {
      CHECK((concept_words.count(t) || default_stopwords().count(t)));
    }
  }
}
