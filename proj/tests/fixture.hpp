#pragma once

#include <filesystem>
#include <vector>

#include "semnet/corpus.hpp"
#include "semnet/network.hpp"
#include "semnet/vocab.hpp"

namespace fixture {

inline std::filesystem::path data_dir() { return SEMNET_DATA_DIR; }

struct Bundle {
  std::vector<semnet::Document> corpus;
  semnet::ConceptVocabulary vocab;
  semnet::TemporalNetwork net;
};

// The bundled evaluation fixture, built the way the pipeline builds it.
inline const Bundle& evaluation_fixture() {
  static const Bundle bundle = [] {
    Bundle b;
    b.corpus = semnet::load_corpus(data_dir() / "fixture_corpus.jsonl");
    const std::vector<std::filesystem::path> lists{data_dir() / "fixture_concepts.txt"};
    b.vocab = semnet::build_vocabulary(b.corpus, lists);
    b.net = semnet::build_network(b.corpus, b.vocab);
    return b;
  }();
  return bundle;
}

}  // namespace fixture
