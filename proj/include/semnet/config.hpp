#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "semnet/evaluation.hpp"
#include "semnet/predictor.hpp"
#include "semnet/vocab.hpp"

namespace semnet {

inline constexpr const char* kToolVersion = "0.1.0";

// Every setting the tools understand. Relative paths in a config file are
// resolved against the file's directory.
struct PipelineConfig {
  std::filesystem::path corpus;
  std::vector<std::filesystem::path> human_lists;
  std::vector<std::filesystem::path> blocklists;
  std::filesystem::path vocab;
  std::filesystem::path network;
  std::filesystem::path model;
  std::filesystem::path scientist;
  std::filesystem::path out_dir = "out";

  int train_year = 1996;
  int validate_year = 2001;
  int horizon = 5;
  int year = 0;  // prediction / suggestion year; 0 means the last data year

  int rake_top_k = 2000;
  int min_doc_freq = 3;
  int max_phrase_len = 5;

  int h1 = 64;
  int h2 = 64;
  double learning_rate = 1e-3;
  int batch_size = 128;
  int epochs = 50;
  double neg_ratio = 5.0;
  std::string optimizer = "adam";
  bool filter_training = false;
  double max_cosine = 0.2;

  std::string filter = "cos<0.2";
  std::string preset = "unrestricted";
  int top = 10;
  int trend_window = 5;
  int trend_top = 3;

  std::uint64_t seed = 42;
  unsigned threads = 1;
  bool quiet = false;

  void validate() const;
  TrainConfig train_config() const;
  ProtocolConfig protocol_config() const;
  FeatureOptions feature_options() const;
  VocabularyOptions vocabulary_options() const;
};

// Known keys, in canonical order.
const std::vector<std::string>& config_keys();

// Applies one `key = value` setting; throws Error on an unknown key or a bad value.
void apply_setting(PipelineConfig& cfg, const std::string& key, const std::string& value,
                   const std::filesystem::path& base_dir = {});

// `key = value` lines; blank lines and '#' comments are ignored.
std::vector<std::pair<std::string, std::string>> parse_config_text(std::istream& in,
                                                                   const std::string& source = "<stream>");
PipelineConfig load_config(const std::filesystem::path& path);

// Settings that influence results, as `key=value` lines. Paths, thread count
// and verbosity are left out, so relocating files or changing the worker
// count keeps the hash.
std::string canonical_settings(const PipelineConfig& cfg);
std::uint64_t config_hash(const PipelineConfig& cfg);
std::string provenance(const PipelineConfig& cfg);  // "semnet-tools <ver> config=<hex> seed=<n>"

struct ProvenanceInfo {
  std::string version;
  std::string config_hash;
  std::uint64_t seed = 0;
};

// Reads the header of a text, JSON or SVG artifact.
ProvenanceInfo read_provenance(const std::filesystem::path& artifact);

}  // namespace semnet
