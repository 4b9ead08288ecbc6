#include "semnet/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <regex>
#include <sstream>

#include <fmt/format.h>

#include "semnet/error.hpp"
#include "semnet/suggest.hpp"

namespace semnet {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw Error(fmt::format("setting '{}': '{}' is not a valid number", key, value));
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw Error(fmt::format("setting '{}': '{}' is not a boolean", key, value));
}

std::filesystem::path resolve(const std::string& value, const std::filesystem::path& base) {
  std::filesystem::path p(value);
  if (p.is_relative() && !base.empty()) p = base / p;
  return p.lexically_normal();
}

std::vector<std::filesystem::path> resolve_list(const std::string& value, const std::filesystem::path& base) {
  std::vector<std::filesystem::path> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(resolve(item, base));
  }
  return out;
}

struct Key {
  std::string name;
  bool hashed;  // false for paths and runtime knobs
  std::function<void(PipelineConfig&, const std::string&, const std::filesystem::path&)> set;
  std::function<std::string(const PipelineConfig&)> get;
};

std::string fmt_double(double v) { return fmt::format("{}", v); }

const std::vector<Key>& key_table() {
  static const std::vector<Key> keys = [] {
    std::vector<Key> k;
    auto path_key = [&](const char* name, std::filesystem::path PipelineConfig::*field) {
      k.push_back({name, false,
                   [field](PipelineConfig& c, const std::string& v, const std::filesystem::path& b) {
                     c.*field = resolve(v, b);
                   },
                   [field](const PipelineConfig& c) { return (c.*field).string(); }});
    };
    auto list_key = [&](const char* name, std::vector<std::filesystem::path> PipelineConfig::*field) {
      k.push_back({name, false,
                   [field](PipelineConfig& c, const std::string& v, const std::filesystem::path& b) {
                     c.*field = resolve_list(v, b);
                   },
                   [field](const PipelineConfig& c) {
                     std::string s;
                     for (const auto& p : c.*field) s += (s.empty() ? "" : ",") + p.string();
                     return s;
                   }});
    };
    auto int_key = [&](const char* name, int PipelineConfig::*field) {
      k.push_back({name, true,
                   [field, name](PipelineConfig& c, const std::string& v, const std::filesystem::path&) {
                     c.*field = parse_number<int>(name, v);
                   },
                   [field](const PipelineConfig& c) { return std::to_string(c.*field); }});
    };
    auto double_key = [&](const char* name, double PipelineConfig::*field) {
      k.push_back({name, true,
                   [field, name](PipelineConfig& c, const std::string& v, const std::filesystem::path&) {
                     c.*field = parse_number<double>(name, v);
                   },
                   [field](const PipelineConfig& c) { return fmt_double(c.*field); }});
    };
    auto string_key = [&](const char* name, std::string PipelineConfig::*field) {
      k.push_back({name, true,
                   [field](PipelineConfig& c, const std::string& v, const std::filesystem::path&) { c.*field = v; },
                   [field](const PipelineConfig& c) { return c.*field; }});
    };

    path_key("corpus", &PipelineConfig::corpus);
    list_key("human_list", &PipelineConfig::human_lists);
    list_key("blocklist", &PipelineConfig::blocklists);
    path_key("vocab", &PipelineConfig::vocab);
    path_key("network", &PipelineConfig::network);
    path_key("model", &PipelineConfig::model);
    path_key("scientist", &PipelineConfig::scientist);
    path_key("out_dir", &PipelineConfig::out_dir);
    int_key("train_year", &PipelineConfig::train_year);
    int_key("validate_year", &PipelineConfig::validate_year);
    int_key("horizon", &PipelineConfig::horizon);
    int_key("year", &PipelineConfig::year);
    int_key("rake_top_k", &PipelineConfig::rake_top_k);
    int_key("min_doc_freq", &PipelineConfig::min_doc_freq);
    int_key("max_phrase_len", &PipelineConfig::max_phrase_len);
    int_key("h1", &PipelineConfig::h1);
    int_key("h2", &PipelineConfig::h2);
    double_key("learning_rate", &PipelineConfig::learning_rate);
    int_key("batch_size", &PipelineConfig::batch_size);
    int_key("epochs", &PipelineConfig::epochs);
    double_key("neg_ratio", &PipelineConfig::neg_ratio);
    string_key("optimizer", &PipelineConfig::optimizer);
    k.push_back({"filter_training", true,
                 [](PipelineConfig& c, const std::string& v, const std::filesystem::path&) {
                   c.filter_training = parse_bool("filter_training", v);
                 },
                 [](const PipelineConfig& c) { return std::string(c.filter_training ? "true" : "false"); }});
    double_key("max_cosine", &PipelineConfig::max_cosine);
    string_key("filter", &PipelineConfig::filter);
    string_key("preset", &PipelineConfig::preset);
    int_key("top", &PipelineConfig::top);
    int_key("trend_window", &PipelineConfig::trend_window);
    int_key("trend_top", &PipelineConfig::trend_top);
    k.push_back({"seed", true,
                 [](PipelineConfig& c, const std::string& v, const std::filesystem::path&) {
                   c.seed = parse_number<std::uint64_t>("seed", v);
                 },
                 [](const PipelineConfig& c) { return std::to_string(c.seed); }});
    k.push_back({"threads", false,
                 [](PipelineConfig& c, const std::string& v, const std::filesystem::path&) {
                   c.threads = parse_number<unsigned>("threads", v);
                 },
                 [](const PipelineConfig& c) { return std::to_string(c.threads); }});
    k.push_back({"quiet", false,
                 [](PipelineConfig& c, const std::string& v, const std::filesystem::path&) {
                   c.quiet = parse_bool("quiet", v);
                 },
                 [](const PipelineConfig& c) { return std::string(c.quiet ? "true" : "false"); }});
    return k;
  }();
  return keys;
}

}  // namespace

void PipelineConfig::validate() const {
  if (horizon < 1) throw Error("horizon must be at least 1");
  if (threads < 1) throw Error("threads must be at least 1");
  if (top < 1 || trend_top < 1) throw Error("top counts must be at least 1");
  if (trend_window < 1) throw Error("trend window must be at least 1");
  if (optimizer != "adam" && optimizer != "sgd") throw Error(fmt::format("unknown optimizer '{}'", optimizer));
  if (!(max_cosine > 0.0)) throw Error("max_cosine must be positive");
  if (rake_top_k < 0 || min_doc_freq < 1 || max_phrase_len < 1) throw Error("invalid vocabulary parameters");
  train_config().validate();
  find_preset(preset);
  parse_filter(filter);
}

TrainConfig PipelineConfig::train_config() const {
  TrainConfig t;
  t.h1 = h1;
  t.h2 = h2;
  t.learning_rate = learning_rate;
  t.batch_size = batch_size;
  t.epochs = epochs;
  t.neg_ratio = neg_ratio;
  t.seed = seed;
  t.optimizer = optimizer == "sgd" ? Optimizer::sgd : Optimizer::adam;
  return t;
}

FeatureOptions PipelineConfig::feature_options() const {
  FeatureOptions f;
  f.threads = threads;
  return f;
}

ProtocolConfig PipelineConfig::protocol_config() const {
  ProtocolConfig p;
  p.horizon = horizon;
  p.max_cosine = max_cosine;
  p.filter_training = filter_training;
  p.train = train_config();
  p.features = feature_options();
  p.control_seed = seed + 1;
  return p;
}

VocabularyOptions PipelineConfig::vocabulary_options() const {
  VocabularyOptions v;
  v.rake_top_k = rake_top_k;
  v.min_doc_freq = min_doc_freq;
  v.max_phrase_len = max_phrase_len;
  v.blocklists = blocklists;
  return v;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& k : key_table()) v.push_back(k.name);
    return v;
  }();
  return names;
}

void apply_setting(PipelineConfig& cfg, const std::string& key, const std::string& value,
                   const std::filesystem::path& base_dir) {
  for (const auto& k : key_table()) {
    if (k.name == key) {
      k.set(cfg, value, base_dir);
      return;
    }
  }
  throw Error(fmt::format("unknown setting '{}'", key));
}

std::vector<std::pair<std::string, std::string>> parse_config_text(std::istream& in, const std::string& source) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw Error(fmt::format("{}:{}: expected 'key = value', got '{}'", source, number, text));
    }
    auto key = trim(text.substr(0, eq));
    auto value = trim(text.substr(eq + 1));
    if (key.empty()) throw Error(fmt::format("{}:{}: missing key", source, number));
    if (std::find(config_keys().begin(), config_keys().end(), key) == config_keys().end()) {
      throw Error(fmt::format("{}:{}: unknown setting '{}'", source, number, key));
    }
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open config file '{}'", path.string()));
  PipelineConfig cfg;
  const auto base = path.parent_path();
  // Default output directory lives next to the config.
  cfg.out_dir = resolve("out", base);
  for (const auto& [key, value] : parse_config_text(in, path.string())) {
    try {
      apply_setting(cfg, key, value, base);
    } catch (const Error& e) {
      throw Error(fmt::format("{}: {}", path.string(), e.what()));
    }
  }
  return cfg;
}

std::string canonical_settings(const PipelineConfig& cfg) {
  std::string out;
  for (const auto& k : key_table()) {
    if (k.hashed) out += k.name + "=" + k.get(cfg) + "\n";
  }
  return out;
}

std::uint64_t config_hash(const PipelineConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a 64
  for (unsigned char ch : canonical_settings(cfg)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string provenance(const PipelineConfig& cfg) {
  return fmt::format("semnet-tools {} config={:016x} seed={}", kToolVersion, config_hash(cfg), cfg.seed);
}

ProvenanceInfo read_provenance(const std::filesystem::path& artifact) {
  std::ifstream in(artifact, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}'", artifact.string()));
  std::string head(4096, '\0');
  in.read(head.data(), static_cast<std::streamsize>(head.size()));
  head.resize(static_cast<std::size_t>(in.gcount()));
  static const std::regex pattern(R"(semnet-tools (\S+) config=([0-9a-f]{16}) seed=(\d+))");
  std::smatch m;
  if (!std::regex_search(head, m, pattern)) {
    throw Error(fmt::format("'{}' has no provenance header", artifact.string()));
  }
  return {m[1].str(), m[2].str(), parse_number<std::uint64_t>("seed", m[3].str())};
}

}  // namespace semnet
