#include "semnet/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "semnet/config.hpp"
#include "semnet/corpus.hpp"
#include "semnet/error.hpp"
#include "semnet/evaluation.hpp"
#include "semnet/features.hpp"
#include "semnet/network.hpp"
#include "semnet/predictor.hpp"
#include "semnet/suggest.hpp"
#include "semnet/svg.hpp"
#include "semnet/trends.hpp"
#include "semnet/vocab.hpp"

namespace semnet::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

// Raised after parsing when a required setting is still missing.
struct UsageError : std::runtime_error {
  UsageError(const std::string& message, CLI::App* app) : std::runtime_error(message), app(app) {}
  CLI::App* app;
};

struct Invocation {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
  bool quiet = false;
  std::string out;
  std::string svg;
  // Subcommand specifics.
  std::string kind = "fixture";
  std::string concepts_out;
  std::string log_out;
  int community = 0;
  int docs = 5;
  std::string pairs = "all";
  int label_horizon = 0;
  std::size_t limit = 0;
  std::vector<std::string> files;
};

void add_setting(CLI::App* app, Invocation& inv, const std::string& flags, const std::string& key,
                 const std::string& help) {
  app->add_option_function<std::string>(
      flags, [&inv, key](const std::string& v) { inv.overrides.emplace_back(key, v); }, help);
}

void add_list_setting(CLI::App* app, Invocation& inv, const std::string& flags, const std::string& key,
                      const std::string& help) {
  app->add_option_function<std::vector<std::string>>(
      flags,
      [&inv, key](const std::vector<std::string>& v) {
        std::string joined;
        for (const auto& s : v) joined += (joined.empty() ? "" : ",") + s;
        inv.overrides.emplace_back(key, joined);
      },
      help);
}

void add_globals(CLI::App* app, Invocation& inv) {
  app->add_option("--config,--cfg", inv.config_path, "key = value configuration file");
  add_setting(app, inv, "--seed", "seed", "global random seed");
  add_setting(app, inv, "--threads", "threads", "worker threads (results do not depend on it)");
  app->add_flag("--quiet", inv.quiet, "suppress progress messages");
}

void add_training(CLI::App* app, Invocation& inv) {
  add_setting(app, inv, "--horizon", "horizon", "prediction horizon in years");
  add_setting(app, inv, "--h1", "h1", "first hidden layer width");
  add_setting(app, inv, "--h2", "h2", "second hidden layer width");
  add_setting(app, inv, "--lr,--learning-rate", "learning_rate", "learning rate");
  add_setting(app, inv, "--batch-size", "batch_size", "minibatch size");
  add_setting(app, inv, "--epochs", "epochs", "training epochs");
  add_setting(app, inv, "--neg-ratio", "neg_ratio", "negatives per positive in the training set");
  add_setting(app, inv, "--optimizer", "optimizer", "adam or sgd");
  add_setting(app, inv, "--filter-training", "filter_training", "apply the cosine filter to training pairs too");
}

PipelineConfig resolve_config(const Invocation& inv) {
  PipelineConfig cfg = inv.config_path.empty() ? PipelineConfig{} : load_config(inv.config_path);
  for (const auto& [key, value] : inv.overrides) apply_setting(cfg, key, value);
  if (inv.quiet) cfg.quiet = true;
  cfg.validate();
  return cfg;
}

void require(const fs::path& p, const std::string& flag, CLI::App* app) {
  if (p.empty()) throw UsageError(fmt::format("missing {}", flag), app);
}

void require(const std::string& s, const std::string& flag, CLI::App* app) {
  if (s.empty()) throw UsageError(fmt::format("missing {}", flag), app);
}

class Runner {
 public:
  Runner(PipelineConfig cfg, std::ostream& out, std::ostream& err) : cfg_(std::move(cfg)), out_(out), err_(err) {}

  void log(const std::string& message) const {
    if (!cfg_.quiet) err_ << message << '\n';
  }

  std::string header() const { return "## " + provenance(cfg_) + "\n"; }

  void write_file(const fs::path& path, const std::string& body) const {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(fmt::format("cannot write '{}'", path.string()));
    f << body;
    if (!f) throw Error(fmt::format("write to '{}' failed", path.string()));
  }

  void write_text(const fs::path& path, const std::string& body) const { write_file(path, header() + body); }

  void write_json(const fs::path& path, const Json& body) const {
    Json j;
    j["provenance"] = provenance(cfg_);
    for (const auto& [k, v] : body.items()) j[k] = v;
    write_file(path, j.dump(1) + "\n");
  }

  void write_svg(const fs::path& path, const std::string& svg) const { write_file(path, svg); }

  std::vector<Document> corpus() const {
    auto docs = load_corpus(cfg_.corpus);
    log(fmt::format("corpus: {} documents from {}", docs.size(), cfg_.corpus.string()));
    return docs;
  }

  ConceptVocabulary build_vocab(std::span<const Document> docs) const {
    auto vocab = build_vocabulary(docs, cfg_.human_lists, cfg_.vocabulary_options());
    log(fmt::format("vocabulary: {} concepts", vocab.size()));
    return vocab;
  }

  void save_vocab(const fs::path& path, const ConceptVocabulary& vocab) const {
    std::ostringstream body;
    write_vocabulary(body, vocab);
    write_text(path, body.str());
  }

  TemporalNetwork build_net(std::span<const Document> docs, const ConceptVocabulary& vocab) const {
    auto net = build_network(docs, vocab, cfg_.threads);
    log(fmt::format("network: {} concepts, {} linked pairs, years {}-{}", net.size(), net.edges().size(),
                    net.first_year(), net.last_year()));
    return net;
  }

  void save_net(const fs::path& path, const TemporalNetwork& net) const {
    std::ostringstream body;
    write_network(body, net);
    write_text(path, body.str());
  }

  LinkPredictorFit train(const TemporalNetwork& net) const {
    auto fit = train_link_predictor(net, cfg_.train_year, cfg_.horizon, cfg_.train_config(), cfg_.feature_options(),
                                    cfg_.filter_training ? std::optional<double>(cfg_.max_cosine) : std::nullopt);
    log(fmt::format("trained on {} examples ({} positive) at {}; final loss {:.6f}", fit.examples, fit.positives,
                    cfg_.train_year, fit.result.loss_history.back()));
    return fit;
  }

  void save_model(const fs::path& path, const MlpModel& model) const { write_json(path, model_to_json(model)); }

  void save_report(const fs::path& json_path, const fs::path& svg_path, const ProtocolReport& report) const {
    write_json(json_path, report_to_json(report));
    log(fmt::format("AUC {:.4f} over {} candidates ({} positive); cosine baseline {:.4f}, walk baseline {:.4f}, "
                    "shuffled control {:.4f}",
                    report.curve.auc, report.candidates, report.positives, report.auc_cosine, report.auc_walks,
                    report.auc_shuffled));
    if (!svg_path.empty()) write_svg(svg_path, svg::roc_plot(report.curve, provenance(cfg_)));
  }

  void trends(const TemporalNetwork& net, const fs::path& csv_path, const fs::path& svg_path) const {
    const auto concepts = emerging_concepts(net, cfg_.trend_window);
    const auto pairs = emerging_pairs(net, cfg_.trend_window);
    std::ostringstream body;
    write_trends_csv(body, net, concepts, pairs, cfg_.trend_top);
    write_text(csv_path, body.str());
    log(fmt::format("trends: {} concept years, {} pair years", concepts.size(), pairs.size()));
    if (!svg_path.empty()) {
      write_svg(svg_path, svg::trends_timeline(net.names(), concepts, pairs, cfg_.trend_top, provenance(cfg_)));
    }
  }

  int year_or_last(const TemporalNetwork& net) const {
    const int y = cfg_.year == 0 ? net.last_year() : cfg_.year;
    if (y < net.first_year() || y > net.last_year()) {
      throw Error(fmt::format("year {} is outside the network's range {}-{}", y, net.first_year(), net.last_year()));
    }
    return y;
  }

  void suggest(const TemporalNetwork& net, const MlpModel& model, const fs::path& csv_path,
               const fs::path& svg_path) const {
    const int year = year_or_last(net);
    const FeatureExtractor extractor(net, year, cfg_.feature_options());
    std::optional<ResearchProfile> profile;
    if (!cfg_.scientist.empty()) {
      const auto docs = load_corpus(cfg_.scientist);
      ConceptVocabulary vocab = cfg_.vocab.empty() ? names_vocabulary(net) : read_vocabulary(cfg_.vocab);
      if (static_cast<int>(vocab.size()) != net.size()) {
        throw Error(fmt::format("vocabulary has {} concepts but the network has {}", vocab.size(), net.size()));
      }
      profile = research_profile(docs, vocab, corpus_totals(net));
      log(fmt::format("profile: {} documents, {} key concepts", docs.size(), profile->key_concepts.size()));
      if (profile->key_concepts.empty()) throw Error("the scientist profile has no concept with ratio above 1");
    }
    const auto pairs = candidate_pairs(profile ? &*profile : nullptr, extractor.snapshot());
    auto records = make_records(extractor, model, pairs);
    const Preset& preset = find_preset(cfg_.preset);
    if (records.size() >= 2) {
      const auto scores = outlier_scores(records, preset.space);
      for (std::size_t k = 0; k < records.size(); ++k) records[k].outlier = scores[k];
    }
    const auto ranked = filter_and_rank(records, preset.thresholds, preset.key, static_cast<std::size_t>(cfg_.top));
    std::ostringstream body;
    write_suggestions_csv(body, net.names(), ranked);
    write_text(csv_path, body.str());
    log(fmt::format("suggestions: {} candidates at {}, preset {}, {} reported", records.size(), year, preset.name,
                    ranked.size()));
    if (!svg_path.empty()) {
      // Keep the background cloud to a few thousand dots.
      std::vector<SuggestionRecord> cloud;
      const std::size_t stride = std::max<std::size_t>(1, records.size() / 4000);
      for (std::size_t k = 0; k < records.size(); k += stride) cloud.push_back(records[k]);
      write_svg(svg_path, svg::projection_panels(cloud, ranked, provenance(cfg_)));
    }
  }

  static ConceptVocabulary names_vocabulary(const TemporalNetwork& net) {
    std::vector<Concept> concepts;
    for (int c = 0; c < net.size(); ++c) concepts.push_back({c, net.names()[c], {}});
    return ConceptVocabulary(std::move(concepts));
  }

  const PipelineConfig& cfg() const { return cfg_; }
  std::ostream& out() const { return out_; }

 private:
  PipelineConfig cfg_;
  std::ostream& out_;
  std::ostream& err_;
};

std::string feature_row(const PairFeatureVector& v) {
  std::string row = fmt::format("{},{},{}", v.i, v.j, v.year);
  for (double p : v.p) row += fmt::format(",{:.9g}", p);
  return row;
}

std::vector<ConceptPair> read_pairs(const fs::path& path, int n) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open pair list '{}'", path.string()));
  std::vector<ConceptPair> pairs;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    int i = -1, j = -1;
    if (!(ss >> i >> j) || i < 0 || j < 0 || i >= n || j >= n || i == j) {
      throw Error(fmt::format("{}:{}: expected two distinct concept ids below {}", path.string(), number, n));
    }
    pairs.push_back(ordered_pair(i, j));
  }
  return pairs;
}

int dispatch(CLI::App& app, const Invocation& inv, std::ostream& out, std::ostream& err) {
  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  Runner run(resolve_config(inv), out, err);
  const auto& cfg = run.cfg();
  auto out_path = [&] {
    require(inv.out, "--out", sub);
    return fs::path(inv.out);
  };

  if (name == "synth") {
    require(inv.out, "--out", sub);
    SyntheticConfig sc;
    if (inv.kind == "fixture" || inv.kind == "scientist") {
      sc = fixture_config();
    } else if (inv.kind == "small") {
      sc = small_fixture_config();
    } else {
      throw UsageError(fmt::format("unknown --kind '{}'; use fixture, small or scientist", inv.kind), sub);
    }
    sc.seed = cfg.seed;
    GeneratorLog log;
    std::vector<Document> docs = inv.kind == "scientist"
                                     ? generate_scientist_corpus(sc, inv.community, inv.docs, cfg.seed)
                                     : generate_synthetic_corpus(sc, &log);
    std::ostringstream body;
    write_corpus(body, docs);
    run.write_text(inv.out, body.str());
    run.log(fmt::format("synth: wrote {} documents to {}", docs.size(), inv.out));
    if (!inv.concepts_out.empty()) {
      std::string list;
      for (const auto& n : synthetic_concept_names(sc)) list += n + "\n";
      run.write_text(inv.concepts_out, list);
    }
    if (!inv.log_out.empty()) {
      if (inv.kind == "scientist") throw UsageError("--log is not available for scientist corpora", sub);
      Json j;
      j["concept_names"] = log.concept_names;
      j["birth_year"] = log.birth_year;
      j["community"] = log.community;
      j["burst_first_year"] = log.burst_first_year;
      j["pair_burst_first_year"] = log.pair_burst_first_year;
      run.write_json(inv.log_out, j);
    }
    return 0;
  }

  if (name == "build-vocab") {
    require(cfg.corpus, "--corpus", sub);
    const auto path = out_path();
    const auto docs = run.corpus();
    run.save_vocab(path, run.build_vocab(docs));
    return 0;
  }

  if (name == "build-net") {
    require(cfg.corpus, "--corpus", sub);
    require(cfg.vocab, "--vocab", sub);
    const auto path = out_path();
    const auto docs = run.corpus();
    run.save_net(path, run.build_net(docs, read_vocabulary(cfg.vocab)));
    return 0;
  }

  if (name == "features") {
    require(cfg.network, "--net", sub);
    const auto path = out_path();
    const auto net = load_network(cfg.network);
    const int year = run.year_or_last(net);
    const FeatureExtractor extractor(net, year, cfg.feature_options());
    const auto pairs = inv.pairs == "all" ? extractor.unconnected_pairs() : read_pairs(inv.pairs, net.size());
    std::optional<Snapshot> future;
    if (inv.label_horizon > 0) {
      if (year + inv.label_horizon > net.last_year()) {
        throw Error(fmt::format("label year {} is past the last data year {}", year + inv.label_horizon,
                                net.last_year()));
      }
      future = snapshot(net, year + inv.label_horizon);
    }
    const auto vectors = extractor.compute_all(pairs);
    std::string body = "i,j,year";
    for (int k = 1; k <= kFeatureCount; ++k) body += fmt::format(",p{}", k);
    body += future ? ",label\n" : "\n";
    for (const auto& v : vectors) {
      body += feature_row(v);
      if (future) body += future->connected(v.i, v.j) ? ",1" : ",-1";
      body += '\n';
    }
    run.write_text(path, body);
    run.log(fmt::format("features: {} pairs at {}", vectors.size(), year));
    return 0;
  }

  if (name == "train") {
    require(cfg.network, "--net", sub);
    const auto path = out_path();
    const auto net = load_network(cfg.network);
    run.save_model(path, run.train(net).result.model);
    return 0;
  }

  if (name == "predict") {
    require(cfg.network, "--net", sub);
    require(cfg.model, "--model", sub);
    const auto path = out_path();
    const auto net = load_network(cfg.network);
    const auto model = load_model(cfg.model);
    const int year = run.year_or_last(net);
    const FeatureExtractor extractor(net, year, cfg.feature_options());
    auto ranked = predict_and_rank(model, extractor, parse_filter(cfg.filter));
    if (inv.limit > 0 && ranked.size() > inv.limit) ranked.resize(inv.limit);
    std::string body = "rank,i,j,concept_a,concept_b,score\n";
    for (std::size_t k = 0; k < ranked.size(); ++k) {
      const auto& r = ranked[k];
      body += fmt::format("{},{},{},{},{},{:.9g}\n", k + 1, r.pair.first, r.pair.second,
                          net.names()[r.pair.first], net.names()[r.pair.second], r.score);
    }
    run.write_text(path, body);
    run.log(fmt::format("predict: ranked {} pairs at {}", ranked.size(), year));
    return 0;
  }

  if (name == "eval") {
    require(cfg.network, "--net", sub);
    const auto path = out_path();
    const auto net = load_network(cfg.network);
    const auto report = evaluate_protocol(net, cfg.train_year, cfg.validate_year, cfg.protocol_config());
    run.save_report(path, inv.svg, report);
    return 0;
  }

  if (name == "trends") {
    require(cfg.network, "--net", sub);
    const auto path = out_path();
    run.trends(load_network(cfg.network), path, inv.svg);
    return 0;
  }

  if (name == "suggest") {
    require(cfg.network, "--net", sub);
    require(cfg.model, "--model", sub);
    const auto path = out_path();
    run.suggest(load_network(cfg.network), load_model(cfg.model), path, inv.svg);
    return 0;
  }

  if (name == "pipeline") {
    require(cfg.corpus, "corpus (config or --corpus)", sub);
    const fs::path dir = cfg.out_dir;
    const auto docs = run.corpus();
    const auto vocab = run.build_vocab(docs);
    run.save_vocab(dir / "vocab.txt", vocab);
    const auto net = run.build_net(docs, vocab);
    run.save_net(dir / "network.tsv", net);
    auto fit = run.train(net);
    run.save_model(dir / "model.json", fit.result.model);
    auto report = evaluate_model(net, fit.result.model, cfg.validate_year, cfg.protocol_config());
    report.train_year = cfg.train_year;
    report.training_examples = fit.examples;
    report.training_positives = fit.positives;
    run.save_report(dir / "eval_report.json", dir / "roc.svg", report);
    run.trends(net, dir / "trends.csv", dir / "trends.svg");
    run.suggest(net, fit.result.model, dir / "suggestions.csv", dir / "suggestions.svg");
    run.log(fmt::format("pipeline: artifacts in {}", dir.string()));
    return 0;
  }

  if (name == "verify") {
    if (inv.files.empty()) throw UsageError("no artifacts given", sub);
    const auto expected = fmt::format("{:016x}", config_hash(cfg));
    int bad = 0;
    for (const auto& f : inv.files) {
      const auto info = read_provenance(f);
      const bool ok = info.config_hash == expected && info.seed == cfg.seed;
      if (!ok) ++bad;
      out << fmt::format("{} {} (config={} seed={})\n", ok ? "ok" : "MISMATCH", f, info.config_hash, info.seed);
    }
    if (bad > 0) throw Error(fmt::format("{} artifact(s) do not match config hash {}", bad, expected));
    return 0;
  }

  throw UsageError(fmt::format("unknown subcommand '{}'", name), &app);
}

}  // namespace

int run_subcommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semantic-network link prediction toolkit", "semnet"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Invocation inv;

  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
  add_globals(synth, inv);
  synth->add_option("--kind", inv.kind, "fixture, small or scientist")->capture_default_str();
  synth->add_option("--out", inv.out, "output corpus (JSON lines)");
  synth->add_option("--concepts-out", inv.concepts_out, "also write the planted concept names as a concept list");
  synth->add_option("--log", inv.log_out, "also write the generator log (JSON)");
  synth->add_option("--community", inv.community, "community of the scientist corpus")->capture_default_str();
  synth->add_option("--docs", inv.docs, "documents in the scientist corpus")->capture_default_str();

  auto* vocab = app.add_subcommand("build-vocab", "build the concept vocabulary");
  add_globals(vocab, inv);
  add_setting(vocab, inv, "--corpus", "corpus", "corpus (JSON lines)");
  add_list_setting(vocab, inv, "--human-list", "human_list", "human concept lists");
  add_list_setting(vocab, inv, "--blocklist", "blocklist", "blocked phrases");
  add_setting(vocab, inv, "--top-k", "rake_top_k", "RAKE phrases to keep");
  add_setting(vocab, inv, "--min-doc-freq", "min_doc_freq", "minimum documents per RAKE phrase");
  add_setting(vocab, inv, "--max-phrase-len", "max_phrase_len", "maximum phrase length in tokens");
  vocab->add_option("--out", inv.out, "output vocabulary");

  auto* net = app.add_subcommand("build-net", "build the temporal co-occurrence network");
  add_globals(net, inv);
  add_setting(net, inv, "--corpus", "corpus", "corpus (JSON lines)");
  add_setting(net, inv, "--vocab", "vocab", "vocabulary file");
  net->add_option("--out", inv.out, "output network");

  auto* features = app.add_subcommand("features", "dump pair features");
  add_globals(features, inv);
  add_setting(features, inv, "--net", "network", "network file");
  add_setting(features, inv, "--year", "year", "snapshot year (default: last data year)");
  features->add_option("--pairs", inv.pairs, "'all' or a file of 'i,j' lines")->capture_default_str();
  features->add_option("--label-horizon", inv.label_horizon, "add a label column for links after this many years");
  features->add_option("--out", inv.out, "output CSV");

  auto* train = app.add_subcommand("train", "train the link predictor");
  add_globals(train, inv);
  add_setting(train, inv, "--net", "network", "network file");
  add_setting(train, inv, "--year", "train_year", "training year");
  add_training(train, inv);
  train->add_option("--out", inv.out, "output model");

  auto* predict = app.add_subcommand("predict", "rank unconnected pairs");
  add_globals(predict, inv);
  add_setting(predict, inv, "--net", "network", "network file");
  add_setting(predict, inv, "--model", "model", "model file");
  add_setting(predict, inv, "--year", "year", "snapshot year (default: last data year)");
  add_setting(predict, inv, "--filter", "filter", "candidate filter, e.g. cos<0.2 or all");
  predict->add_option("--limit", inv.limit, "keep only the best N pairs (0 = all)");
  predict->add_option("--out", inv.out, "output CSV");

  auto* eval = app.add_subcommand("eval", "train on the past, validate on the future");
  add_globals(eval, inv);
  add_setting(eval, inv, "--net", "network", "network file");
  add_setting(eval, inv, "--train-year", "train_year", "training year");
  add_setting(eval, inv, "--validate-year", "validate_year", "validation year");
  add_setting(eval, inv, "--max-cosine", "max_cosine", "validation candidates need cosine below this");
  add_training(eval, inv);
  eval->add_option("--out", inv.out, "output report (JSON)");
  eval->add_option("--svg", inv.svg, "ROC plot");

  auto* trends = app.add_subcommand("trends", "report emerging concepts and pairs");
  add_globals(trends, inv);
  add_setting(trends, inv, "--net", "network", "network file");
  add_setting(trends, inv, "--window", "trend_window", "growth window in years");
  add_setting(trends, inv, "--top", "trend_top", "entries per year and kind");
  trends->add_option("--out", inv.out, "output CSV");
  trends->add_option("--svg", inv.svg, "timeline plot");

  auto* suggest = app.add_subcommand("suggest", "personalized research suggestions");
  add_globals(suggest, inv);
  add_setting(suggest, inv, "--net", "network", "network file");
  add_setting(suggest, inv, "--model", "model", "model file");
  add_setting(suggest, inv, "--year", "year", "snapshot year (default: last data year)");
  add_setting(suggest, inv, "--scientist", "scientist", "the scientist's papers (JSON lines)");
  add_setting(suggest, inv, "--vocab", "vocab", "vocabulary used to match the scientist's papers");
  add_setting(suggest, inv, "--preset", "preset", "filter and ranking preset");
  add_setting(suggest, inv, "--top", "top", "suggestions to report");
  suggest->add_option("--out", inv.out, "output CSV");
  suggest->add_option("--svg", inv.svg, "projection plot");

  auto* pipeline = app.add_subcommand("pipeline", "run every stage from one config");
  add_globals(pipeline, inv);
  add_setting(pipeline, inv, "--corpus", "corpus", "corpus (JSON lines)");
  add_setting(pipeline, inv, "--out-dir", "out_dir", "directory for all artifacts");

  auto* verify = app.add_subcommand("verify", "check artifact provenance against a config");
  add_globals(verify, inv);
  verify->add_option("files", inv.files, "artifacts to check");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << "semnet " << kToolVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    const auto subs = app.get_subcommands();
    err << "error: " << e.what() << "\n\n" << (subs.empty() ? app.help() : subs.front()->help());
    return 2;
  }

  try {
    return dispatch(app, inv, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << e.app->help();
    return 2;
  } catch (const std::exception& e) {
    std::string message = e.what();
    std::replace(message.begin(), message.end(), '\n', ' ');
    err << "error: " << message << '\n';
    return 1;
  }
}

int run_subcommand(const std::vector<std::string>& args) { return run_subcommand(args, std::cout, std::cerr); }

}  // namespace semnet::cli
