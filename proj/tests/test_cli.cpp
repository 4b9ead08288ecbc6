#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "fixture.hpp"
#include "semnet/cli.hpp"
#include "semnet/config.hpp"
#include "semnet/evaluation.hpp"

namespace fs = std::filesystem;
using namespace semnet;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("semnet-test-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = cli::run_subcommand(args, out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string data(const std::string& name) { return (fixture::data_dir() / name).string(); }

}  // namespace

TEST_CASE("usage errors exit with 2 and print help") {
  TempDir dir("usage");
  const auto r = run({"build-vocab", "--out", (dir.path / "v.txt").string()});
  CHECK(r.status == 2);
  CHECK(r.err.find("--corpus") != std::string::npos);
  CHECK(run({"no-such-stage"}).status == 2);
  CHECK(run({}).status == 2);
  CHECK(run({"eval", "--bogus-flag"}).status == 2);
}

TEST_CASE("stage errors exit with 1 and a single line") {
  TempDir dir("stage");
  const auto r = run({"build-net", "--corpus", "/nonexistent/corpus.jsonl", "--vocab", data("fixture_concepts.txt"),
                      "--out", (dir.path / "n.tsv").string()});
  CHECK(r.status == 1);
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
  CHECK(r.err.find("/nonexistent/corpus.jsonl") != std::string::npos);

  const fs::path cfg = dir.path / "bad.cfg";
  std::ofstream(cfg) << "seed = 1\nnot_a_key = 3\n";
  const auto bad = run({"trends", "--config", cfg.string(), "--out", (dir.path / "t.csv").string()});
  CHECK(bad.status != 0);
  CHECK(bad.err.find("not_a_key") != std::string::npos);
}

TEST_CASE("eval report AUC equals the evaluation module") {
  TempDir dir("eval");
  const auto vocab = (dir.path / "vocab.txt").string();
  const auto net = (dir.path / "net.tsv").string();
  const auto report = (dir.path / "report.json").string();
  REQUIRE(run({"build-vocab", "--quiet", "--corpus", data("fixture_corpus.jsonl"), "--human-list",
               data("fixture_concepts.txt"), "--out", vocab})
              .status == 0);
  REQUIRE(run({"build-net", "--quiet", "--corpus", data("fixture_corpus.jsonl"), "--vocab", vocab, "--out", net})
              .status == 0);
  REQUIRE(run({"eval", "--quiet", "--net", net, "--train-year", "1996", "--validate-year", "2001", "--seed", "42",
               "--out", report, "--svg", (dir.path / "roc.svg").string()})
              .status == 0);
  const auto json = nlohmann::json::parse(slurp(report));

  PipelineConfig cfg;
  cfg.seed = 42;
  const auto module = evaluate_protocol(load_network(net), 1996, 2001, cfg.protocol_config());
  CHECK(json.at("auc").get<double>() == module.curve.auc);
  CHECK(json.at("shuffled_label_auc").get<double>() == module.auc_shuffled);
  CHECK(json.at("provenance").get<std::string>() == provenance(cfg));
  CHECK(slurp(dir.path / "roc.svg").find("<svg") != std::string::npos);

  // The network built through the CLI equals the in-memory fixture network.
  CHECK(load_network(net).edges() == fixture::evaluation_fixture().net.edges());
}

TEST_CASE("pipeline is deterministic across runs and thread counts") {
  TempDir a("pipe-a"), b("pipe-b");
  const auto cfg = data("demo.cfg");
  REQUIRE(run({"pipeline", "--quiet", "--config", cfg, "--out-dir", a.path.string(), "--threads", "1"}).status == 0);
  REQUIRE(run({"pipeline", "--quiet", "--config", cfg, "--out-dir", b.path.string(), "--threads", "4"}).status == 0);
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(a.path)) names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  const std::vector<std::string> expected{"eval_report.json", "model.json",      "network.tsv",
                                          "roc.svg",          "suggestions.csv", "suggestions.svg",
                                          "trends.csv",       "trends.svg",      "vocab.txt"};
  CHECK(names == expected);
  for (const auto& n : names) {
    INFO(n);
    CHECK(slurp(a.path / n) == slurp(b.path / n));
  }

  std::vector<std::string> verify{"verify", "--config", cfg};
  for (const auto& n : names) verify.push_back((a.path / n).string());
  const auto ok = run(verify);
  CHECK(ok.status == 0);
  CHECK(ok.out.find("MISMATCH") == std::string::npos);

  verify.insert(verify.begin() + 3, {"--seed", "7"});
  CHECK(run(verify).status == 1);
}

TEST_CASE("config hash ignores paths and thread counts") {
  PipelineConfig a, b;
  b.corpus = "/somewhere/else.jsonl";
  b.threads = 8;
  b.out_dir = "/tmp/x";
  CHECK(config_hash(a) == config_hash(b));
  b.epochs = 49;
  CHECK(config_hash(a) != config_hash(b));
  std::istringstream in("# comment\nseed = 3\n\nhorizon=4\n");
  const auto kv = parse_config_text(in, "mem");
  REQUIRE(kv.size() == 2);
  CHECK(kv[1] == std::pair<std::string, std::string>{"horizon", "4"});
}
