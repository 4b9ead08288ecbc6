#include <doctest.h>

#include <random>
#include <sstream>

#include "fixture.hpp"
#include "oracles.hpp"
#include "semnet/error.hpp"
#include "semnet/features.hpp"
#include "semnet/network.hpp"

using namespace semnet;

namespace {

TemporalNetwork three_concepts() { return TemporalNetwork({"a", "b", "c"}, 1990, 2010); }

}  // namespace

TEST_CASE("one document adds every pair once") {
  auto net = three_concepts();
  const std::vector<int> abc{0, 1, 2};
  net.add_document(1995, abc);
  CHECK(net.pair_count_through(0, 1, 1995) == 1);
  CHECK(net.pair_count_through(0, 2, 1995) == 1);
  CHECK(net.pair_count_through(1, 2, 1995) == 1);
  CHECK(net.concept_count_through(2, 1995) == 1);
  const std::vector<int> ab{0, 1};
  net.add_document(2000, ab);
  net.add_document(2000, ab);
  CHECK(net.pair_history(0, 1).back() == YearCount{2000, 2});
}

TEST_CASE("snapshots are cumulative") {
  auto net = three_concepts();
  net.add_pair_count(0, 1, 1995, 1);
  net.add_pair_count(0, 1, 1997, 2);
  CHECK(snapshot(net, 1996).weight(0, 1) == 1);
  CHECK(snapshot(net, 1997).weight(0, 1) == 3);
  CHECK(snapshot(net, 1997).weight(1, 0) == 3);
  const auto empty = snapshot(net, 1980);
  CHECK(empty.edge_count() == 0);
  for (int i = 0; i < 3; ++i) CHECK(empty.degree(i) == 0);
  CHECK(net.first_connection_year(0, 1) == std::optional<int>(1995));
  CHECK_FALSE(net.first_connection_year(1, 2).has_value());
}

TEST_CASE("invalid concepts and years are rejected") {
  auto net = three_concepts();
  const std::vector<int> bad{0, 3};
  CHECK_THROWS_AS(net.add_document(2000, bad), Error);
  CHECK_THROWS_AS(net.add_pair_count(1, 1, 2000, 1), Error);
}

TEST_CASE("fixture network matches a per-document recount") {
  const auto& fx = fixture::evaluation_fixture();
  std::map<ConceptPair, std::map<int, std::uint64_t>> expected;
  std::uint64_t mass = 0;
  for (const auto& d : fx.corpus) {
    const auto ids = match_concepts(d, fx.vocab);
    mass += ids.size() * (ids.size() - (ids.empty() ? 0 : 1)) / 2;
    for (std::size_t a = 0; a < ids.size(); ++a) {
      for (std::size_t b = a + 1; b < ids.size(); ++b) ++expected[ordered_pair(ids[a], ids[b])][d.year];
    }
  }
  std::uint64_t total = 0;
  std::size_t pairs = 0;
  for (const auto& [pair, history] : fx.net.edges()) {
    ++pairs;
    for (const auto& yc : history) {
      total += yc.count;
      CHECK(expected[pair][yc.year] == yc.count);
    }
  }
  CHECK(total == mass);
  CHECK(pairs == expected.size());
}

TEST_CASE("fixture network grows monotonically and reaches the calibrated density") {
  const auto& net = fixture::evaluation_fixture().net;
  std::size_t previous = 0;
  for (int y = net.first_year(); y <= net.last_year(); ++y) {
    const auto edges = snapshot(net, y).edge_count();
    CHECK(edges >= previous);
    previous = edges;
  }
  const double n = net.size();
  const double density = static_cast<double>(previous) / (n * (n - 1) / 2);
  CHECK(density >= 0.05);
  CHECK(density <= 0.20);
}

TEST_CASE("planted pair burst connects in the logged year") {
  GeneratorLog log;
  const auto cfg = fixture_config();
  generate_synthetic_corpus(cfg, &log);
  const auto& fx = fixture::evaluation_fixture();
  REQUIRE(!cfg.pair_bursts.empty());
  const auto& burst = cfg.pair_bursts.front();
  const auto a = fx.vocab.find(log.concept_names[burst.first]);
  const auto b = fx.vocab.find(log.concept_names[burst.second]);
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(fx.net.first_connection_year(*a, *b) == std::optional<int>(log.pair_burst_first_year.front()));
}

TEST_CASE("network file round trip") {
  const auto& net = fixture::evaluation_fixture().net;
  std::ostringstream out;
  out << "## provenance\n";
  write_network(out, net);
  std::istringstream in(out.str());
  const auto back = read_network(in);
  CHECK(back.names() == net.names());
  CHECK(back.first_year() == net.first_year());
  CHECK(back.last_year() == net.last_year());
  CHECK(back.edges() == net.edges());
  for (int c = 0; c < net.size(); ++c) {
    CHECK(std::vector<YearCount>(back.concept_history(c).begin(), back.concept_history(c).end()) ==
          std::vector<YearCount>(net.concept_history(c).begin(), net.concept_history(c).end()));
  }
}

TEST_CASE("malformed network files report the line") {
  std::istringstream in("semnet v1 2\nyears\t2000\t2001\n#0\ta\n#1\tb\n0\t1\tx\t1\n");
  try {
    read_network(in, "net");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("net:5") != std::string::npos);
  }
}

TEST_CASE("build_network is independent of the worker count") {
  const auto& fx = fixture::evaluation_fixture();
  const auto four = build_network(fx.corpus, fx.vocab, 4);
  CHECK(four.edges() == fx.net.edges());
}
