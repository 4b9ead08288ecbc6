#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fixture.hpp"
#include "oracles.hpp"
#include "semnet/error.hpp"
#include "semnet/predictor.hpp"

using namespace semnet;

namespace {

LabeledExample example(double cosine, double label) {
  LabeledExample e;
  e.features.p[4] = cosine;
  e.label = label;
  return e;
}

}  // namespace

TEST_CASE("forward pass examples") {
  const auto zero = zero_model({17, 8, 8, 1});
  std::vector<double> x(17, 0.7);
  CHECK(mlp_forward(zero, x) == 0.0);

  auto unit = zero_model({1, 1, 1, 1});
  for (auto& w : unit.weights) w = {1.0};
  const std::vector<double> half{0.5};
  CHECK(mlp_forward(unit, half) == doctest::Approx(0.462117).epsilon(1e-6));
  CHECK(mlp_forward(unit, half) == std::tanh(0.5));
}

TEST_CASE("initialization is seeded and bounded") {
  const auto a = init_model({17, 64, 64, 1}, 3);
  CHECK(a == init_model({17, 64, 64, 1}, 3));
  CHECK_FALSE(a == init_model({17, 64, 64, 1}, 4));
  CHECK(a.parameter_count() == 17 * 64 + 64 + 64 * 64 + 64 + 64 + 1);
  const double bound = std::sqrt(6.0 / (17 + 64));
  for (double w : a.weights[0]) CHECK(std::abs(w) <= bound);
  for (double b : a.biases[0]) CHECK(b == 0.0);
}

TEST_CASE("analytic gradients match central differences") {
  std::mt19937_64 gen(99);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int point = 0; point < 10; ++point) {
    auto model = init_model({17, 12, 9, 1}, 1000 + point);
    for (auto& b : model.biases) {
      for (auto& v : b) v = 0.1 * normal(gen);
    }
    std::vector<double> x(17);
    for (auto& v : x) v = normal(gen);
    const double label = point % 2 ? 1.0 : -1.0;
    CHECK(oracle::gradient_error(model, x, label, 1e-6) < 1e-4);
    CHECK(gradient_check(model, x, label, 1e-6) < 1e-4);
  }
  // At the all-zero model only the output bias has a nonzero gradient.
  const auto zero = zero_model({17, 4, 4, 1});
  const std::vector<double> x(17, 0.0);
  Gradients g(zero);
  g.zero();
  accumulate_gradient(zero, x, 1.0, 1.0, g);
  CHECK(g.biases[2][0] == -2.0);
  CHECK(gradient_check(zero, x, 1.0, 1e-6) < 1e-9);
}

TEST_CASE("training separates a toy set and is deterministic") {
  std::vector<LabeledExample> data;
  for (int k = 0; k < 200; ++k) {
    const double c = k / 200.0;
    data.push_back(example(c, c > 0.5 ? 1.0 : -1.0));
  }
  TrainConfig cfg;
  cfg.h1 = cfg.h2 = 16;
  cfg.epochs = 200;
  cfg.batch_size = 32;
  cfg.learning_rate = 1e-2;
  const auto a = mlp_train(data, cfg);
  const auto b = mlp_train(data, cfg);
  CHECK(a.model == b.model);
  CHECK(a.loss_history == b.loss_history);
  REQUIRE(a.loss_history.size() == 200);
  CHECK(a.loss_history.back() < a.loss_history.front());
  int correct = 0;
  for (const auto& e : data) {
    const double y = mlp_forward(a.model, e.features.p);
    if ((y > 0) == (e.label > 0)) ++correct;
  }
  CHECK(correct == 200);

  cfg.optimizer = Optimizer::sgd;
  cfg.learning_rate = 0.05;
  const auto sgd = mlp_train(data, cfg);
  CHECK(sgd.loss_history.back() < sgd.loss_history.front());
}

TEST_CASE("training rejects bad configurations and divergence") {
  std::vector<LabeledExample> data{example(0.1, -1.0), example(0.9, 1.0)};
  TrainConfig cfg;
  cfg.batch_size = 0;
  CHECK_THROWS_AS(mlp_train(data, cfg), Error);
  cfg = TrainConfig{};
  CHECK_THROWS_AS(mlp_train({}, cfg), Error);
  cfg.optimizer = Optimizer::sgd;
  cfg.learning_rate = 1e300;
  cfg.epochs = 5;
  try {
    mlp_train(data, cfg);
    FAIL("expected divergence");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("learning rate") != std::string::npos);
  }
}

TEST_CASE("model JSON round trip") {
  auto model = init_model({17, 5, 3, 1}, 8);
  model.training["epochs"] = 3;
  const auto back = model_from_json(nlohmann::json::parse(model_to_json(model).dump()));
  CHECK(back == model);
  auto broken = model_to_json(model);
  broken["layer_dims"] = {17, 5, 1};
  CHECK_THROWS_AS(model_from_json(nlohmann::json::parse(broken.dump())), Error);
}

TEST_CASE("training set labels equal a direct recount") {
  const auto& net = fixture::evaluation_fixture().net;
  const int year = 1996, horizon = 5;
  TrainingSetOptions opts;
  opts.horizon = horizon;
  opts.neg_ratio = 5.0;
  opts.seed = 3;
  const auto data = build_training_set(net, year, opts);
  const auto now = snapshot(net, year);
  const auto later = snapshot(net, year + horizon);
  std::size_t expected_pos = 0, candidates = 0;
  for (int i = 0; i < net.size(); ++i) {
    for (int j = i + 1; j < net.size(); ++j) {
      if (now.connected(i, j)) continue;
      ++candidates;
      if (later.connected(i, j)) ++expected_pos;
    }
  }
  std::size_t pos = 0, neg = 0;
  for (const auto& e : data) {
    CHECK_FALSE(now.connected(e.features.i, e.features.j));
    CHECK(e.label == (later.connected(e.features.i, e.features.j) ? 1.0 : -1.0));
    (e.label > 0 ? pos : neg) += 1;
  }
  CHECK(pos == expected_pos);
  CHECK(neg == std::min(candidates - expected_pos, static_cast<std::size_t>(5.0 * expected_pos)));
  CHECK(std::is_sorted(data.begin(), data.end(), [](const LabeledExample& a, const LabeledExample& b) {
    return std::pair(a.features.i, a.features.j) < std::pair(b.features.i, b.features.j);
  }));

  // The planted pair is a positive in the window that covers its first co-mention.
  const auto& fx = fixture::evaluation_fixture();
  const auto cfg = fixture_config();
  const auto a = *fx.vocab.find(synthetic_concept_names(cfg)[cfg.pair_bursts[0].first]);
  const auto b = *fx.vocab.find(synthetic_concept_names(cfg)[cfg.pair_bursts[0].second]);
  const auto positives = build_training_set(net, 2000, opts);
  CHECK(std::any_of(positives.begin(), positives.end(), [&](const LabeledExample& e) {
    return e.features.i == std::min(a, b) && e.features.j == std::max(a, b) && e.label == 1.0;
  }));

  CHECK_THROWS_AS(build_training_set(net, net.last_year() - 2, opts), Error);
}

TEST_CASE("ranking follows a monotone model") {
  const auto& net = fixture::evaluation_fixture().net;
  const FeatureExtractor ex(net, 2000);
  auto model = zero_model({17, 1, 1, 1});
  model.weights[0][4] = 1.0;  // passes p5 through
  model.weights[1][0] = 1.0;
  model.weights[2][0] = 1.0;
  const auto ranked = predict_and_rank(model, ex);
  REQUIRE(ranked.size() == ex.unconnected_pairs().size());
  // Cosine is non-increasing down the list; equal scores are ordered by pair.
  for (std::size_t k = 1; k < ranked.size(); ++k) {
    const auto& prev = ranked[k - 1];
    const auto& cur = ranked[k];
    CHECK(cosine_similarity(ex.snapshot(), cur.pair.first, cur.pair.second) <=
          cosine_similarity(ex.snapshot(), prev.pair.first, prev.pair.second) + 1e-12);
    CHECK(cur.score <= prev.score);
    if (cur.score == prev.score) CHECK(prev.pair < cur.pair);
  }

  CHECK(predict_and_rank(model, ex, [](const PairFeatureVector&) { return false; }).empty());
  const auto filtered = predict_and_rank(model, ex, parse_filter("cos<0.2"));
  for (const auto& r : filtered) CHECK(cosine_similarity(ex.snapshot(), r.pair.first, r.pair.second) < 0.2);
}

TEST_CASE("filter expressions") {
  PairFeatureVector v;
  v.p[4] = 0.1;
  v.p[0] = 0.02;
  v.p[1] = 0.06;
  CHECK(parse_filter("cos<0.2")(v));
  CHECK_FALSE(parse_filter("cos<0.1")(v));
  CHECK(parse_filter("deg<0.05")(v));
  CHECK_FALSE(parse_filter("deg<0.04")(v));
  CHECK(parse_filter("cos<0.2,deg<0.041")(v));
  CHECK_FALSE(parse_filter("all"));
  CHECK_THROWS_AS(parse_filter("cosine<0.2"), Error);
  CHECK_THROWS_AS(parse_filter("cos<abc"), Error);
}
