#include "semnet/features.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>

#include <fmt/format.h>

#include "semnet/error.hpp"
#include "semnet/parallel.hpp"

namespace semnet {

double cosine_similarity(const Snapshot& s, int i, int j) {
  const int di = s.degree(i);
  const int dj = s.degree(j);
  if (di == 0 || dj == 0) return 0.0;
  // Merge of two sorted neighbor lists: entry (i, j) of B^2.
  auto a = s.neighbors(i);
  auto b = s.neighbors(j);
  std::size_t x = 0, y = 0, common = 0;
  while (x < a.size() && y < b.size()) {
    if (a[x].id < b[y].id) {
      ++x;
    } else if (b[y].id < a[x].id) {
      ++y;
    } else {
      ++common;
      ++x;
      ++y;
    }
  }
  return static_cast<double>(common) / std::sqrt(static_cast<double>(di) * static_cast<double>(dj));
}

CountMatrix binarized_adjacency(const Snapshot& s) {
  std::vector<std::vector<int>> rows(s.size());
  for (int i = 0; i < s.size(); ++i) {
    for (const auto& nb : s.neighbors(i)) rows[i].push_back(nb.id);
  }
  return CountMatrix::from_rows(rows);
}

CountMatrix walk_count_matrix(const Snapshot& s, int length, const MatrixOptions& options) {
  if (length < 2 || length > 4) throw Error(fmt::format("walk length must be 2, 3 or 4; got {}", length));
  const auto b = binarized_adjacency(s);
  auto b2 = multiply(b, b, options.threads, options.dense_fraction);
  if (length == 2) return b2;
  if (length == 3) return multiply(b2, b, options.threads, options.dense_fraction);
  return multiply(b2, b2, options.threads, options.dense_fraction);
}

std::vector<int> hop_distances_from(const Snapshot& s, int source) {
  const int n = s.size();
  std::vector<int> dist(n, n);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (const auto& nb : s.neighbors(u)) {
      if (dist[nb.id] == n) {
        dist[nb.id] = dist[u] + 1;
        queue.push_back(nb.id);
      }
    }
  }
  return dist;
}

int unweighted_distance(const Snapshot& s, int i, int j) {
  if (i == j) return 0;
  return hop_distances_from(s, std::min(i, j))[std::max(i, j)];
}

double edge_weight(const Snapshot& s, int k, int l, std::uint64_t count, WeightScheme scheme) {
  const double degrees = static_cast<double>(s.degree(k)) * static_cast<double>(s.degree(l));
  const double numerator = scheme == WeightScheme::geometric ? std::sqrt(degrees) : degrees;
  return numerator / static_cast<double>(count);
}

std::vector<double> weighted_distances_from(const Snapshot& s, int source, WeightScheme scheme) {
  const int n = s.size();
  std::vector<double> dist(n, kInfinity);
  std::vector<char> done(n, 0);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    for (const auto& nb : s.neighbors(u)) {
      const double cand = d + edge_weight(s, u, nb.id, nb.weight, scheme);
      if (cand < dist[nb.id]) {
        dist[nb.id] = cand;
        heap.push({cand, nb.id});
      }
    }
  }
  return dist;
}

double raw_weighted_distance(const Snapshot& s, int i, int j, WeightScheme scheme) {
  if (i == j) return 0.0;
  return weighted_distances_from(s, std::min(i, j), scheme)[std::max(i, j)];
}

double normalized_weighted_distance(double raw, double max_finite) {
  if (!std::isfinite(raw)) return 1.0;
  if (max_finite <= 0.0) return 0.0;
  return std::min(1.0, raw / max_finite);
}

FeatureExtractor::FeatureExtractor(const TemporalNetwork& net, int year, const FeatureOptions& options)
    : year_(year), n_(net.size()), options_(options) {
  const MatrixOptions mo{options.threads, options.dense_fraction};
  for (int lag = 0; lag < 3; ++lag) {
    snapshots_[lag] = semnet::snapshot(net, year - lag);
    const auto b = binarized_adjacency(snapshots_[lag]);
    auto b2 = multiply(b, b, mo.threads, mo.dense_fraction);
    auto b3 = multiply(b2, b, mo.threads, mo.dense_fraction);
    auto b4 = multiply(b2, b2, mo.threads, mo.dense_fraction);
    walks_[lag] = {std::move(b2), std::move(b3), std::move(b4)};
  }

  const Snapshot& s = snapshots_[0];
  const std::size_t n = n_;
  hops_.assign(n * n, n_);
  weighted_[0].assign(n * n, kInfinity);
  weighted_[1].assign(n * n, kInfinity);
  parallel_for(n, options.threads, [&](std::size_t src) {
    const auto hops = hop_distances_from(s, static_cast<int>(src));
    const auto geo = weighted_distances_from(s, static_cast<int>(src), WeightScheme::geometric);
    const auto prod = weighted_distances_from(s, static_cast<int>(src), WeightScheme::product);
    std::copy(hops.begin(), hops.end(), hops_.begin() + src * n);
    std::copy(geo.begin(), geo.end(), weighted_[0].begin() + src * n);
    std::copy(prod.begin(), prod.end(), weighted_[1].begin() + src * n);
  });

  ctx_.year = year;
  ctx_.n = n_;
  for (int c = 0; c < n_; ++c) {
    ctx_.max_degree = std::max(ctx_.max_degree, s.degree(c));
    ctx_.max_occurrence = std::max(ctx_.max_occurrence, s.occurrences(c));
  }
  for (int len = 0; len < 3; ++len) {
    for (int lag = 0; lag < 3; ++lag) ctx_.max_walks[len][lag] = walks_[lag][len].max_off_diagonal();
  }
  for (int scheme = 0; scheme < 2; ++scheme) {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = weighted_[scheme][i * n + j];
        if (std::isfinite(d)) best = std::max(best, d);
      }
    }
    ctx_.max_weighted_distance[scheme] = best;
  }
}

int FeatureExtractor::hop_distance(int i, int j) const {
  const auto lo = static_cast<std::size_t>(std::min(i, j));
  const auto hi = static_cast<std::size_t>(std::max(i, j));
  return hops_[lo * n_ + hi];
}

double FeatureExtractor::weighted_distance(int i, int j, WeightScheme scheme) const {
  const auto lo = static_cast<std::size_t>(std::min(i, j));
  const auto hi = static_cast<std::size_t>(std::max(i, j));
  return weighted_[scheme == WeightScheme::geometric ? 0 : 1][lo * n_ + hi];
}

namespace {

double ratio(std::uint64_t value, std::uint64_t max) {
  return max == 0 ? 0.0 : static_cast<double>(value) / static_cast<double>(max);
}

}  // namespace

PairFeatureVector FeatureExtractor::compute(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_ || i == j) {
    throw Error(fmt::format("invalid concept pair ({}, {})", i, j));
  }
  const Snapshot& s = snapshots_[0];
  if (s.connected(i, j)) {
    throw Error(fmt::format("pair ({}, {}) is already connected in {}; features exist only for unconnected pairs",
                            i, j, year_));
  }
  PairFeatureVector v;
  v.i = i;
  v.j = j;
  v.year = year_;
  auto& p = v.p;
  p[0] = ratio(s.degree(i), ctx_.max_degree);
  p[1] = ratio(s.degree(j), ctx_.max_degree);
  p[2] = ratio(s.occurrences(i), ctx_.max_occurrence);
  p[3] = ratio(s.occurrences(j), ctx_.max_occurrence);
  p[4] = cosine_similarity(s, i, j);
  for (int len = 0; len < 3; ++len) {
    for (int lag = 0; lag < 3; ++lag) {
      p[5 + 3 * len + lag] = ratio(walks_[lag][len].at(i, j), ctx_.max_walks[len][lag]);
    }
  }
  p[14] = hop_distance(i, j);
  p[15] = normalized_weighted_distance(weighted_distance(i, j, WeightScheme::geometric),
                                       ctx_.max_weighted_distance[0]);
  p[16] = normalized_weighted_distance(weighted_distance(i, j, WeightScheme::product),
                                       ctx_.max_weighted_distance[1]);
  return v;
}

std::vector<ConceptPair> FeatureExtractor::unconnected_pairs() const {
  std::vector<ConceptPair> pairs;
  const Snapshot& s = snapshots_[0];
  for (int i = 0; i < n_; ++i) {
    auto row = s.neighbors(i);
    std::size_t k = 0;
    for (int j = i + 1; j < n_; ++j) {
      while (k < row.size() && row[k].id < j) ++k;
      if (k < row.size() && row[k].id == j) continue;
      pairs.emplace_back(i, j);
    }
  }
  return pairs;
}

std::vector<PairFeatureVector> FeatureExtractor::compute_all(const std::vector<ConceptPair>& pairs) const {
  std::vector<PairFeatureVector> out(pairs.size());
  parallel_for(pairs.size(), options_.threads,
               [&](std::size_t k) { out[k] = compute(pairs[k].first, pairs[k].second); });
  return out;
}

PairFeatureVector feature_vector(const FeatureExtractor& extractor, int i, int j) {
  return extractor.compute(i, j);
}

}  // namespace semnet
