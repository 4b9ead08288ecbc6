#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "semnet/count_matrix.hpp"
#include "semnet/network.hpp"

namespace semnet {

inline constexpr int kFeatureCount = 17;
using FeatureArray = std::array<double, kFeatureCount>;

// The 17 per-pair network properties, stored zero-based: p[0] is p1.
//   p1, p2    degree of i, j over the largest degree
//   p3, p4    cumulative document count of i, j over the largest count
//   p5        cosine similarity of the neighbor sets
//   p6..p8    length-2 walk counts at Y, Y-1, Y-2, each over that year's max
//   p9..p11   same for length-3 walks
//   p12..p14  same for length-4 walks
//   p15       hop distance (n when disconnected)
//   p16, p17  weighted distances (geometric / product edge weights) over the
//             largest finite weighted distance; disconnected pairs get 1
struct PairFeatureVector {
  int i = 0;
  int j = 0;
  int year = 0;
  FeatureArray p{};
};

enum class WeightScheme { geometric, product };

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Shared-neighbor count over the geometric mean of the degrees; 0 when either
// degree is 0.
double cosine_similarity(const Snapshot& s, int i, int j);

CountMatrix binarized_adjacency(const Snapshot& s);

// B^L of the binarized adjacency (L in 2..4). Entries count walks, so vertex
// revisits are included. B^4 is formed as (B^2)^2.
CountMatrix walk_count_matrix(const Snapshot& s, int length, const MatrixOptions& options = {});

// Breadth-first hop distance; s.size() when disconnected.
int unweighted_distance(const Snapshot& s, int i, int j);

double edge_weight(const Snapshot& s, int k, int l, std::uint64_t count, WeightScheme scheme);

// Dijkstra distance under the chosen edge weights, unnormalized; kInfinity
// when disconnected. Sums always run from the smaller id so the value is
// symmetric bit for bit.
double raw_weighted_distance(const Snapshot& s, int i, int j, WeightScheme scheme);

// Single-source variants used for all-pairs tables.
std::vector<int> hop_distances_from(const Snapshot& s, int source);
std::vector<double> weighted_distances_from(const Snapshot& s, int source, WeightScheme scheme);

// Per-year normalizers. Walk maxima are indexed [length - 2][lag] where lag is
// 0, 1, 2 for Y, Y-1, Y-2.
struct NormalizationContext {
  int year = 0;
  int n = 0;
  int max_degree = 0;
  std::uint64_t max_occurrence = 0;
  std::array<std::array<std::uint64_t, 3>, 3> max_walks{};
  std::array<double, 2> max_weighted_distance{};
};

double normalized_weighted_distance(double raw, double max_finite);

struct FeatureOptions {
  unsigned threads = 1;
  double dense_fraction = 0.25;
};

// Everything needed to compute feature vectors at one year: snapshots for Y,
// Y-1, Y-2, their walk powers, all-pairs distance tables and the
// normalization context. Immutable after construction.
class FeatureExtractor {
 public:
  FeatureExtractor(const TemporalNetwork& net, int year, const FeatureOptions& options = {});

  int year() const { return year_; }
  int size() const { return n_; }
  unsigned threads() const { return options_.threads; }
  const NormalizationContext& context() const { return ctx_; }
  const Snapshot& snapshot(int lag = 0) const { return snapshots_.at(lag); }
  const CountMatrix& walks(int length, int lag) const { return walks_.at(lag).at(length - 2); }

  int hop_distance(int i, int j) const;
  double weighted_distance(int i, int j, WeightScheme scheme) const;

  // Throws Error when (i, j) is connected at the extractor's year. Argument
  // order matters only for p1..p4.
  PairFeatureVector compute(int i, int j) const;

  // All pairs i < j not connected at the year, in lexicographic order.
  std::vector<ConceptPair> unconnected_pairs() const;

  // Computes vectors for many pairs on `threads` workers.
  std::vector<PairFeatureVector> compute_all(const std::vector<ConceptPair>& pairs) const;

 private:
  int year_;
  int n_;
  FeatureOptions options_;
  std::array<Snapshot, 3> snapshots_;
  std::array<std::array<CountMatrix, 3>, 3> walks_;
  std::vector<int> hops_;                        // n*n, row = smaller id
  std::array<std::vector<double>, 2> weighted_;  // n*n, row = smaller id
  NormalizationContext ctx_;
};

PairFeatureVector feature_vector(const FeatureExtractor& extractor, int i, int j);

}  // namespace semnet
