#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dtgw/alignment.hpp"
#include "dtgw/matrix.hpp"
#include "dtgw/temporal_graph.hpp"

namespace dtgw {

// deletion: drop whole layers / single edges with probability p.
// temporal_rewire: swap endpoints with a random (edge, layer) occurrence.
// underlying_rewire: same swap on the underlying graph, relabeled in every
//   layer consistently.
// layer_stretch: replace each layer by X copies where P(X >= x) = x^-3
//   (heavy-tailed stretching; ignores p).
enum class NoiseModel { deletion, temporal_rewire, underlying_rewire, layer_stretch };

NoiseModel noise_model_from_string(const std::string& s);
std::string to_string(NoiseModel m);

struct NoiseSpec {
  NoiseModel model = NoiseModel::deletion;
  double p = 0.0;
  std::uint64_t seed = 0;
};

// Applies the noise model; identical (graph, spec) inputs give identical
// outputs (splitmix64 driven).
TemporalGraph perturb(const TemporalGraph& g, const NoiseSpec& spec);

// Agglomerative complete-linkage clustering result. Leaves are 0..n-1;
// the cluster created by merge #k gets id n+k. Merge heights never decrease.
struct Dendrogram {
  struct Merge {
    int a = 0;
    int b = 0;  // a < b
    double height = 0.0;
  };
  std::vector<Merge> merges;            // n-1 entries
  std::vector<std::string> leaf_labels;  // size n
};

// distances must be square, symmetric (1e-9 tolerance), zero diagonal,
// nonnegative. Ties are broken towards the lexicographically smallest
// cluster-id pair, so the result is deterministic.
Dendrogram complete_linkage_cluster(const Matrix& distances,
                                    std::vector<std::string> leaf_labels = {});

// Partition into k clusters by undoing the last k-1 merges. Clusters are
// sorted lists of leaf indices, ordered by their smallest member.
std::vector<std::vector<int>> cut_dendrogram(const Dendrogram& d, int k);

// Relative-error summary of heuristic-vs-exact pairs, in percent:
// eps = 100 * (heuristic - exact) / exact, with 0/0 counted as 0.
struct ErrorStats {
  double avg = 0.0;
  double std_dev = 0.0;  // population standard deviation
  double p0 = 0.0;       // fraction of pairs with eps == 0
  double max = 0.0;
};

ErrorStats error_stats(std::span<const std::pair<double, double>> heuristic_exact_pairs);

// Fraction of mapped pairs that agree with the ground-truth correspondence;
// the denominator is min(|V|, |W|) (the mapping size). truth must cover
// every mapped left vertex.
double deanonymization_accuracy(const VertexMapping& m,
                                const std::unordered_map<int, int>& truth);

}  // namespace dtgw
