#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dtgw {

// Undirected edge between vertex indices, canonical form (min, max).
using Edge = std::pair<int, int>;

inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// A temporal graph: one fixed vertex set plus an ordered sequence of edge
// sets ("layers"). Vertices carry string labels externally; all computations
// use the dense indices 0..n-1. Treat instances as immutable once built.
struct TemporalGraph {
  std::vector<std::string> vertex_labels;
  std::vector<std::vector<Edge>> layers;  // canonical edges, each layer sorted

  int vertex_count() const { return static_cast<int>(vertex_labels.size()); }
  int lifetime() const { return static_cast<int>(layers.size()); }
};

// Union of all layers over the same vertex set.
struct UnderlyingGraph {
  int vertex_count = 0;
  std::vector<Edge> edges;  // sorted, unique
};

// Report for the first violated invariant. `layer` is -1 when the problem is
// not tied to a specific layer.
struct Violation {
  std::string kind;
  std::string detail;
  int layer = -1;
};

// Checks: at least one vertex, distinct labels, lifetime >= 1, and per layer
// that all endpoints are in range, no self-loops, no duplicate edges.
std::optional<Violation> validate_temporal_graph(const TemporalGraph& g);

UnderlyingGraph underlying_graph(const TemporalGraph& g);

}  // namespace dtgw
