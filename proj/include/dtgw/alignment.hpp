#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dtgw/temporal_graph.hpp"

namespace dtgw {

// Monotone alignment between layer ranges 1..T and 1..U. Pairs use 1-based
// layer indices (the usual warping-path notation); conversion to the 0-based
// internal indexing happens where costs are read.
struct WarpingPath {
  std::vector<std::pair<int, int>> pairs;
  int order_t = 0;
  int order_u = 0;

  int length() const { return static_cast<int>(pairs.size()); }
};

// Checks start (1,1), end (T,U) and that every step is one of
// (+1,0), (0,+1), (+1,+1). Range and length bounds follow from these.
std::optional<Violation> validate_warping_path(const WarpingPath& p);

// Injective partial matching between two vertex sets with exactly
// min(|V|, |W|) pairs; pairs are (u, v) index tuples sorted by u.
struct VertexMapping {
  std::vector<std::pair<int, int>> pairs;

  int size() const { return static_cast<int>(pairs.size()); }
};

std::optional<Violation> validate_vertex_mapping(const VertexMapping& m, int n_left,
                                                 int n_right);

}  // namespace dtgw
