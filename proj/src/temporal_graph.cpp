#include "dtgw/temporal_graph.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <unordered_set>

namespace dtgw {

std::optional<Violation> validate_temporal_graph(const TemporalGraph& g) {
  if (g.vertex_labels.empty())
    return Violation{"empty vertex set", "at least one vertex is required", -1};
  {
    std::unordered_set<std::string> seen;
    for (const auto& label : g.vertex_labels)
      if (!seen.insert(label).second)
        return Violation{"duplicate label", "vertex label '" + label + "' appears twice", -1};
  }
  if (g.layers.empty()) return Violation{"no layers", "lifetime must be at least 1", -1};

  const int n = g.vertex_count();
  for (int i = 0; i < g.lifetime(); ++i) {
    std::set<Edge> seen;
    for (const Edge& e : g.layers[i]) {
      if (e.first < 0 || e.first >= n || e.second < 0 || e.second >= n)
        return Violation{"index out of range",
                         "edge (" + std::to_string(e.first) + "," + std::to_string(e.second) +
                             ") leaves the vertex range",
                         i};
      if (e.first == e.second)
        return Violation{"self-loop", "edge (" + std::to_string(e.first) + "," +
                                          std::to_string(e.second) + ") is a self-loop",
                         i};
      if (!seen.insert(make_edge(e.first, e.second)).second)
        return Violation{"duplicate edge", "edge (" + std::to_string(e.first) + "," +
                                               std::to_string(e.second) + ") appears twice",
                         i};
    }
  }
  return std::nullopt;
}

UnderlyingGraph underlying_graph(const TemporalGraph& g) {
  std::set<Edge> edges;
  for (const auto& layer : g.layers)
    for (const Edge& e : layer) edges.insert(make_edge(e.first, e.second));
  UnderlyingGraph u;
  u.vertex_count = g.vertex_count();
  u.edges.assign(edges.begin(), edges.end());
  return u;
}

}  // namespace dtgw
