#include "dtgw/alignment.hpp"

#include <algorithm>
#include <string>

namespace dtgw {

namespace {
std::string pair_str(const std::pair<int, int>& p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}
}  // namespace

std::optional<Violation> validate_warping_path(const WarpingPath& p) {
  if (p.order_t < 1 || p.order_u < 1)
    return Violation{"bad order", "path order must be at least (1,1)", -1};
  if (p.pairs.empty()) return Violation{"empty path", "a warping path has at least one pair", -1};
  if (p.pairs.front() != std::pair<int, int>{1, 1})
    return Violation{"bad start", "path must start at (1,1), got " + pair_str(p.pairs.front()), -1};
  if (p.pairs.back() != std::pair<int, int>{p.order_t, p.order_u})
    return Violation{"bad end",
                     "path must end at (" + std::to_string(p.order_t) + "," +
                         std::to_string(p.order_u) + "), got " + pair_str(p.pairs.back()),
                     -1};
  for (std::size_t k = 1; k < p.pairs.size(); ++k) {
    const int di = p.pairs[k].first - p.pairs[k - 1].first;
    const int dj = p.pairs[k].second - p.pairs[k - 1].second;
    const bool legal = (di == 1 && dj == 0) || (di == 0 && dj == 1) || (di == 1 && dj == 1);
    if (!legal)
      return Violation{"illegal step", "step " + pair_str(p.pairs[k - 1]) + " -> " +
                                           pair_str(p.pairs[k]) + " is not a unit step",
                       -1};
  }
  return std::nullopt;
}

std::optional<Violation> validate_vertex_mapping(const VertexMapping& m, int n_left,
                                                 int n_right) {
  const int want = std::min(n_left, n_right);
  if (m.size() != want)
    return Violation{"bad size", "mapping has " + std::to_string(m.size()) + " pairs, expected " +
                                     std::to_string(want),
                     -1};
  std::vector<char> seen_l(static_cast<std::size_t>(n_left), 0);
  std::vector<char> seen_r(static_cast<std::size_t>(n_right), 0);
  for (const auto& [u, v] : m.pairs) {
    if (u < 0 || u >= n_left || v < 0 || v >= n_right)
      return Violation{"index out of range", "pair " + pair_str({u, v}) + " leaves the vertex ranges",
                       -1};
    if (seen_l[u])
      return Violation{"duplicate vertex", "left vertex " + std::to_string(u) + " mapped twice", -1};
    if (seen_r[v])
      return Violation{"duplicate vertex", "right vertex " + std::to_string(v) + " mapped twice", -1};
    seen_l[u] = 1;
    seen_r[v] = 1;
  }
  return std::nullopt;
}

}  // namespace dtgw
