#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "dtgw/alignment.hpp"
#include "dtgw/matrix.hpp"

namespace dtgw {

// Sakoe-Chiba style band around the linearly rescaled diagonal j ~ i*U/T.
// Cell (i, j), 1-based, is admissible iff |j - i*U/T| <= width, evaluated in
// integers as |j*T - i*U| <= width*T. With T == U this is |i - j| <= width.
struct BandConstraint {
  int width = -1;  // negative = unconstrained

  static BandConstraint none() { return BandConstraint{}; }
  static BandConstraint sakoe_chiba(int w);

  bool unconstrained() const { return width < 0; }
  bool admits(int i, int j, int t, int u) const;
};

struct DtwResult {
  WarpingPath path;
  double total = 0.0;
};

// Classic dynamic-time-warping DP over a T x U cost grid restricted to the
// band. Ties in backtracking prefer diagonal over vertical ((0,+1)) over
// horizontal ((+1,0)) steps, so the result is deterministic. Throws
// InputError when the band admits no path at all.
DtwResult dtw_optimal_path(const Matrix& costs, const BandConstraint& band);

// Visits every warping path of order (T, U) with length <= T + lambda
// (absent lambda = no restriction, i.e. up to T + U - 1). Requires T >= U;
// transpose the instance otherwise. The visitor returns false to stop early;
// the function returns false iff it was stopped.
using PathVisitor = std::function<bool(const WarpingPath&)>;
bool enumerate_warping_paths(int t, int u, std::optional<int> lambda,
                             const PathVisitor& visit);

// Number of paths enumerate_warping_paths would visit, via the closed form
// sum_{l=0..lambda} C(T+l-1, l) * C(T-1, l+T-U). Saturates at UINT64_MAX.
std::uint64_t count_warping_paths(int t, int u, std::optional<int> lambda);

// The minimum-length path (length max(T, U)) hugging the rescaled diagonal:
// i -> (i, round(i*U/T)), monotonized; transposed construction when T < U.
WarpingPath shortest_warping_path(int t, int u);

}  // namespace dtgw
