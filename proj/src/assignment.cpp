#include "dtgw/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace dtgw {

AssignmentSolution solve_assignment(const Matrix& costs) {
  if (costs.rows != costs.cols)
    throw std::invalid_argument("assignment: cost matrix must be square");
  const int n = costs.rows;
  if (n < 1) throw std::invalid_argument("assignment: cost matrix is empty");
  for (double c : costs.data)
    if (!std::isfinite(c) || c < 0.0)
      throw std::invalid_argument("assignment: entries must be finite and nonnegative");

  // Shortest augmenting paths with dual potentials (u, v); rows are inserted
  // one at a time. match[j] is the row currently assigned to column j,
  // 1-based with 0 acting as the virtual root.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1, 0);

  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      int j1 = 0;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = costs.at(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    // walk the augmenting path back to the root
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  AssignmentSolution sol;
  sol.permutation.assign(n, -1);
  for (int j = 1; j <= n; ++j) sol.permutation[match[j] - 1] = j - 1;
  sol.total_cost = 0.0;
  for (int i = 0; i < n; ++i) sol.total_cost += costs.at(i, sol.permutation[i]);
  return sol;
}

Matrix pad_to_square(const Matrix& costs, std::span<const double> row_pad_costs,
                     std::span<const double> col_pad_costs) {
  const int n = costs.rows, m = costs.cols;
  if (n < 1 || m < 1) throw std::invalid_argument("pad_to_square: cost matrix is empty");
  if (n == m) return costs;
  const int size = std::max(n, m);
  Matrix out(size, size, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) out.at(i, j) = costs.at(i, j);
  if (n < m) {
    if (static_cast<int>(col_pad_costs.size()) != m)
      throw std::invalid_argument("pad_to_square: column pad-cost vector length mismatch");
    for (int i = n; i < size; ++i)
      for (int j = 0; j < m; ++j) out.at(i, j) = col_pad_costs[j];
  } else {
    if (static_cast<int>(row_pad_costs.size()) != n)
      throw std::invalid_argument("pad_to_square: row pad-cost vector length mismatch");
    for (int i = 0; i < n; ++i)
      for (int j = m; j < size; ++j) out.at(i, j) = row_pad_costs[i];
  }
  return out;
}

}  // namespace dtgw
