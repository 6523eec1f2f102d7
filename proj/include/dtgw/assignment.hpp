#pragma once

#include <span>
#include <vector>

#include "dtgw/matrix.hpp"

namespace dtgw {

struct AssignmentSolution {
  std::vector<int> permutation;  // permutation[row] = assigned column
  double total_cost = 0.0;
};

// Minimum-cost perfect matching on a square matrix of finite nonnegative
// costs. Jonker-Volgenant style shortest augmenting paths with dual
// potentials, O(n^3), deterministic for a given input.
AssignmentSolution solve_assignment(const Matrix& costs);

// Pads a rectangular matrix to square with deletion costs. When rows are
// added (n < m) each new row copies col_pad_costs (cost of deleting the
// column vertex); when columns are added (m < n) each new column copies
// row_pad_costs. A square input is returned unchanged.
Matrix pad_to_square(const Matrix& costs, std::span<const double> row_pad_costs,
                     std::span<const double> col_pad_costs);

}  // namespace dtgw
