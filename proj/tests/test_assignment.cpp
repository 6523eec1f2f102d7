#include <doctest.h>

#include <array>
#include <chrono>
#include <numeric>

#include "dtgw/assignment.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace dtgw;

namespace {

Matrix from_rows(std::vector<std::vector<double>> rows) {
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  return m;
}

}  // namespace

TEST_CASE("assignment examples") {
  Matrix diag(3, 3, 10.0);
  diag.at(0, 0) = diag.at(1, 1) = diag.at(2, 2) = 0.0;
  const auto s1 = solve_assignment(diag);
  CHECK(s1.total_cost == 0.0);
  CHECK(s1.permutation == std::vector<int>{0, 1, 2});

  const auto s2 = solve_assignment(from_rows({{1, 2}, {2, 1}}));
  CHECK(s2.total_cost == 2.0);
  CHECK(s2.permutation == std::vector<int>{0, 1});

  CHECK(solve_assignment(from_rows({{4, 1, 3}, {2, 0, 5}, {3, 2, 2}})).total_cost == 5.0);
}

TEST_CASE("assignment rejects bad input") {
  CHECK_THROWS(solve_assignment(Matrix(2, 3, 1.0)));
  CHECK_THROWS(solve_assignment(Matrix(0, 0)));
  Matrix negative(2, 2, 1.0);
  negative.at(0, 1) = -1.0;
  CHECK_THROWS(solve_assignment(negative));
  Matrix nan(1, 1, std::numeric_limits<double>::quiet_NaN());
  CHECK_THROWS(solve_assignment(nan));
}

TEST_CASE("assignment matches brute force on random integer matrices") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_below(6));
    const auto m = testgen::random_int_matrix(rng, n, n, 0, 20);
    const auto sol = solve_assignment(m);
    CHECK(sol.total_cost == oracle::brute_assignment(m));
    // solution is a valid permutation realizing the reported cost
    double recomputed = 0.0;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
      REQUIRE(sol.permutation[i] >= 0);
      REQUIRE(sol.permutation[i] < n);
      CHECK_FALSE(seen[sol.permutation[i]]);
      seen[sol.permutation[i]] = 1;
      recomputed += m.at(i, sol.permutation[i]);
    }
    CHECK(recomputed == sol.total_cost);
  }
}

TEST_CASE("row-constant shift moves the optimum by the constant") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(5));
    auto m = testgen::random_int_matrix(rng, n, n, 0, 9);
    const double base = solve_assignment(m).total_cost;
    const int row = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    const double shift = 1.0 + static_cast<double>(rng.next_below(5));
    for (int j = 0; j < n; ++j) m.at(row, j) += shift;
    CHECK(solve_assignment(m).total_cost == base + shift);
  }
}

TEST_CASE("assignment is deterministic") {
  SplitMix64 rng(31);
  const auto m = testgen::random_int_matrix(rng, 6, 6, 0, 3);  // many ties
  const auto first = solve_assignment(m);
  for (int rep = 0; rep < 5; ++rep) {
    const auto again = solve_assignment(m);
    CHECK(again.permutation == first.permutation);
    CHECK(again.total_cost == first.total_cost);
  }
}

TEST_CASE("pad_to_square examples") {
  const std::array<double, 2> col_costs{1, 2};
  const auto padded = pad_to_square(from_rows({{3, 4}}), std::array<double, 1>{9}, col_costs);
  REQUIRE(padded.rows == 2);
  REQUIRE(padded.cols == 2);
  CHECK(padded.at(0, 0) == 3);
  CHECK(padded.at(0, 1) == 4);
  CHECK(padded.at(1, 0) == 1);
  CHECK(padded.at(1, 1) == 2);

  const auto square = pad_to_square(from_rows({{1, 2}, {3, 4}}), col_costs, col_costs);
  CHECK(square.at(0, 1) == 2);
  CHECK(square.rows == 2);

  const std::array<double, 2> row_costs{5, 6};
  const auto wide = pad_to_square(from_rows({{7}, {8}}), row_costs, std::array<double, 1>{9});
  REQUIRE(wide.cols == 2);
  CHECK(wide.at(0, 0) == 7);
  CHECK(wide.at(0, 1) == 5);
  CHECK(wide.at(1, 0) == 8);
  CHECK(wide.at(1, 1) == 6);

  CHECK(pad_to_square(from_rows({{1, 1, 1}}), std::array<double, 1>{0},
                      std::array<double, 3>{1, 2, 3})
            .rows == 3);
  CHECK_THROWS(pad_to_square(from_rows({{1, 2}}), std::array<double, 1>{0},
                             std::array<double, 1>{0}));
}

TEST_CASE("assignment runtime grows roughly cubically" * doctest::skip(false)) {
  SplitMix64 rng(9);
  auto time_solve = [&](int n) {
    const auto m = testgen::random_int_matrix(rng, n, n, 0, 1000);
    const auto start = std::chrono::steady_clock::now();
    solve_assignment(m);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  time_solve(64);  // warm up
  const double small = std::max(1e-5, time_solve(128));
  const double large = time_solve(256);
  // soft check: doubling n should stay well under a ~10x growth budget
  WARN_LE(large / small, 12.0);
}
