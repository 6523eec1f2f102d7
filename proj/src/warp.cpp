#include "dtgw/warp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

#include "dtgw/errors.hpp"

namespace dtgw {

BandConstraint BandConstraint::sakoe_chiba(int w) {
  if (w < 0) throw std::invalid_argument("band width must be nonnegative");
  BandConstraint b;
  b.width = w;
  return b;
}

bool BandConstraint::admits(int i, int j, int t, int u) const {
  if (unconstrained()) return true;
  // |j - i*u/t| <= width, scaled by t to stay in integers
  const long long lhs = std::llabs(static_cast<long long>(j) * t - static_cast<long long>(i) * u);
  return lhs <= static_cast<long long>(width) * t;
}

DtwResult dtw_optimal_path(const Matrix& costs, const BandConstraint& band) {
  const int t = costs.rows, u = costs.cols;
  if (t < 1 || u < 1) throw std::invalid_argument("dtw: empty cost matrix");
  for (double c : costs.data)
    if (!std::isfinite(c) || c < 0.0)
      throw std::invalid_argument("dtw: entries must be finite and nonnegative");

  const double inf = std::numeric_limits<double>::infinity();
  Matrix dp(t, u, inf);
  for (int i = 0; i < t; ++i) {
    for (int j = 0; j < u; ++j) {
      if (!band.admits(i + 1, j + 1, t, u)) continue;
      double best;
      if (i == 0 && j == 0) {
        best = 0.0;
      } else {
        best = inf;
        if (i > 0 && j > 0) best = std::min(best, dp.at(i - 1, j - 1));
        if (j > 0) best = std::min(best, dp.at(i, j - 1));
        if (i > 0) best = std::min(best, dp.at(i - 1, j));
      }
      if (best < inf) dp.at(i, j) = best + costs.at(i, j);
    }
  }
  if (!(dp.at(t - 1, u - 1) < inf))
    throw InputError("dtw: band of width " + std::to_string(band.width) +
                     " admits no warping path for order (" + std::to_string(t) + "," +
                     std::to_string(u) + ")");

  WarpingPath path;
  path.order_t = t;
  path.order_u = u;
  int i = t - 1, j = u - 1;
  path.pairs.push_back({t, u});
  while (i != 0 || j != 0) {
    const double need = dp.at(i, j) - costs.at(i, j);
    if (i > 0 && j > 0 && dp.at(i - 1, j - 1) == need) {
      --i;
      --j;
    } else if (j > 0 && dp.at(i, j - 1) == need) {
      --j;
    } else {
      --i;
    }
    path.pairs.push_back({i + 1, j + 1});
  }
  std::reverse(path.pairs.begin(), path.pairs.end());
  return DtwResult{std::move(path), dp.at(t - 1, u - 1)};
}

namespace {

bool enumerate_rec(WarpingPath& path, int i, int j, int max_len, const PathVisitor& visit) {
  const int t = path.order_t, u = path.order_u;
  if (i == t && j == u) return visit(path);
  static constexpr int kStep[3][2] = {{1, 1}, {1, 0}, {0, 1}};
  for (const auto& s : kStep) {
    const int ni = i + s[0], nj = j + s[1];
    if (ni > t || nj > u) continue;
    // cheapest completion takes max(t-ni, u-nj) further pairs
    if (path.length() + 1 + std::max(t - ni, u - nj) > max_len) continue;
    path.pairs.push_back({ni, nj});
    const bool keep_going = enumerate_rec(path, ni, nj, max_len, visit);
    path.pairs.pop_back();
    if (!keep_going) return false;
  }
  return true;
}

constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();

// C(a, b), exact until the value exceeds uint64, then sticks at kSat.
std::uint64_t sat_binom(long long a, long long b) {
  if (b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  std::uint64_t c = 1;
  for (long long k = 1; k <= b; ++k) {
    const unsigned __int128 prod = static_cast<unsigned __int128>(c) * (a - b + k);
    const unsigned __int128 next = prod / k;  // stays integral at every step
    if (next > kSat) return kSat;
    c = static_cast<std::uint64_t>(next);
  }
  return c;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSat - b ? kSat : a + b; }

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSat / b) return kSat;
  return a * b;
}

}  // namespace

bool enumerate_warping_paths(int t, int u, std::optional<int> lambda,
                             const PathVisitor& visit) {
  if (t < 1 || u < 1) throw std::invalid_argument("enumerate_warping_paths: bad order");
  if (t < u)
    throw std::invalid_argument(
        "enumerate_warping_paths: requires T >= U (transpose the instance)");
  if (lambda && *lambda < 0)
    throw std::invalid_argument("enumerate_warping_paths: lambda must be nonnegative");
  const int max_len = lambda ? std::min(t + *lambda, t + u - 1) : t + u - 1;
  WarpingPath path;
  path.order_t = t;
  path.order_u = u;
  path.pairs.reserve(static_cast<std::size_t>(max_len));
  path.pairs.push_back({1, 1});
  return enumerate_rec(path, 1, 1, max_len, visit);
}

std::uint64_t count_warping_paths(int t, int u, std::optional<int> lambda) {
  if (t < 1 || u < 1) throw std::invalid_argument("count_warping_paths: bad order");
  if (t < u) throw std::invalid_argument("count_warping_paths: requires T >= U");
  if (lambda && *lambda < 0)
    throw std::invalid_argument("count_warping_paths: lambda must be nonnegative");
  const int excess = t - u;
  const int lmax = lambda ? std::min(*lambda, u - 1) : u - 1;
  std::uint64_t total = 0;
  for (int l = 0; l <= lmax; ++l) {
    // paths of length exactly t + l: l vertical steps, l + (t-u) horizontal
    total = sat_add(total, sat_mul(sat_binom(t + l - 1, l), sat_binom(t - 1, l + excess)));
    if (total == kSat) break;
  }
  return total;
}

WarpingPath shortest_warping_path(int t, int u) {
  if (t < 1 || u < 1) throw std::invalid_argument("shortest_warping_path: bad order");
  if (t < u) {
    WarpingPath q = shortest_warping_path(u, t);
    WarpingPath p;
    p.order_t = t;
    p.order_u = u;
    p.pairs.reserve(q.pairs.size());
    for (const auto& [i, j] : q.pairs) p.pairs.push_back({j, i});
    return p;
  }
  WarpingPath p;
  p.order_t = t;
  p.order_u = u;
  p.pairs.reserve(static_cast<std::size_t>(t));
  int prev = 1;
  for (int i = 1; i <= t; ++i) {
    int j = static_cast<int>(std::lround(static_cast<double>(i) * u / t));
    j = std::clamp(j, prev, std::min(prev + 1, u));
    if (i == 1) j = 1;
    p.pairs.push_back({i, j});
    prev = j;
  }
  return p;
}

}  // namespace dtgw
