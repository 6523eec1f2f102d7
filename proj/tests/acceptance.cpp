// Acceptance harness: ten end-to-end criteria, one PASS/FAIL line each.
// Exit code = number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dtgw/assignment.hpp"
#include "dtgw/dtgw.hpp"
#include "dtgw/errors.hpp"
#include "dtgw/experiments.hpp"
#include "dtgw/qp_export.hpp"
#include "dtgw/random.hpp"
#include "dtgw/warp.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace dtgw;

namespace {

// ---- shared AM bookkeeping (criterion 10 aggregates every heuristic run) ----

struct AmTally {
  long runs = 0;
  long within_ten = 0;
  long exhausted = 0;

  void add(const DtgwResult& r, int max_iterations) {
    ++runs;
    if (r.iterations <= 10) ++within_ten;
    const bool converged = r.trace.size() >= 2 &&
                           r.trace.back() + 1e-12 >= r.trace[r.trace.size() - 2];
    if (r.iterations == max_iterations && !converged) ++exhausted;
  }
};

AmTally g_tally;

DtgwResult run_am(const TemporalGraph& g, const TemporalGraph& h, const DtgwOptions& opts) {
  DtgwResult r = am_heuristic(g, h, opts);
  g_tally.add(r, opts.max_iterations);
  return r;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

constexpr InitKind kFreeInits[] = {InitKind::sigma_star, InitKind::sigma_opt, InitKind::swp,
                                   InitKind::owp};

// ---- criterion bodies; each returns a failure message ("" = pass) ----

std::string criterion_assignment() {
  const auto t0 = std::chrono::steady_clock::now();
  SplitMix64 rng(101);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_below(7));
    const auto costs = testgen::random_int_matrix(rng, n, n, 0, 9);
    const double got = solve_assignment(costs).total_cost;
    const double want = oracle::brute_assignment(costs);
    if (got != want)
      return "trial " + std::to_string(trial) + ": solver " + std::to_string(got) +
             " != brute " + std::to_string(want);
  }
  const double secs = elapsed_s(t0);
  if (secs >= 5.0) return "took " + fmt(secs) + " s (limit 5)";
  return "";
}

std::string criterion_dtw() {
  const auto t0 = std::chrono::steady_clock::now();
  SplitMix64 rng(202);
  for (int trial = 0; trial < 200; ++trial) {
    const int t = 1 + static_cast<int>(rng.next_below(5));
    const int u = 1 + static_cast<int>(rng.next_below(5));
    const auto costs = testgen::random_int_matrix(rng, t, u, 0, 9);
    const double got = dtw_optimal_path(costs, BandConstraint::none()).total;
    double want = std::numeric_limits<double>::infinity();
    for (const auto& path : oracle::all_paths(t, u, std::nullopt)) {
      double sum = 0.0;
      for (const auto& [i, j] : path) sum += costs.at(i - 1, j - 1);
      want = std::min(want, sum);
    }
    if (got != want)
      return "trial " + std::to_string(trial) + ": dtw " + std::to_string(got) +
             " != enumeration " + std::to_string(want);
  }
  const double secs = elapsed_s(t0);
  if (secs >= 5.0) return "took " + fmt(secs) + " s (limit 5)";
  return "";
}

std::string criterion_path_counts() {
  const auto t0 = std::chrono::steady_clock::now();
  for (int t = 1; t <= 6; ++t) {
    for (int u = 1; u <= t; ++u) {
      for (int lam = -1; lam <= u - 1; ++lam) {
        const std::optional<int> lambda = lam < 0 ? std::nullopt : std::optional<int>(lam);
        std::uint64_t visited = 0;
        enumerate_warping_paths(t, u, lambda, [&](const WarpingPath&) {
          ++visited;
          return true;
        });
        const std::uint64_t counted = count_warping_paths(t, u, lambda);
        const std::uint64_t reference = oracle::all_paths(t, u, lambda).size();
        if (visited != counted || visited != reference)
          return "order (" + std::to_string(t) + "," + std::to_string(u) + ") lambda " +
                 std::to_string(lam) + ": enumerated " + std::to_string(visited) +
                 ", closed form " + std::to_string(counted) + ", oracle " +
                 std::to_string(reference);
        if (!lambda && counted != oracle::delannoy(t, u))
          return "order (" + std::to_string(t) + "," + std::to_string(u) +
                 "): count != Delannoy";
      }
    }
  }
  if (count_warping_paths(3, 3, std::nullopt) != 13) return "order (3,3) must have 13 paths";
  const double secs = elapsed_s(t0);
  if (secs >= 10.0) return "took " + fmt(secs) + " s (limit 10)";
  return "";
}

std::string criterion_exact_brute() {
  const auto t0 = std::chrono::steady_clock::now();
  SplitMix64 rng(404);
  DtgwOptions opts;
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = testgen::random_graph(rng, 1 + static_cast<int>(rng.next_below(4)),
                                         1 + static_cast<int>(rng.next_below(4)), 0.5);
    const auto h = testgen::random_graph(rng, 1 + static_cast<int>(rng.next_below(4)),
                                         1 + static_cast<int>(rng.next_below(4)), 0.5);
    const double got = exact_dtgw(g, h, opts).distance;
    const double want = oracle::brute_dtgw_degree_l1(g, h);
    if (std::abs(got - want) > 1e-9)
      return "trial " + std::to_string(trial) + ": exact " + std::to_string(got) +
             " != brute " + std::to_string(want);
  }
  const double secs = elapsed_s(t0);
  if (secs >= 60.0) return "took " + fmt(secs) + " s (limit 60)";
  return "";
}

std::string criterion_zero_test() {
  const auto t0 = std::chrono::steady_clock::now();
  SplitMix64 rng(505);
  DtgwOptions opts;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_below(5));
    const auto g = testgen::random_evolving_graph(rng, n, 1 + static_cast<int>(rng.next_below(5)),
                                                  0.4, 0.3);
    TemporalGraph h;
    switch (trial % 4) {
      case 0:  // unrelated graph on the same number of vertices
        h = testgen::random_graph(rng, n, 1 + static_cast<int>(rng.next_below(5)), 0.4);
        break;
      case 1: h = testgen::relabel(g, testgen::random_permutation(rng, n)); break;
      case 2:
        h = testgen::duplicate_layer(g, static_cast<int>(rng.next_below(g.lifetime())));
        break;
      default:
        h = testgen::relabel(
            testgen::duplicate_layer(g, static_cast<int>(rng.next_below(g.lifetime()))),
            testgen::random_permutation(rng, n));
        break;
    }
    const bool fast = is_zero_dtgw(g, h, opts).is_zero;
    const bool truly = exact_dtgw(g, h, opts).distance <= 1e-9;
    if (fast != truly)
      return "trial " + std::to_string(trial) + ": zero test says " +
             (fast ? "yes" : "no") + ", exact says " + (truly ? "yes" : "no");
  }
  const double secs = elapsed_s(t0);
  if (secs >= 60.0) return "took " + fmt(secs) + " s (limit 60)";
  return "";
}

std::string criterion_sandwich() {
  const auto t0 = std::chrono::steady_clock::now();
  SplitMix64 rng(606);
  DtgwOptions opts;
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = testgen::random_graph(rng, 1 + static_cast<int>(rng.next_below(5)),
                                         1 + static_cast<int>(rng.next_below(4)), 0.5);
    const auto h = testgen::random_graph(rng, 1 + static_cast<int>(rng.next_below(5)),
                                         1 + static_cast<int>(rng.next_below(4)), 0.5);
    const double exact = exact_dtgw(g, h, opts).distance;
    const double lower = non_consistent_distance(g, h, opts);
    if (lower > exact + 1e-9)
      return "trial " + std::to_string(trial) + ": non-consistent " + std::to_string(lower) +
             " above exact " + std::to_string(exact);
    for (const InitKind init : kFreeInits) {
      DtgwOptions ho;
      ho.init = init;
      const auto r = run_am(g, h, ho);
      if (r.distance < exact - 1e-9)
        return "trial " + std::to_string(trial) + " init " + to_string(init) +
               ": heuristic " + std::to_string(r.distance) + " below exact " +
               std::to_string(exact);
      for (std::size_t k = 1; k + 1 < r.trace.size(); ++k)
        if (!(r.trace[k] < r.trace[k - 1]))
          return "trial " + std::to_string(trial) + " init " + to_string(init) +
                 ": trace not strictly decreasing before convergence";
      if (r.trace.size() >= 2 && r.trace.back() > r.trace[r.trace.size() - 2] + 1e-9)
        return "trial " + std::to_string(trial) + " init " + to_string(init) +
               ": trace increased at the last round";
    }
    if (exact_dtgw(g, g, opts).distance != 0.0)
      return "trial " + std::to_string(trial) + ": exact(g,g) != 0";
    for (const InitKind init : {InitKind::swp, InitKind::owp}) {
      DtgwOptions ho;
      ho.init = init;
      if (run_am(g, g, ho).distance != 0.0)
        return "trial " + std::to_string(trial) + ": AM(g,g) != 0 with init " +
               to_string(init);
    }
  }
  const double secs = elapsed_s(t0);
  if (secs >= 120.0) return "took " + fmt(secs) + " s (limit 120)";
  return "";
}

std::string criterion_heuristic_quality() {
  const auto t0 = std::chrono::steady_clock::now();
  SplitMix64 rng(707);
  DtgwOptions opts;
  const int instances = 100;
  std::vector<std::vector<std::pair<double, double>>> pairs(4);
  for (int trial = 0; trial < instances; ++trial) {
    const auto g = testgen::random_evolving_graph(rng, 6, 8, 0.3, 0.15);
    const auto h = testgen::random_evolving_graph(rng, 6, 8, 0.3, 0.15);
    const double exact = exact_dtgw(g, h, opts).distance;
    for (int k = 0; k < 4; ++k) {
      DtgwOptions ho;
      ho.init = kFreeInits[k];
      pairs[static_cast<std::size_t>(k)].push_back({run_am(g, h, ho).distance, exact});
    }
  }
  std::string report;
  for (int k = 0; k < 4; ++k) {
    const auto stats = error_stats(pairs[static_cast<std::size_t>(k)]);
    report += std::string(k ? ", " : "") + to_string(kFreeInits[k]) + " avg " +
              fmt(stats.avg) + "% p0 " + fmt(stats.p0);
    if (stats.p0 < 0.4 || stats.avg > 15.0)
      return std::string(to_string(kFreeInits[k])) + ": avg " + fmt(stats.avg) +
             "% p0 " + fmt(stats.p0) + " misses the band (avg <= 15, p0 >= 0.4)";
  }
  const double secs = elapsed_s(t0);
  if (secs >= 600.0) return "took " + fmt(secs) + " s (limit 600)";
  return "OK:" + report;
}

std::string criterion_qp() {
  const auto t0 = std::chrono::steady_clock::now();
  SplitMix64 rng(808);
  DtgwOptions opts;

  {  // frozen shape: |V| = |W| = 2, T = U = 2 -> 13 variables, 8 constraints
    const auto g = testgen::graph({"a", "b"}, {{{0, 1}}, {}});
    const auto h = testgen::graph({"x", "y"}, {{}, {{0, 1}}});
    std::stringstream buf;
    export_qp(g, h, opts, buf);
    buf.seekg(0);
    const auto model = oracle::parse_qp(buf);
    if (model.m_vars.size() + model.w_vars.size() != 13)
      return "2,2,2,2 model must have 13 variables, got " +
             std::to_string(model.m_vars.size() + model.w_vars.size());
    if (model.constraints.size() != 8)
      return "2,2,2,2 model must have 8 constraints, got " +
             std::to_string(model.constraints.size());
  }

  for (int trial = 0; trial < 20; ++trial) {
    const auto g = testgen::random_graph(rng, 1 + static_cast<int>(rng.next_below(3)),
                                         1 + static_cast<int>(rng.next_below(3)), 0.5);
    const auto h = testgen::random_graph(rng, 1 + static_cast<int>(rng.next_below(3)),
                                         1 + static_cast<int>(rng.next_below(3)), 0.5);
    std::stringstream buf;
    export_qp(g, h, opts, buf);
    buf.seekg(0);
    const double got = oracle::qp_brute_min(oracle::parse_qp(buf));
    const double want = exact_dtgw(g, h, opts).distance;
    if (std::abs(got - want) > 1e-9)
      return "trial " + std::to_string(trial) + ": model optimum " + std::to_string(got) +
             " != exact " + std::to_string(want);
  }
  const double secs = elapsed_s(t0);
  if (secs >= 60.0) return "took " + fmt(secs) + " s (limit 60)";
  return "";
}

// heterogeneous activity profile; vertices are told apart by their personal
// rate and activity window, which survives mild noise
TemporalGraph hetero_graph(SplitMix64& rng, int n, int t) {
  TemporalGraph g;
  g.vertex_labels = testgen::labels(n);
  std::vector<int> w_start(static_cast<std::size_t>(n)), w_end(static_cast<std::size_t>(n));
  std::vector<double> rate(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    w_start[v] = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(t) / 2));
    w_end[v] = w_start[v] + t / 2 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(t) / 4));
    rate[v] = 0.25 + 0.7 * (static_cast<double>(v) / std::max(1, n - 1));
  }
  g.layers.resize(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i)
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        const bool active = i >= w_start[u] && i < w_end[u] && i >= w_start[v] && i < w_end[v];
        if (active && rng.next_double() < rate[u] * rate[v] * 0.5) g.layers[i].push_back({u, v});
      }
  return g;
}

std::string criterion_experiments() {
  const auto t0 = std::chrono::steady_clock::now();
  DtgwOptions opts;

  const NoiseModel models[] = {NoiseModel::deletion, NoiseModel::temporal_rewire,
                               NoiseModel::underlying_rewire};
  int cluster_hits = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SplitMix64 rng(900 + seed);
    const double densities[] = {0.08, 0.2, 0.4};
    std::vector<TemporalGraph> graphs;
    std::vector<int> family;
    for (int ref = 0; ref < 3; ++ref) {
      const auto base = testgen::random_graph(rng, 20, 50, densities[ref]);
      graphs.push_back(base);
      family.push_back(ref);
      for (const NoiseModel m : models) {
        graphs.push_back(perturb(base, {m, 0.1, rng.next()}));
        family.push_back(ref);
      }
    }
    const int count = static_cast<int>(graphs.size());
    Matrix d(count, count, 0.0);
    for (int i = 0; i < count; ++i)
      for (int j = i + 1; j < count; ++j)
        d.at(i, j) = d.at(j, i) = run_am(graphs[i], graphs[j], opts).distance;
    const auto parts = cut_dendrogram(complete_linkage_cluster(d), 3);
    bool ok = parts.size() == 3;
    if (ok)
      for (const auto& cluster : parts) {
        std::set<int> fams;
        for (int leaf : cluster) fams.insert(family[static_cast<std::size_t>(leaf)]);
        if (fams.size() != 1 || cluster.size() != 4) ok = false;
      }
    if (ok) ++cluster_hits;
  }
  if (cluster_hits < 9)
    return "clustering recovered the families in only " + std::to_string(cluster_hits) +
           "/10 trials (need 9)";

  int deanon_hits = 0;
  double worst = 1.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SplitMix64 rng(1700 + seed);
    const auto g = hetero_graph(rng, 20, 50);
    const auto noisy = perturb(g, {NoiseModel::deletion, 0.1, rng.next()});
    const auto perm = testgen::random_permutation(rng, 20);
    const auto h = testgen::relabel(noisy, perm);
    std::unordered_map<int, int> truth;
    for (int v = 0; v < 20; ++v) truth[v] = perm[static_cast<std::size_t>(v)];
    const auto r = run_am(g, h, opts);
    const double acc = deanonymization_accuracy(r.mapping, truth);
    worst = std::min(worst, acc);
    if (acc >= 0.8) ++deanon_hits;
  }
  if (deanon_hits < 8)
    return "deanonymization accuracy >= 0.8 in only " + std::to_string(deanon_hits) +
           "/10 trials (worst " + fmt(worst) + ")";

  const double secs = elapsed_s(t0);
  if (secs >= 300.0) return "took " + fmt(secs) + " s (limit 300)";
  return "OK: clustering " + std::to_string(cluster_hits) + "/10, deanonymization " +
         std::to_string(deanon_hits) + "/10";
}

std::string criterion_convergence() {
  if (g_tally.runs == 0) return "no heuristic runs were recorded";
  if (g_tally.exhausted > 0)
    return std::to_string(g_tally.exhausted) + " of " + std::to_string(g_tally.runs) +
           " runs exhausted max_iterations without converging";
  const double pct = 100.0 * static_cast<double>(g_tally.within_ten) /
                     static_cast<double>(g_tally.runs);
  std::string note = std::to_string(g_tally.within_ten) + "/" + std::to_string(g_tally.runs) +
                     " runs took <= 10 iterations (" + fmt(pct) + "%)";
  if (pct < 99.0) note += " -- below the 99% report line";
  return "OK: " + note;
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    std::function<std::string()> body;
  };
  const Criterion criteria[] = {
      {"assignment oracle equivalence (500 matrices, n in [1,7])", criterion_assignment},
      {"dtw oracle equivalence (200 grids, T,U in [1,5])", criterion_dtw},
      {"path-count identity vs enumeration and Delannoy", criterion_path_counts},
      {"exact dtgw equals double brute force (100 instances)", criterion_exact_brute},
      {"zero test agrees with the exact solver (200 instances)", criterion_zero_test},
      {"sandwich and identity invariants (200 instances)", criterion_sandwich},
      {"heuristic quality calibration (100 instances, n=6, T=U=8)",
       criterion_heuristic_quality},
      {"qp export brute-force optimum equals exact (20 instances)", criterion_qp},
      {"noise clustering and de-anonymization recovery", criterion_experiments},
      {"AM convergence bound across all suites", criterion_convergence},
  };

  int failures = 0;
  int number = 1;
  for (const auto& c : criteria) {
    std::string msg;
    try {
      msg = c.body();
    } catch (const std::exception& e) {
      msg = std::string("exception: ") + e.what();
    }
    const bool pass = msg.empty() || msg.rfind("OK", 0) == 0;
    std::printf("%s criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", number, c.label,
                msg.empty() ? "" : " -- ", msg.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
    ++number;
  }
  return failures;
}
