#include "dtgw/dtgw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dtgw/assignment.hpp"
#include "dtgw/errors.hpp"

namespace dtgw {

InitKind init_kind_from_string(const std::string& s) {
  if (s == "sigma-star" || s == "sigma_star") return InitKind::sigma_star;
  if (s == "sigma-opt" || s == "sigma_opt") return InitKind::sigma_opt;
  if (s == "swp") return InitKind::swp;
  if (s == "owp") return InitKind::owp;
  if (s == "fixed-path" || s == "fixed_path") return InitKind::fixed_path;
  if (s == "fixed-mapping" || s == "fixed_mapping") return InitKind::fixed_mapping;
  throw std::invalid_argument("unknown initialization '" + s + "'");
}

std::string to_string(InitKind k) {
  switch (k) {
    case InitKind::sigma_star: return "sigma-star";
    case InitKind::sigma_opt: return "sigma-opt";
    case InitKind::swp: return "swp";
    case InitKind::owp: return "owp";
    case InitKind::fixed_path: return "fixed-path";
    case InitKind::fixed_mapping: return "fixed-mapping";
  }
  return "?";
}

namespace {

void check_layer_indices(const SignatureMatrix& gsig, const SignatureMatrix& hsig, int i,
                         int j) {
  if (i < 1 || i > gsig.lifetime || j < 1 || j > hsig.lifetime)
    throw std::invalid_argument("layer index (" + std::to_string(i) + "," + std::to_string(j) +
                                ") out of range");
  if (gsig.dim != hsig.dim)
    throw std::invalid_argument("signature dimension mismatch");
}

void check_mapping(const VertexMapping& m, const SignatureMatrix& gsig,
                   const SignatureMatrix& hsig) {
  if (auto bad = validate_vertex_mapping(m, gsig.vertex_count, hsig.vertex_count))
    throw std::invalid_argument("invalid vertex mapping: " + bad->kind + " (" + bad->detail +
                                ")");
}

void check_path(const WarpingPath& p, const SignatureMatrix& gsig,
                const SignatureMatrix& hsig) {
  if (auto bad = validate_warping_path(p))
    throw std::invalid_argument("invalid warping path: " + bad->kind + " (" + bad->detail + ")");
  if (p.order_t != gsig.lifetime || p.order_u != hsig.lifetime)
    throw std::invalid_argument("warping path order (" + std::to_string(p.order_t) + "," +
                                std::to_string(p.order_u) + ") does not match lifetimes (" +
                                std::to_string(gsig.lifetime) + "," +
                                std::to_string(hsig.lifetime) + ")");
}

// Sum of deletion costs of the vertices NOT marked in `mapped`, per layer.
std::vector<double> unmatched_delta_sums(const SignatureMatrix& s,
                                         const std::vector<char>& mapped, MetricKind metric,
                                         const DeletionPolicy& del) {
  std::vector<double> out(static_cast<std::size_t>(s.lifetime), 0.0);
  for (int i = 0; i < s.lifetime; ++i) {
    double acc = 0.0;
    for (int v = 0; v < s.vertex_count; ++v)
      if (!mapped[v]) acc += deletion_cost(del, metric, s.at(i, v));
    out[i] = acc;
  }
  return out;
}

Matrix mapping_cost_grid(const SignatureMatrix& gsig, const SignatureMatrix& hsig,
                         const VertexMapping& m, MetricKind metric,
                         const DeletionPolicy& del) {
  std::vector<char> gm(static_cast<std::size_t>(gsig.vertex_count), 0);
  std::vector<char> hm(static_cast<std::size_t>(hsig.vertex_count), 0);
  for (const auto& [u, v] : m.pairs) {
    gm[u] = 1;
    hm[v] = 1;
  }
  const std::vector<double> gdel = unmatched_delta_sums(gsig, gm, metric, del);
  const std::vector<double> hdel = unmatched_delta_sums(hsig, hm, metric, del);
  Matrix grid(gsig.lifetime, hsig.lifetime, 0.0);
  for (int i = 0; i < gsig.lifetime; ++i) {
    for (int j = 0; j < hsig.lifetime; ++j) {
      double total = gdel[i] + hdel[j];
      for (const auto& [u, v] : m.pairs)
        total += metric_eval(metric, gsig.at(i, u), hsig.at(j, v));
      grid.at(i, j) = total;
    }
  }
  return grid;
}

VertexMapping mapping_from_permutation(const std::vector<int>& perm, int ng, int nh) {
  VertexMapping m;
  m.pairs.reserve(static_cast<std::size_t>(std::min(ng, nh)));
  for (int r = 0; r < static_cast<int>(perm.size()); ++r)
    if (r < ng && perm[r] < nh) m.pairs.push_back({r, perm[r]});
  return m;
}

VertexMapping solve_padded_assignment(const Matrix& costs, std::span<const double> row_pad,
                                      std::span<const double> col_pad) {
  const auto sol = solve_assignment(pad_to_square(costs, row_pad, col_pad));
  return mapping_from_permutation(sol.permutation, costs.rows, costs.cols);
}

TemporalGraph validated(const TemporalGraph& g, const char* which) {
  if (auto bad = validate_temporal_graph(g))
    throw InputError(std::string(which) + " graph invalid: " + bad->kind + " (" + bad->detail +
                     (bad->layer >= 0 ? ", layer " + std::to_string(bad->layer) : "") + ")");
  return g;
}

void check_options(const DtgwOptions& opts) {
  if (opts.max_iterations < 1)
    throw std::invalid_argument("max_iterations must be at least 1");
  if (opts.lambda_budget && *opts.lambda_budget < 0)
    throw std::invalid_argument("lambda must be nonnegative");
}

DtgwResult make_result(double raw, VertexMapping m, WarpingPath p, int iterations,
                       std::vector<double> trace, bool exact, const TemporalGraph& g,
                       const TemporalGraph& h, const DtgwOptions& opts) {
  DtgwResult r;
  r.distance = normalize_distance(raw, g, h, opts.normalize);
  r.mapping = std::move(m);
  r.path = std::move(p);
  r.iterations = iterations;
  r.trace = std::move(trace);
  r.exact = exact;
  r.normalized = opts.normalize;
  return r;
}

bool band_admits_path(const WarpingPath& p, const BandConstraint& band) {
  if (band.unconstrained()) return true;
  for (const auto& [i, j] : p.pairs)
    if (!band.admits(i, j, p.order_t, p.order_u)) return false;
  return true;
}

}  // namespace

double mapping_cost(const SignatureMatrix& gsig, const SignatureMatrix& hsig, int i, int j,
                    const VertexMapping& m, MetricKind metric, const DeletionPolicy& del) {
  check_layer_indices(gsig, hsig, i, j);
  check_mapping(m, gsig, hsig);
  const int i0 = i - 1, j0 = j - 1;
  std::vector<char> gm(static_cast<std::size_t>(gsig.vertex_count), 0);
  std::vector<char> hm(static_cast<std::size_t>(hsig.vertex_count), 0);
  double total = 0.0;
  for (const auto& [u, v] : m.pairs) {
    gm[u] = 1;
    hm[v] = 1;
    total += metric_eval(metric, gsig.at(i0, u), hsig.at(j0, v));
  }
  for (int v = 0; v < gsig.vertex_count; ++v)
    if (!gm[v]) total += deletion_cost(del, metric, gsig.at(i0, v));
  for (int w = 0; w < hsig.vertex_count; ++w)
    if (!hm[w]) total += deletion_cost(del, metric, hsig.at(j0, w));
  return total;
}

double layer_distance(const SignatureMatrix& gsig, const SignatureMatrix& hsig, int i, int j,
                      MetricKind metric, const DeletionPolicy& del) {
  check_layer_indices(gsig, hsig, i, j);
  const int i0 = i - 1, j0 = j - 1;
  const int ng = gsig.vertex_count, nh = hsig.vertex_count;
  Matrix costs(ng, nh, 0.0);
  for (int u = 0; u < ng; ++u)
    for (int v = 0; v < nh; ++v)
      costs.at(u, v) = metric_eval(metric, gsig.at(i0, u), hsig.at(j0, v));
  std::vector<double> row_pad(static_cast<std::size_t>(ng), 0.0);
  std::vector<double> col_pad(static_cast<std::size_t>(nh), 0.0);
  for (int u = 0; u < ng; ++u) row_pad[u] = deletion_cost(del, metric, gsig.at(i0, u));
  for (int v = 0; v < nh; ++v) col_pad[v] = deletion_cost(del, metric, hsig.at(j0, v));
  return solve_assignment(pad_to_square(costs, row_pad, col_pad)).total_cost;
}

Matrix layer_distance_matrix(const SignatureMatrix& gsig, const SignatureMatrix& hsig,
                             MetricKind metric, const DeletionPolicy& del) {
  Matrix out(gsig.lifetime, hsig.lifetime, 0.0);
  for (int i = 1; i <= gsig.lifetime; ++i)
    for (int j = 1; j <= hsig.lifetime; ++j)
      out.at(i - 1, j - 1) = layer_distance(gsig, hsig, i, j, metric, del);
  return out;
}

std::pair<WarpingPath, double> optimal_path_for_mapping(const SignatureMatrix& gsig,
                                                        const SignatureMatrix& hsig,
                                                        const VertexMapping& m,
                                                        const DtgwOptions& opts) {
  check_mapping(m, gsig, hsig);
  const Matrix grid = mapping_cost_grid(gsig, hsig, m, opts.metric, opts.deletion);
  DtwResult r = dtw_optimal_path(grid, opts.band);
  return {std::move(r.path), r.total};
}

std::pair<VertexMapping, double> optimal_mapping_for_path(const SignatureMatrix& gsig,
                                                          const SignatureMatrix& hsig,
                                                          const WarpingPath& p,
                                                          const DtgwOptions& opts) {
  check_path(p, gsig, hsig);
  const int ng = gsig.vertex_count, nh = hsig.vertex_count;
  Matrix sigma(ng, nh, 0.0);
  std::vector<double> row_pad(static_cast<std::size_t>(ng), 0.0);
  std::vector<double> col_pad(static_cast<std::size_t>(nh), 0.0);
  for (const auto& [i, j] : p.pairs) {
    const int i0 = i - 1, j0 = j - 1;
    for (int u = 0; u < ng; ++u) {
      const auto gs = gsig.at(i0, u);
      for (int v = 0; v < nh; ++v)
        sigma.at(u, v) += metric_eval(opts.metric, gs, hsig.at(j0, v));
      row_pad[u] += deletion_cost(opts.deletion, opts.metric, gs);
    }
    for (int v = 0; v < nh; ++v)
      col_pad[v] += deletion_cost(opts.deletion, opts.metric, hsig.at(j0, v));
  }
  const auto sol = solve_assignment(pad_to_square(sigma, row_pad, col_pad));
  return {mapping_from_permutation(sol.permutation, ng, nh), sol.total_cost};
}

Matrix sigma_star_costs(const SignatureMatrix& gsig, const SignatureMatrix& hsig,
                        MetricKind metric) {
  Matrix out(gsig.vertex_count, hsig.vertex_count, 0.0);
  for (int i = 0; i < gsig.lifetime; ++i)
    for (int j = 0; j < hsig.lifetime; ++j)
      for (int u = 0; u < gsig.vertex_count; ++u) {
        const auto gs = gsig.at(i, u);
        for (int v = 0; v < hsig.vertex_count; ++v)
          out.at(u, v) += metric_eval(metric, gs, hsig.at(j, v));
      }
  return out;
}

Matrix sigma_opt_costs(const SignatureMatrix& gsig, const SignatureMatrix& hsig,
                       MetricKind metric) {
  Matrix out(gsig.vertex_count, hsig.vertex_count, 0.0);
  for (int u = 0; u < gsig.vertex_count; ++u) {
    for (int v = 0; v < hsig.vertex_count; ++v) {
      double acc = 0.0;
      for (int i = 0; i < gsig.lifetime; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (int j = 0; j < hsig.lifetime; ++j)
          best = std::min(best, metric_eval(metric, gsig.at(i, u), hsig.at(j, v)));
        acc += best;
      }
      out.at(u, v) = acc;
    }
  }
  return out;
}

VertexMapping init_sigma_star(const SignatureMatrix& gsig, const SignatureMatrix& hsig,
                              MetricKind metric, const DeletionPolicy& del) {
  const Matrix costs = sigma_star_costs(gsig, hsig, metric);
  // deletion costs aggregated over all layer pairs, like the estimates
  std::vector<double> row_pad(static_cast<std::size_t>(gsig.vertex_count), 0.0);
  std::vector<double> col_pad(static_cast<std::size_t>(hsig.vertex_count), 0.0);
  for (int u = 0; u < gsig.vertex_count; ++u) {
    double acc = 0.0;
    for (int i = 0; i < gsig.lifetime; ++i) acc += deletion_cost(del, metric, gsig.at(i, u));
    row_pad[u] = acc * hsig.lifetime;
  }
  for (int v = 0; v < hsig.vertex_count; ++v) {
    double acc = 0.0;
    for (int j = 0; j < hsig.lifetime; ++j) acc += deletion_cost(del, metric, hsig.at(j, v));
    col_pad[v] = acc * gsig.lifetime;
  }
  return solve_padded_assignment(costs, row_pad, col_pad);
}

VertexMapping init_sigma_opt(const SignatureMatrix& gsig, const SignatureMatrix& hsig,
                             MetricKind metric, const DeletionPolicy& del) {
  const Matrix costs = sigma_opt_costs(gsig, hsig, metric);
  // per-layer minima collapse: deleting u costs its per-layer delta, deleting
  // v its cheapest layer's delta once per G layer
  std::vector<double> row_pad(static_cast<std::size_t>(gsig.vertex_count), 0.0);
  std::vector<double> col_pad(static_cast<std::size_t>(hsig.vertex_count), 0.0);
  for (int u = 0; u < gsig.vertex_count; ++u) {
    double acc = 0.0;
    for (int i = 0; i < gsig.lifetime; ++i) acc += deletion_cost(del, metric, gsig.at(i, u));
    row_pad[u] = acc;
  }
  for (int v = 0; v < hsig.vertex_count; ++v) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < hsig.lifetime; ++j)
      best = std::min(best, deletion_cost(del, metric, hsig.at(j, v)));
    col_pad[v] = best * gsig.lifetime;
  }
  return solve_padded_assignment(costs, row_pad, col_pad);
}

WarpingPath init_owp(const SignatureMatrix& gsig, const SignatureMatrix& hsig,
                     const DtgwOptions& opts) {
  const Matrix grid = layer_distance_matrix(gsig, hsig, opts.metric, opts.deletion);
  return dtw_optimal_path(grid, opts.band).path;
}

DtgwResult am_heuristic(const TemporalGraph& g, const TemporalGraph& h,
                        const DtgwOptions& opts) {
  validated(g, "first");
  validated(h, "second");
  check_options(opts);
  const SignatureMatrix gsig = compute_signatures(g, opts.signature);
  const SignatureMatrix hsig = compute_signatures(h, opts.signature);
  const int t = g.lifetime(), u = h.lifetime();

  std::optional<VertexMapping> m0;
  std::optional<WarpingPath> p0;
  switch (opts.init) {
    case InitKind::swp: p0 = shortest_warping_path(t, u); break;
    case InitKind::owp: p0 = init_owp(gsig, hsig, opts); break;
    case InitKind::fixed_path:
      if (!opts.fixed_path)
        throw std::invalid_argument("init fixed-path requires options.fixed_path");
      check_path(*opts.fixed_path, gsig, hsig);
      p0 = *opts.fixed_path;
      break;
    case InitKind::sigma_star:
      m0 = init_sigma_star(gsig, hsig, opts.metric, opts.deletion);
      break;
    case InitKind::sigma_opt:
      m0 = init_sigma_opt(gsig, hsig, opts.metric, opts.deletion);
      break;
    case InitKind::fixed_mapping:
      if (!opts.fixed_mapping)
        throw std::invalid_argument("init fixed-mapping requires options.fixed_mapping");
      check_mapping(*opts.fixed_mapping, gsig, hsig);
      m0 = *opts.fixed_mapping;
      break;
  }

  if (opts.pin_path) {
    if (opts.init != InitKind::fixed_path)
      throw std::invalid_argument("pin_path requires init fixed-path");
    auto [mm, total] = optimal_mapping_for_path(gsig, hsig, *p0, opts);
    return make_result(total, std::move(mm), *p0, 1, {total}, false, g, h, opts);
  }

  VertexMapping cur_m;
  WarpingPath cur_p;
  std::vector<double> trace;
  double prev = std::numeric_limits<double>::infinity();
  int rounds = 0;

  if (p0) {
    cur_p = *p0;
    for (int it = 1; it <= opts.max_iterations; ++it) {
      auto [mm, cm] = optimal_mapping_for_path(gsig, hsig, cur_p, opts);
      cur_m = std::move(mm);
      auto [pp, cp] = optimal_path_for_mapping(gsig, hsig, cur_m, opts);
      cur_p = std::move(pp);
      trace.push_back(cp);
      rounds = it;
      if (cp + 1e-12 >= prev) break;
      prev = cp;
    }
  } else {
    cur_m = *m0;
    for (int it = 1; it <= opts.max_iterations; ++it) {
      auto [pp, cp] = optimal_path_for_mapping(gsig, hsig, cur_m, opts);
      cur_p = std::move(pp);
      auto [mm, cm] = optimal_mapping_for_path(gsig, hsig, cur_p, opts);
      cur_m = std::move(mm);
      trace.push_back(cm);
      rounds = it;
      if (cm + 1e-12 >= prev) break;
      prev = cm;
    }
  }
  const double final_total = trace.back();  // read before the move below
  return make_result(final_total, std::move(cur_m), std::move(cur_p), rounds,
                     std::move(trace), false, g, h, opts);
}

DtgwResult exact_dtgw(const TemporalGraph& g, const TemporalGraph& h,
                      const DtgwOptions& opts) {
  validated(g, "first");
  validated(h, "second");
  check_options(opts);
  const SignatureMatrix gsig = compute_signatures(g, opts.signature);
  const SignatureMatrix hsig = compute_signatures(h, opts.signature);
  const int t = g.lifetime(), u = h.lifetime();
  const bool transpose = t < u;
  const int et = std::max(t, u), eu = std::min(t, u);

  const std::uint64_t count = count_warping_paths(et, eu, opts.lambda_budget);
  if (count > opts.path_budget)
    throw BudgetError("exact dtgw would enumerate " + std::to_string(count) +
                          " warping paths, over the budget of " +
                          std::to_string(opts.path_budget),
                      count);

  double best = std::numeric_limits<double>::infinity();
  VertexMapping best_m;
  WarpingPath best_p;
  enumerate_warping_paths(et, eu, opts.lambda_budget, [&](const WarpingPath& q) {
    WarpingPath p;
    if (transpose) {
      p.order_t = t;
      p.order_u = u;
      p.pairs.reserve(q.pairs.size());
      for (const auto& [i, j] : q.pairs) p.pairs.push_back({j, i});
    } else {
      p = q;
    }
    if (!band_admits_path(p, opts.band)) return true;
    auto [m, total] = optimal_mapping_for_path(gsig, hsig, p, opts);
    if (total < best) {
      best = total;
      best_m = std::move(m);
      best_p = std::move(p);
    }
    return true;
  });
  if (!(best < std::numeric_limits<double>::infinity()))
    throw InputError("no admissible warping path under the given band/length restrictions");
  return make_result(best, std::move(best_m), std::move(best_p), 1, {best}, true, g, h, opts);
}

ZeroTestResult is_zero_dtgw(const TemporalGraph& g, const TemporalGraph& h,
                            const DtgwOptions& opts) {
  validated(g, "first");
  validated(h, "second");
  if (g.vertex_count() != h.vertex_count())
    throw std::invalid_argument("is_zero_dtgw requires equally sized vertex sets");
  const SignatureMatrix gsig = compute_signatures(g, opts.signature);
  const SignatureMatrix hsig = compute_signatures(h, opts.signature);
  const int n = g.vertex_count();

  // 1-based indices i with layer-signature(i) != layer-signature(i+1)
  auto change_points = [n](const SignatureMatrix& s) {
    std::vector<int> out;
    const std::size_t block = static_cast<std::size_t>(n) * s.dim;
    for (int i = 0; i + 1 < s.lifetime; ++i) {
      const double* a = s.values.data() + static_cast<std::size_t>(i) * block;
      const double* b = a + block;
      if (!std::equal(a, a + block, b)) out.push_back(i + 1);
    }
    return out;
  };
  const std::vector<int> gi = change_points(gsig);
  const std::vector<int> hj = change_points(hsig);
  if (gi.size() != hj.size()) return {};

  // canonical staircase: within each block of constant layer signatures,
  // sweep H layers first, then G layers
  WarpingPath p;
  p.order_t = g.lifetime();
  p.order_u = h.lifetime();
  p.pairs.push_back({1, 1});
  int ci = 1, cj = 1;
  for (std::size_t k = 0; k <= gi.size(); ++k) {
    const int iend = k < gi.size() ? gi[k] : g.lifetime();
    const int jend = k < hj.size() ? hj[k] : h.lifetime();
    if (k > 0) p.pairs.push_back({++ci, ++cj});  // diagonal step into the block
    while (cj < jend) p.pairs.push_back({ci, ++cj});
    while (ci < iend) p.pairs.push_back({++ci, cj});
  }
  auto [m, total] = optimal_mapping_for_path(gsig, hsig, p, opts);
  if (total <= 1e-9) {
    ZeroTestResult r;
    r.is_zero = true;
    r.mapping = std::move(m);
    r.path = std::move(p);
    return r;
  }
  return {};
}

double non_consistent_distance(const TemporalGraph& g, const TemporalGraph& h,
                               const DtgwOptions& opts) {
  validated(g, "first");
  validated(h, "second");
  const SignatureMatrix gsig = compute_signatures(g, opts.signature);
  const SignatureMatrix hsig = compute_signatures(h, opts.signature);
  const Matrix grid = layer_distance_matrix(gsig, hsig, opts.metric, opts.deletion);
  return normalize_distance(dtw_optimal_path(grid, opts.band).total, g, h, opts.normalize);
}

double non_temporal_distance(const TemporalGraph& g, const TemporalGraph& h,
                             const DtgwOptions& opts) {
  validated(g, "first");
  validated(h, "second");
  auto flatten = [](const TemporalGraph& x) {
    UnderlyingGraph u = underlying_graph(x);
    TemporalGraph flat;
    flat.vertex_labels = x.vertex_labels;
    flat.layers.push_back(std::move(u.edges));
    return flat;
  };
  const SignatureMatrix gsig = compute_signatures(flatten(g), opts.signature);
  const SignatureMatrix hsig = compute_signatures(flatten(h), opts.signature);
  return normalize_distance(layer_distance(gsig, hsig, 1, 1, opts.metric, opts.deletion), g,
                            h, opts.normalize);
}

double normalize_distance(double raw, const TemporalGraph& g, const TemporalGraph& h,
                          bool enabled) {
  if (!enabled) return raw;
  return raw / std::min(g.vertex_count(), h.vertex_count());
}

bool decide_dtgw(const TemporalGraph& g, const TemporalGraph& h, double c,
                 const DtgwOptions& opts) {
  // the polynomial zero test only answers the unrestricted question
  if (c == 0.0 && g.vertex_count() == h.vertex_count() && opts.band.unconstrained() &&
      !opts.lambda_budget)
    return is_zero_dtgw(g, h, opts).is_zero;
  return exact_dtgw(g, h, opts).distance <= c + 1e-9;
}

}  // namespace dtgw
