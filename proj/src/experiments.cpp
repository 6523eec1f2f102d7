#include "dtgw/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "dtgw/errors.hpp"
#include "dtgw/random.hpp"

namespace dtgw {

NoiseModel noise_model_from_string(const std::string& s) {
  if (s == "deletion") return NoiseModel::deletion;
  if (s == "temporal-rewire" || s == "temporal_rewire") return NoiseModel::temporal_rewire;
  if (s == "underlying-rewire" || s == "underlying_rewire")
    return NoiseModel::underlying_rewire;
  if (s == "layer-stretch" || s == "layer_stretch") return NoiseModel::layer_stretch;
  throw std::invalid_argument("unknown noise model '" + s + "'");
}

std::string to_string(NoiseModel m) {
  switch (m) {
    case NoiseModel::deletion: return "deletion";
    case NoiseModel::temporal_rewire: return "temporal-rewire";
    case NoiseModel::underlying_rewire: return "underlying-rewire";
    case NoiseModel::layer_stretch: return "layer-stretch";
  }
  return "?";
}

namespace {

constexpr int kRewireRetries = 25;

TemporalGraph perturb_deletion(const TemporalGraph& g, double p, SplitMix64& rng) {
  TemporalGraph out = g;
  for (auto& layer : out.layers) {
    if (rng.next_double() < p) {
      layer.clear();
      continue;
    }
    std::vector<Edge> kept;
    kept.reserve(layer.size());
    for (const Edge& e : layer)
      if (!(rng.next_double() < p)) kept.push_back(e);
    layer = std::move(kept);
  }
  return out;
}

// Occurrence pool with O(1) uniform draws and O(log) membership updates.
struct OccurrencePool {
  std::vector<std::pair<int, Edge>> items;
  std::map<std::pair<int, Edge>, std::size_t> index;

  bool contains(int layer, const Edge& e) const { return index.count({layer, e}) != 0; }

  void insert(int layer, const Edge& e) {
    index[{layer, e}] = items.size();
    items.push_back({layer, e});
  }

  void erase(int layer, const Edge& e) {
    const auto it = index.find({layer, e});
    const std::size_t pos = it->second;
    index.erase(it);
    if (pos + 1 != items.size()) {
      items[pos] = items.back();
      index[items[pos]] = pos;
    }
    items.pop_back();
  }
};

TemporalGraph perturb_temporal_rewire(const TemporalGraph& g, double p, SplitMix64& rng) {
  OccurrencePool pool;
  for (int i = 0; i < g.lifetime(); ++i)
    for (const Edge& e : g.layers[i]) pool.insert(i, e);

  for (int i = 0; i < g.lifetime(); ++i) {
    for (const Edge& e : g.layers[i]) {
      if (!pool.contains(i, e)) continue;  // already rewired away
      if (!(rng.next_double() < p)) continue;
      for (int attempt = 0; attempt < kRewireRetries; ++attempt) {
        const auto [t, other] = pool.items[rng.next_below(pool.items.size())];
        const auto [a, b] = rng.next_bool() ? Edge{e.second, e.first} : e;
        const auto [a2, b2] = rng.next_bool() ? Edge{other.second, other.first} : other;
        const Edge ne = make_edge(a, b2), no = make_edge(a2, b);
        if (a == b2 || a2 == b) continue;                       // self-loop
        if (ne == no && i == t) continue;                       // would collapse to one edge
        const bool self_pick = (t == i && other == e);
        if (self_pick) continue;  // all outcomes collide or are no-ops
        auto occupied = [&](int layer, const Edge& cand) {
          if (!pool.contains(layer, cand)) return false;
          if (layer == i && cand == e) return false;   // being removed
          if (layer == t && cand == other) return false;
          return true;
        };
        if (occupied(i, ne) || occupied(t, no)) continue;  // duplicate edge
        pool.erase(i, e);
        pool.erase(t, other);
        pool.insert(i, ne);
        pool.insert(t, no);
        break;
      }
    }
  }

  TemporalGraph out;
  out.vertex_labels = g.vertex_labels;
  out.layers.assign(g.layers.size(), {});
  for (const auto& [layer, e] : pool.items) out.layers[layer].push_back(e);
  for (auto& layer : out.layers) std::sort(layer.begin(), layer.end());
  return out;
}

TemporalGraph perturb_underlying_rewire(const TemporalGraph& g, double p, SplitMix64& rng) {
  // evolving underlying edge set; each edge carries its layer occurrences
  std::map<Edge, std::vector<int>> occurrences;
  for (int i = 0; i < g.lifetime(); ++i)
    for (const Edge& e : g.layers[i]) occurrences[e].push_back(i);
  std::vector<Edge> edges;
  std::map<Edge, std::size_t> index;
  for (const auto& [e, _] : occurrences) {
    index[e] = edges.size();
    edges.push_back(e);
  }
  auto erase_edge = [&](const Edge& e) {
    const std::size_t pos = index.at(e);
    index.erase(e);
    if (pos + 1 != edges.size()) {
      edges[pos] = edges.back();
      index[edges[pos]] = pos;
    }
    edges.pop_back();
  };
  auto insert_edge = [&](const Edge& e) {
    index[e] = edges.size();
    edges.push_back(e);
  };

  const std::vector<Edge> original = [&] {
    std::vector<Edge> v;
    v.reserve(occurrences.size());
    for (const auto& [e, _] : occurrences) v.push_back(e);
    return v;
  }();

  for (const Edge& e : original) {
    if (!index.count(e)) continue;  // replaced by an earlier rewire
    if (!(rng.next_double() < p)) continue;
    for (int attempt = 0; attempt < kRewireRetries; ++attempt) {
      const Edge other = edges[rng.next_below(edges.size())];
      if (other == e) continue;  // self pick never yields a legal swap
      const auto [a, b] = rng.next_bool() ? Edge{e.second, e.first} : e;
      const auto [a2, b2] = rng.next_bool() ? Edge{other.second, other.first} : other;
      const Edge ne = make_edge(a, b2), no = make_edge(a2, b);
      if (a == b2 || a2 == b) continue;  // self-loop
      if (ne == no) continue;            // both replacements equal
      auto occupied = [&](const Edge& cand) {
        return index.count(cand) && cand != e && cand != other;
      };
      if (occupied(ne) || occupied(no)) continue;  // duplicate edge
      auto occ_e = std::move(occurrences.at(e));
      auto occ_o = std::move(occurrences.at(other));
      occurrences.erase(e);
      occurrences.erase(other);
      erase_edge(e);
      erase_edge(other);
      occurrences[ne] = std::move(occ_e);
      occurrences[no] = std::move(occ_o);
      insert_edge(ne);
      insert_edge(no);
      break;
    }
  }

  TemporalGraph out;
  out.vertex_labels = g.vertex_labels;
  out.layers.assign(g.layers.size(), {});
  for (const auto& [e, layers] : occurrences)
    for (int i : layers) out.layers[i].push_back(e);
  for (auto& layer : out.layers) std::sort(layer.begin(), layer.end());
  return out;
}

TemporalGraph perturb_layer_stretch(const TemporalGraph& g, SplitMix64& rng) {
  TemporalGraph out;
  out.vertex_labels = g.vertex_labels;
  for (const auto& layer : g.layers) {
    // X with P(X >= x) = x^-3 via inverse transform on (0, 1]
    const double u = rng.next_open_double();
    const long long x = std::max<long long>(1, static_cast<long long>(std::floor(std::pow(u, -1.0 / 3.0))));
    for (long long k = 0; k < x; ++k) out.layers.push_back(layer);
  }
  return out;
}

}  // namespace

TemporalGraph perturb(const TemporalGraph& g, const NoiseSpec& spec) {
  if (auto bad = validate_temporal_graph(g))
    throw InputError("perturb: invalid graph: " + bad->kind + " (" + bad->detail + ")");
  if (!(spec.p >= 0.0 && spec.p <= 1.0))
    throw std::invalid_argument("perturb: probability must lie in [0, 1]");
  SplitMix64 rng(spec.seed);
  switch (spec.model) {
    case NoiseModel::deletion: return perturb_deletion(g, spec.p, rng);
    case NoiseModel::temporal_rewire: return perturb_temporal_rewire(g, spec.p, rng);
    case NoiseModel::underlying_rewire: return perturb_underlying_rewire(g, spec.p, rng);
    case NoiseModel::layer_stretch: return perturb_layer_stretch(g, rng);
  }
  throw std::invalid_argument("perturb: unknown noise model");
}

Dendrogram complete_linkage_cluster(const Matrix& distances,
                                    std::vector<std::string> leaf_labels) {
  const int n = distances.rows;
  if (n < 1 || distances.cols != n)
    throw std::invalid_argument("clustering: distance matrix must be square and nonempty");
  for (int i = 0; i < n; ++i) {
    if (distances.at(i, i) != 0.0)
      throw std::invalid_argument("clustering: diagonal must be zero");
    for (int j = 0; j < n; ++j) {
      const double d = distances.at(i, j);
      if (!std::isfinite(d) || d < 0.0)
        throw std::invalid_argument("clustering: entries must be finite and nonnegative");
      if (std::abs(d - distances.at(j, i)) > 1e-9)
        throw std::invalid_argument("clustering: matrix must be symmetric");
    }
  }
  if (leaf_labels.empty()) {
    leaf_labels.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) leaf_labels.push_back(std::to_string(i));
  }
  if (static_cast<int>(leaf_labels.size()) != n)
    throw std::invalid_argument("clustering: one label per leaf required");

  Dendrogram out;
  out.leaf_labels = std::move(leaf_labels);

  std::vector<int> ids(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ids[i] = i;
  // working copy indexed by position in `ids`
  std::vector<std::vector<double>> d(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d[i][j] = distances.at(i, j);

  for (int merge = 0; merge < n - 1; ++merge) {
    const int active = static_cast<int>(ids.size());
    int best_a = 0, best_b = 1;
    double best = std::numeric_limits<double>::infinity();
    auto id_key = [&](int a, int b) {
      return std::pair<int, int>(std::min(ids[a], ids[b]), std::max(ids[a], ids[b]));
    };
    for (int a = 0; a < active; ++a)
      for (int b = a + 1; b < active; ++b)
        if (d[a][b] < best ||
            (d[a][b] == best && id_key(a, b) < id_key(best_a, best_b))) {
          best = d[a][b];
          best_a = a;
          best_b = b;
        }
    const auto [lo, hi] = id_key(best_a, best_b);
    out.merges.push_back({lo, hi, best});
    // complete linkage: distance to the union is the max of the parts
    std::vector<double> merged(static_cast<std::size_t>(active), 0.0);
    for (int c = 0; c < active; ++c) merged[c] = std::max(d[best_a][c], d[best_b][c]);
    // drop best_b first (it is the larger position), then rewrite best_a
    for (int c = 0; c < active; ++c) {
      d[best_a][c] = merged[c];
      d[c][best_a] = merged[c];
    }
    d[best_a][best_a] = 0.0;
    d.erase(d.begin() + best_b);
    for (auto& row : d) row.erase(row.begin() + best_b);
    ids[best_a] = n + merge;
    ids.erase(ids.begin() + best_b);
  }
  return out;
}

std::vector<std::vector<int>> cut_dendrogram(const Dendrogram& d, int k) {
  const int n = static_cast<int>(d.leaf_labels.size());
  if (k < 1 || k > n) throw std::invalid_argument("cut: k must lie in [1, number of leaves]");
  std::vector<std::vector<int>> members(static_cast<std::size_t>(n) + d.merges.size());
  std::vector<char> alive(members.size(), 0);
  for (int i = 0; i < n; ++i) {
    members[i] = {i};
    alive[i] = 1;
  }
  const int applied = n - k;
  for (int t = 0; t < applied; ++t) {
    const auto& mg = d.merges[t];
    auto& into = members[n + t];
    into = std::move(members[mg.a]);
    into.insert(into.end(), members[mg.b].begin(), members[mg.b].end());
    members[mg.b].clear();
    alive[mg.a] = 0;
    alive[mg.b] = 0;
    alive[n + t] = 1;
  }
  std::vector<std::vector<int>> clusters;
  for (std::size_t id = 0; id < members.size(); ++id) {
    if (!alive[id]) continue;
    auto cluster = members[id];
    std::sort(cluster.begin(), cluster.end());
    clusters.push_back(std::move(cluster));
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return clusters;
}

ErrorStats error_stats(std::span<const std::pair<double, double>> heuristic_exact_pairs) {
  if (heuristic_exact_pairs.empty())
    throw std::invalid_argument("error_stats: at least one pair required");
  std::vector<double> eps;
  eps.reserve(heuristic_exact_pairs.size());
  for (const auto& [heur, exact] : heuristic_exact_pairs) {
    if (exact < 0.0) throw std::invalid_argument("error_stats: negative exact distance");
    if (exact == 0.0) {
      if (heur != 0.0)
        throw std::invalid_argument(
            "error_stats: relative error undefined (exact 0, heuristic > 0)");
      eps.push_back(0.0);
    } else {
      eps.push_back(100.0 * (heur - exact) / exact);
    }
  }
  ErrorStats s;
  double sum = 0.0, sumsq = 0.0;
  int zeros = 0;
  s.max = -std::numeric_limits<double>::infinity();
  for (double e : eps) {
    sum += e;
    sumsq += e * e;
    if (std::abs(e) <= 1e-12) ++zeros;
    s.max = std::max(s.max, e);
  }
  const double count = static_cast<double>(eps.size());
  s.avg = sum / count;
  s.std_dev = std::sqrt(std::max(0.0, sumsq / count - (sum / count) * (sum / count)));
  s.p0 = zeros / count;
  return s;
}

double deanonymization_accuracy(const VertexMapping& m,
                                const std::unordered_map<int, int>& truth) {
  if (m.pairs.empty())
    throw std::invalid_argument("deanonymization_accuracy: empty mapping");
  int hits = 0;
  for (const auto& [u, v] : m.pairs) {
    const auto it = truth.find(u);
    if (it == truth.end())
      throw std::invalid_argument("deanonymization_accuracy: truth undefined for mapped vertex " +
                                  std::to_string(u));
    if (it->second == v) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(m.size());
}

}  // namespace dtgw
