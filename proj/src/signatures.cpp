#include "dtgw/signatures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "dtgw/errors.hpp"

namespace dtgw {

DeletionPolicy DeletionPolicy::constant(double c) {
  if (!(c >= 0.0)) throw std::invalid_argument("deletion policy: constant must be nonnegative");
  DeletionPolicy p;
  p.kind = Kind::constant;
  p.value = c;
  return p;
}

namespace {

void fill_degrees(const std::vector<Edge>& layer, int n, double* out) {
  std::fill(out, out + n, 0.0);
  for (const Edge& e : layer) {
    out[e.first] += 1.0;
    out[e.second] += 1.0;
  }
}

void fill_component_sizes(const std::vector<Edge>& layer, int n, double* out) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<int> size(n, 1);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : layer) {
    int a = find(e.first), b = find(e.second);
    if (a == b) continue;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
  for (int v = 0; v < n; ++v) out[v] = size[find(v)];
}

// Brandes' accumulation, one BFS per source; undirected, so each unordered
// pair of endpoints is counted once (halved at the end).
void fill_betweenness(const std::vector<Edge>& layer, int n, double* out) {
  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : layer) {
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  std::fill(out, out + n, 0.0);
  std::vector<int> dist(n), queue(n);
  std::vector<double> sigma(n), delta(n);
  std::vector<std::vector<int>> preds(n);
  for (int s = 0; s < n; ++s) {
    if (adj[s].empty()) continue;
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    for (auto& p : preds) p.clear();
    int head = 0, tail = 0;
    dist[s] = 0;
    sigma[s] = 1.0;
    queue[tail++] = s;
    while (head < tail) {
      const int v = queue[head++];
      for (int w : adj[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue[tail++] = w;
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }
    std::fill(delta.begin(), delta.end(), 0.0);
    for (int idx = tail - 1; idx >= 0; --idx) {
      const int w = queue[idx];
      for (int v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) out[w] += delta[w];
    }
  }
  for (int v = 0; v < n; ++v) out[v] *= 0.5;
}

}  // namespace

SignatureMatrix compute_signatures(const TemporalGraph& g, SignatureKind kind) {
  if (auto bad = validate_temporal_graph(g))
    throw InputError("compute_signatures: invalid graph: " + bad->kind + " (" + bad->detail + ")");
  SignatureMatrix s;
  s.lifetime = g.lifetime();
  s.vertex_count = g.vertex_count();
  s.dim = 1;
  s.kind = kind;
  s.values.assign(static_cast<std::size_t>(s.lifetime) * s.vertex_count, 0.0);
  const int n = s.vertex_count;
  for (int i = 0; i < s.lifetime; ++i) {
    double* out = s.values.data() + static_cast<std::size_t>(i) * n;
    switch (kind) {
      case SignatureKind::degree: fill_degrees(g.layers[i], n, out); break;
      case SignatureKind::component_size: fill_component_sizes(g.layers[i], n, out); break;
      case SignatureKind::betweenness: fill_betweenness(g.layers[i], n, out); break;
      default: throw std::invalid_argument("compute_signatures: unknown signature kind");
    }
  }
  return s;
}

double metric_eval(MetricKind metric, std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("metric_eval: dimension mismatch");
  switch (metric) {
    case MetricKind::l1: {
      double s = 0.0;
      for (std::size_t c = 0; c < a.size(); ++c) s += std::abs(a[c] - b[c]);
      return s;
    }
    case MetricKind::l2: {
      double s = 0.0;
      for (std::size_t c = 0; c < a.size(); ++c) s += (a[c] - b[c]) * (a[c] - b[c]);
      return std::sqrt(s);
    }
    case MetricKind::linf: {
      double s = 0.0;
      for (std::size_t c = 0; c < a.size(); ++c) s = std::max(s, std::abs(a[c] - b[c]));
      return s;
    }
  }
  throw std::invalid_argument("metric_eval: unknown metric");
}

double deletion_cost(const DeletionPolicy& policy, MetricKind metric,
                     std::span<const double> sig) {
  if (policy.kind == DeletionPolicy::Kind::constant) return policy.value;
  // distance of the signature to the zero vector
  switch (metric) {
    case MetricKind::l1: {
      double s = 0.0;
      for (double x : sig) s += std::abs(x);
      return s;
    }
    case MetricKind::l2: {
      double s = 0.0;
      for (double x : sig) s += x * x;
      return std::sqrt(s);
    }
    case MetricKind::linf: {
      double s = 0.0;
      for (double x : sig) s = std::max(s, std::abs(x));
      return s;
    }
  }
  throw std::invalid_argument("deletion_cost: unknown metric");
}

SignatureKind signature_kind_from_string(const std::string& s) {
  if (s == "degree") return SignatureKind::degree;
  if (s == "component-size" || s == "component_size") return SignatureKind::component_size;
  if (s == "betweenness") return SignatureKind::betweenness;
  throw std::invalid_argument("unknown signature kind '" + s + "'");
}

MetricKind metric_kind_from_string(const std::string& s) {
  if (s == "l1") return MetricKind::l1;
  if (s == "l2") return MetricKind::l2;
  if (s == "linf") return MetricKind::linf;
  throw std::invalid_argument("unknown metric '" + s + "'");
}

DeletionPolicy deletion_policy_from_string(const std::string& s) {
  if (s == "norm" || s == "signature-norm" || s == "signature_norm")
    return DeletionPolicy::signature_norm();
  const std::string prefix = "constant:";
  if (s.rfind(prefix, 0) == 0) {
    std::size_t used = 0;
    double c = 0.0;
    try {
      c = std::stod(s.substr(prefix.size()), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad deletion policy '" + s + "'");
    }
    if (used != s.size() - prefix.size())
      throw std::invalid_argument("bad deletion policy '" + s + "'");
    return DeletionPolicy::constant(c);
  }
  throw std::invalid_argument("unknown deletion policy '" + s +
                              "' (expected signature-norm or constant:<value>)");
}

std::string to_string(SignatureKind k) {
  switch (k) {
    case SignatureKind::degree: return "degree";
    case SignatureKind::component_size: return "component-size";
    case SignatureKind::betweenness: return "betweenness";
  }
  return "?";
}

std::string to_string(MetricKind k) {
  switch (k) {
    case MetricKind::l1: return "l1";
    case MetricKind::l2: return "l2";
    case MetricKind::linf: return "linf";
  }
  return "?";
}

std::string to_string(const DeletionPolicy& p) {
  if (p.kind == DeletionPolicy::Kind::signature_norm) return "norm";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "constant:%g", p.value);
  return buf;
}

}  // namespace dtgw
