#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dtgw/temporal_graph.hpp"

namespace dtgw {

enum class SignatureKind { degree, component_size, betweenness };
enum class MetricKind { l1, l2, linf };

// Cost charged for leaving a vertex unmatched in a layer.
// signature_norm: distance of the vertex signature to the zero vector.
// constant: a fixed nonnegative value.
struct DeletionPolicy {
  enum class Kind { signature_norm, constant };

  Kind kind = Kind::signature_norm;
  double value = 0.0;

  static DeletionPolicy signature_norm() { return DeletionPolicy{}; }
  static DeletionPolicy constant(double c);
};

// Per-layer, per-vertex feature vectors: lifetime x vertex_count x dim,
// stored flat with layers outermost. All built-in kinds have dim == 1.
struct SignatureMatrix {
  int lifetime = 0;
  int vertex_count = 0;
  int dim = 1;
  SignatureKind kind = SignatureKind::degree;
  std::vector<double> values;

  std::span<const double> at(int layer, int vertex) const {
    const std::size_t off =
        (static_cast<std::size_t>(layer) * vertex_count + vertex) * dim;
    return {values.data() + off, static_cast<std::size_t>(dim)};
  }

  double& entry(int layer, int vertex, int c) {
    return values[(static_cast<std::size_t>(layer) * vertex_count + vertex) * dim + c];
  }
};

SignatureMatrix compute_signatures(const TemporalGraph& g, SignatureKind kind);

double metric_eval(MetricKind metric, std::span<const double> a, std::span<const double> b);

double deletion_cost(const DeletionPolicy& policy, MetricKind metric,
                     std::span<const double> sig);

// String forms used by the CLI, manifests and serialization.
SignatureKind signature_kind_from_string(const std::string& s);
MetricKind metric_kind_from_string(const std::string& s);
DeletionPolicy deletion_policy_from_string(const std::string& s);
std::string to_string(SignatureKind k);
std::string to_string(MetricKind k);
std::string to_string(const DeletionPolicy& p);

}  // namespace dtgw
