#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dtgw/alignment.hpp"
#include "dtgw/matrix.hpp"
#include "dtgw/signatures.hpp"
#include "dtgw/temporal_graph.hpp"
#include "dtgw/warp.hpp"

namespace dtgw {

enum class InitKind { sigma_star, sigma_opt, swp, owp, fixed_path, fixed_mapping };

InitKind init_kind_from_string(const std::string& s);
std::string to_string(InitKind k);

struct DtgwOptions {
  SignatureKind signature = SignatureKind::degree;
  MetricKind metric = MetricKind::l1;
  DeletionPolicy deletion = DeletionPolicy::signature_norm();
  BandConstraint band;                   // unconstrained by default
  bool normalize = false;                // divide totals by min(|V|, |W|)
  std::optional<int> lambda_budget;      // warping paths no longer than max(T,U)+lambda
  int max_iterations = 100;              // alternation rounds for the heuristic
  InitKind init = InitKind::swp;
  std::optional<WarpingPath> fixed_path;       // required for init == fixed_path
  std::optional<VertexMapping> fixed_mapping;  // required for init == fixed_mapping
  bool pin_path = false;                 // fixed-warping mode: keep the fixed path,
                                         // perform a single mapping solve
  std::uint64_t path_budget = 1000000;   // exact solver enumeration cap
};

struct DtgwResult {
  double distance = 0.0;       // objective of (mapping, path), normalized if requested
  VertexMapping mapping;
  WarpingPath path;
  int iterations = 0;
  std::vector<double> trace;   // unnormalized objective after each alternation round
  bool exact = false;
  bool normalized = false;
};

// Cost of aligning layer i of G with layer j of H under mapping m:
// matched pairs pay the signature distance, unmatched vertices on either
// side pay their deletion cost. Layer indices are 1-based.
double mapping_cost(const SignatureMatrix& gsig, const SignatureMatrix& hsig, int i, int j,
                    const VertexMapping& m, MetricKind metric, const DeletionPolicy& del);

// Cheapest mapping cost for the single layer pair (i, j): assignment over
// the signature-distance matrix padded with deletion costs.
double layer_distance(const SignatureMatrix& gsig, const SignatureMatrix& hsig, int i,
                      int j, MetricKind metric, const DeletionPolicy& del);

// T x U grid of layer_distance values (the baseline / owp cost grid).
Matrix layer_distance_matrix(const SignatureMatrix& gsig, const SignatureMatrix& hsig,
                             MetricKind metric, const DeletionPolicy& del);

// One half of the alternation: best path for a fixed mapping (DTW over the
// mapping-cost grid, honoring opts.band) ...
std::pair<WarpingPath, double> optimal_path_for_mapping(const SignatureMatrix& gsig,
                                                        const SignatureMatrix& hsig,
                                                        const VertexMapping& m,
                                                        const DtgwOptions& opts);

// ... and best mapping for a fixed path (assignment over path-aggregated
// signature distances, deletion costs aggregated the same way).
std::pair<VertexMapping, double> optimal_mapping_for_path(const SignatureMatrix& gsig,
                                                          const SignatureMatrix& hsig,
                                                          const WarpingPath& p,
                                                          const DtgwOptions& opts);

// Heuristic seed matrices: sigma_star aggregates signature distances over all
// layer pairs, sigma_opt takes the per-layer best alignment partner.
Matrix sigma_star_costs(const SignatureMatrix& gsig, const SignatureMatrix& hsig,
                        MetricKind metric);
Matrix sigma_opt_costs(const SignatureMatrix& gsig, const SignatureMatrix& hsig,
                       MetricKind metric);

VertexMapping init_sigma_star(const SignatureMatrix& gsig, const SignatureMatrix& hsig,
                              MetricKind metric, const DeletionPolicy& del);
VertexMapping init_sigma_opt(const SignatureMatrix& gsig, const SignatureMatrix& hsig,
                             MetricKind metric, const DeletionPolicy& del);
WarpingPath init_owp(const SignatureMatrix& gsig, const SignatureMatrix& hsig,
                     const DtgwOptions& opts);

// Alternating minimization: seed per opts.init, then alternate the two
// half-steps until the objective stops strictly decreasing or
// opts.max_iterations rounds have run.
DtgwResult am_heuristic(const TemporalGraph& g, const TemporalGraph& h,
                        const DtgwOptions& opts);

// Exact distance by enumerating warping paths (within opts.lambda_budget and
// opts.band) and solving the assignment per path. Throws BudgetError when
// count_warping_paths exceeds opts.path_budget.
DtgwResult exact_dtgw(const TemporalGraph& g, const TemporalGraph& h,
                      const DtgwOptions& opts);

struct ZeroTestResult {
  bool is_zero = false;
  std::optional<VertexMapping> mapping;  // witnesses, present when is_zero
  std::optional<WarpingPath> path;
};

// Polynomial zero test for |V| == |W|: layers are summarized by their
// signature tuples; the block structure of consecutive distinct tuples
// either rules zero out immediately or yields one canonical staircase path
// whose optimal mapping decides the question.
ZeroTestResult is_zero_dtgw(const TemporalGraph& g, const TemporalGraph& h,
                            const DtgwOptions& opts);

// Baselines: DTW over per-layer assignment distances (time-consistency of
// the mapping dropped), and the distance of the underlying static graphs.
double non_consistent_distance(const TemporalGraph& g, const TemporalGraph& h,
                               const DtgwOptions& opts);
double non_temporal_distance(const TemporalGraph& g, const TemporalGraph& h,
                             const DtgwOptions& opts);

double normalize_distance(double raw, const TemporalGraph& g, const TemporalGraph& h,
                          bool enabled = true);

// True iff the exact distance is <= c (1e-9 slack). c == 0 with equal vertex
// counts and no band/length restriction routes through is_zero_dtgw.
bool decide_dtgw(const TemporalGraph& g, const TemporalGraph& h, double c,
                 const DtgwOptions& opts);

}  // namespace dtgw
