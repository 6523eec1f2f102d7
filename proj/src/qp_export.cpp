#include "dtgw/qp_export.hpp"

#include <cstdio>
#include <ostream>
#include <string>

#include "dtgw/errors.hpp"

namespace dtgw {

namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

// Binary quadratic model of the distance: pick a warping-path cell set and a
// vertex mapping (with one dummy row/column absorbing deletions) minimizing
// the summed alignment costs. One self-describing directive per line.
void export_qp(const TemporalGraph& g, const TemporalGraph& h, const DtgwOptions& opts,
               std::ostream& out) {
  if (auto bad = validate_temporal_graph(g))
    throw InputError("first graph invalid: " + bad->kind + " (" + bad->detail + ")");
  if (auto bad = validate_temporal_graph(h))
    throw InputError("second graph invalid: " + bad->kind + " (" + bad->detail + ")");
  const SignatureMatrix gsig = compute_signatures(g, opts.signature);
  const SignatureMatrix hsig = compute_signatures(h, opts.signature);
  const int nv = g.vertex_count(), nw = h.vertex_count();
  const int t = g.lifetime(), u = h.lifetime();

  auto mvar = [](int i, int j) { return "m" + std::to_string(i) + "_" + std::to_string(j); };
  auto wvar = [](int s, int tt) { return "w" + std::to_string(s) + "_" + std::to_string(tt); };

  // alignment cost of (u_i, v_j) at layer pair (s, t); index nv+1 / nw+1 is
  // the dummy vertex
  auto dcost = [&](int s, int tt, int i, int j) -> double {
    const bool gi_real = i <= nv, hj_real = j <= nw;
    if (gi_real && hj_real)
      return metric_eval(opts.metric, gsig.at(s - 1, i - 1), hsig.at(tt - 1, j - 1));
    if (gi_real) return deletion_cost(opts.deletion, opts.metric, gsig.at(s - 1, i - 1));
    if (hj_real) return deletion_cost(opts.deletion, opts.metric, hsig.at(tt - 1, j - 1));
    return 0.0;
  };

  out << "# dtgw binary quadratic model\n";
  out << "# minimize sum of `term c w m` products over binary variables\n";
  out << "dims " << nv << ' ' << nw << ' ' << t << ' ' << u << "\n";
  for (int i = 1; i <= nv + 1; ++i)
    for (int j = 1; j <= nw + 1; ++j) out << "binary " << mvar(i, j) << "\n";
  for (int s = 1; s <= t; ++s)
    for (int tt = 1; tt <= u; ++tt) out << "binary " << wvar(s, tt) << "\n";

  for (int s = 1; s <= t; ++s)
    for (int tt = 1; tt <= u; ++tt)
      for (int i = 1; i <= nv + 1; ++i)
        for (int j = 1; j <= nw + 1; ++j) {
          const double c = dcost(s, tt, i, j);
          if (c == 0.0) continue;
          out << "term " << num(c) << ' ' << wvar(s, tt) << ' ' << mvar(i, j) << "\n";
        }

  // every real vertex of G maps to exactly one partner (possibly the dummy)
  for (int i = 1; i <= nv; ++i) {
    out << "constraint a" << i << ' ' << mvar(i, 1);
    for (int j = 2; j <= nw + 1; ++j) out << " + " << mvar(i, j);
    out << " = 1\n";
  }
  // every real vertex of H receives exactly one partner
  for (int j = 1; j <= nw; ++j) {
    out << "constraint b" << j << ' ' << mvar(1, j);
    for (int i = 2; i <= nv + 1; ++i) out << " + " << mvar(i, j);
    out << " = 1\n";
  }
  // warping cells: start fixed, every selected cell continues to a successor
  out << "constraint c " << wvar(1, 1) << " = 1\n";
  for (int s = 1; s <= t - 1; ++s)
    for (int tt = 1; tt <= u - 1; ++tt)
      out << "constraint d" << s << '_' << tt << ' ' << wvar(s, tt) << " - "
          << wvar(s + 1, tt + 1) << " - " << wvar(s, tt + 1) << " - " << wvar(s + 1, tt)
          << " <= 0\n";
  for (int tt = 1; tt <= u - 1; ++tt)
    out << "constraint e" << tt << ' ' << wvar(t, tt) << " - " << wvar(t, tt + 1) << " <= 0\n";
  for (int s = 1; s <= t - 1; ++s)
    out << "constraint f" << s << ' ' << wvar(s, u) << " - " << wvar(s + 1, u) << " <= 0\n";
  out << "end\n";
}

}  // namespace dtgw
