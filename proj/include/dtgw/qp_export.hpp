#pragma once

#include <iosfwd>

#include "dtgw/dtgw.hpp"
#include "dtgw/temporal_graph.hpp"

namespace dtgw {

// Writes the binary quadratic program whose optimum equals the dtgw
// distance: mapping variables m<i>_<j> over ([|V|]+dummy) x ([|W|]+dummy),
// warping variables w<s>_<t> over [T] x [U], a bilinear objective and the
// six linear constraint families. Plain-text, line oriented; see
// docs/qp-model-format.md.
void export_qp(const TemporalGraph& g, const TemporalGraph& h, const DtgwOptions& opts,
               std::ostream& out);

}  // namespace dtgw
