#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dtgw/alignment.hpp"
#include "dtgw/dtgw.hpp"
#include "dtgw/experiments.hpp"
#include "dtgw/matrix.hpp"
#include "dtgw/temporal_graph.hpp"

namespace dtgw {

// One line of a contact-event file: "timestamp label_a label_b".
struct ContactEvent {
  long long timestamp = 0;
  std::string a;
  std::string b;
};

// Parses contact events; blank lines and lines starting with '#' are
// skipped. Malformed lines (wrong token count, bad or negative timestamp,
// identical endpoints) raise InputError naming the line number.
std::vector<ContactEvent> parse_contact_events(std::istream& in);

// Bins events into layers of bin_width time units, trims empty leading and
// trailing bins, deduplicates edges per layer. Vertices are the labels seen
// in the events, ordered lexicographically. drop_isolated removes vertices
// without any incident edge (a no-op for event-derived graphs, kept for the
// generic entry points).
TemporalGraph ingest(const std::vector<ContactEvent>& events, int bin_width,
                     bool drop_isolated);
TemporalGraph ingest_file(const std::string& path, int bin_width, bool drop_isolated);

// Serializes layer i as events at timestamp i * bin_width. Reading the
// output back with the same bin width reproduces the graph up to label
// order (isolated vertices and empty boundary layers cannot be represented).
void write_contact_events(const TemporalGraph& g, int bin_width, std::ostream& out);

nlohmann::json warping_path_to_json(const WarpingPath& p);
WarpingPath warping_path_from_json(const nlohmann::json& j);

nlohmann::json vertex_mapping_to_json(const VertexMapping& m, const TemporalGraph& g,
                                      const TemporalGraph& h);
VertexMapping vertex_mapping_from_json(const nlohmann::json& j, const TemporalGraph& g,
                                       const TemporalGraph& h);

nlohmann::json result_to_json(const DtgwResult& r, const TemporalGraph& g,
                              const TemporalGraph& h);

nlohmann::json dendrogram_to_json(const Dendrogram& d);
std::string dendrogram_to_newick(const Dendrogram& d);
nlohmann::json partition_to_json(const std::vector<std::vector<int>>& clusters,
                                 const std::vector<std::string>& labels);

void write_distance_matrix_csv(const std::vector<std::string>& names, const Matrix& m,
                               std::ostream& out);
std::pair<std::vector<std::string>, Matrix> read_distance_matrix_csv(std::istream& in);

}  // namespace dtgw
