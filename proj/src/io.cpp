#include "dtgw/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "dtgw/errors.hpp"

namespace dtgw {

namespace {

bool parse_ll(const std::string& tok, long long& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::map<std::string, int> label_index(const TemporalGraph& g) {
  std::map<std::string, int> idx;
  for (int i = 0; i < g.vertex_count(); ++i) idx[g.vertex_labels[i]] = i;
  return idx;
}

}  // namespace

std::vector<ContactEvent> parse_contact_events(std::istream& in) {
  std::vector<ContactEvent> events;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream ls(line);
    std::string ts_tok, a, b, extra;
    if (!(ls >> ts_tok >> a >> b) || (ls >> extra))
      throw InputError("line " + std::to_string(lineno) +
                       ": expected 'timestamp label_a label_b'");
    long long ts = 0;
    if (!parse_ll(ts_tok, ts) || ts < 0)
      throw InputError("line " + std::to_string(lineno) + ": bad timestamp '" + ts_tok + "'");
    if (a == b)
      throw InputError("line " + std::to_string(lineno) + ": self-contact '" + a + "'");
    events.push_back({ts, std::move(a), std::move(b)});
  }
  return events;
}

TemporalGraph ingest(const std::vector<ContactEvent>& events, int bin_width,
                     bool drop_isolated) {
  if (bin_width < 1) throw InputError("ingest: bin width must be positive");
  if (events.empty()) throw InputError("ingest: no events");

  std::set<std::string> label_set;
  long long lo = events.front().timestamp / bin_width;
  long long hi = lo;
  for (const auto& ev : events) {
    label_set.insert(ev.a);
    label_set.insert(ev.b);
    const long long bin = ev.timestamp / bin_width;
    lo = std::min(lo, bin);
    hi = std::max(hi, bin);
  }

  TemporalGraph g;
  g.vertex_labels.assign(label_set.begin(), label_set.end());
  std::map<std::string, int> idx;
  for (int i = 0; i < g.vertex_count(); ++i) idx[g.vertex_labels[i]] = i;

  std::vector<std::set<Edge>> bins(static_cast<std::size_t>(hi - lo + 1));
  for (const auto& ev : events)
    bins[static_cast<std::size_t>(ev.timestamp / bin_width - lo)].insert(
        make_edge(idx.at(ev.a), idx.at(ev.b)));

  g.layers.reserve(bins.size());
  for (const auto& bin : bins) g.layers.emplace_back(bin.begin(), bin.end());

  if (drop_isolated) {
    std::vector<char> incident(static_cast<std::size_t>(g.vertex_count()), 0);
    for (const auto& layer : g.layers)
      for (const auto& [u, v] : layer) incident[u] = incident[v] = 1;
    std::vector<int> remap(incident.size(), -1);
    TemporalGraph pruned;
    for (std::size_t i = 0; i < incident.size(); ++i)
      if (incident[i]) {
        remap[i] = pruned.vertex_count();
        pruned.vertex_labels.push_back(g.vertex_labels[i]);
      }
    if (pruned.vertex_labels.empty()) throw InputError("ingest: all vertices isolated");
    pruned.layers.reserve(g.layers.size());
    for (const auto& layer : g.layers) {
      std::vector<Edge> mapped;
      mapped.reserve(layer.size());
      for (const auto& [u, v] : layer) mapped.push_back(make_edge(remap[u], remap[v]));
      std::sort(mapped.begin(), mapped.end());
      pruned.layers.push_back(std::move(mapped));
    }
    g = std::move(pruned);
  }
  return g;
}

TemporalGraph ingest_file(const std::string& path, int bin_width, bool drop_isolated) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return ingest(parse_contact_events(in), bin_width, drop_isolated);
}

void write_contact_events(const TemporalGraph& g, int bin_width, std::ostream& out) {
  if (bin_width < 1) throw InputError("write: bin width must be positive");
  if (auto bad = validate_temporal_graph(g))
    throw InputError("write: invalid graph: " + bad->kind + " (" + bad->detail + ")");
  for (int i = 0; i < g.lifetime(); ++i)
    for (const auto& [u, v] : g.layers[i])
      out << static_cast<long long>(i) * bin_width << ' ' << g.vertex_labels[u] << ' '
          << g.vertex_labels[v] << '\n';
}

nlohmann::json warping_path_to_json(const WarpingPath& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [s, t] : p.pairs) arr.push_back({s, t});
  return arr;
}

WarpingPath warping_path_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InputError("warping path: expected an array of [s, t] pairs");
  WarpingPath p;
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
        !item[1].is_number_integer())
      throw InputError("warping path: expected an array of [s, t] pairs");
    p.pairs.push_back({item[0].get<int>(), item[1].get<int>()});
  }
  return p;
}

nlohmann::json vertex_mapping_to_json(const VertexMapping& m, const TemporalGraph& g,
                                      const TemporalGraph& h) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [u, v] : m.pairs) {
    if (u < 0 || u >= g.vertex_count() || v < 0 || v >= h.vertex_count())
      throw InputError("mapping: vertex index out of range");
    arr.push_back({g.vertex_labels[u], h.vertex_labels[v]});
  }
  return arr;
}

VertexMapping vertex_mapping_from_json(const nlohmann::json& j, const TemporalGraph& g,
                                       const TemporalGraph& h) {
  if (!j.is_array()) throw InputError("mapping: expected an array of [label_g, label_h] pairs");
  const auto gi = label_index(g);
  const auto hi = label_index(h);
  VertexMapping m;
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_string() || !item[1].is_string())
      throw InputError("mapping: expected an array of [label_g, label_h] pairs");
    const auto u = gi.find(item[0].get<std::string>());
    const auto v = hi.find(item[1].get<std::string>());
    if (u == gi.end()) throw InputError("mapping: unknown vertex '" + item[0].get<std::string>() + "'");
    if (v == hi.end()) throw InputError("mapping: unknown vertex '" + item[1].get<std::string>() + "'");
    m.pairs.push_back({u->second, v->second});
  }
  std::sort(m.pairs.begin(), m.pairs.end());
  if (auto bad = validate_vertex_mapping(m, g.vertex_count(), h.vertex_count()))
    throw InputError("mapping: " + bad->kind + " (" + bad->detail + ")");
  return m;
}

nlohmann::json result_to_json(const DtgwResult& r, const TemporalGraph& g,
                              const TemporalGraph& h) {
  return {
      {"distance", r.distance},
      {"normalized", r.normalized},
      {"exact", r.exact},
      {"iterations", r.iterations},
      {"trace", r.trace},
      {"mapping", vertex_mapping_to_json(r.mapping, g, h)},
      {"path", warping_path_to_json(r.path)},
  };
}

nlohmann::json dendrogram_to_json(const Dendrogram& d) {
  nlohmann::json merges = nlohmann::json::array();
  for (const auto& m : d.merges)
    merges.push_back({{"a", m.a}, {"b", m.b}, {"height", m.height}});
  return {{"leaves", d.leaf_labels}, {"merges", merges}};
}

namespace {

// branch length of a node = its parent's merge height minus its own height
// (leaves sit at height zero)
void newick_node(const Dendrogram& d, int id, double parent_height, std::string& out) {
  const int n = static_cast<int>(d.leaf_labels.size());
  if (id < n) {
    out += d.leaf_labels[id];
    out += ':';
    out += std::to_string(parent_height);
    return;
  }
  const auto& m = d.merges[static_cast<std::size_t>(id - n)];
  out += '(';
  newick_node(d, m.a, m.height, out);
  out += ',';
  newick_node(d, m.b, m.height, out);
  out += "):";
  out += std::to_string(parent_height - m.height);
}

}  // namespace

std::string dendrogram_to_newick(const Dendrogram& d) {
  const int n = static_cast<int>(d.leaf_labels.size());
  if (n == 1) return d.leaf_labels[0] + ";";
  const auto& root = d.merges.back();
  std::string out = "(";
  newick_node(d, root.a, root.height, out);
  out += ',';
  newick_node(d, root.b, root.height, out);
  out += ");";
  return out;
}

nlohmann::json partition_to_json(const std::vector<std::vector<int>>& clusters,
                                 const std::vector<std::string>& labels) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& cluster : clusters) {
    nlohmann::json names = nlohmann::json::array();
    for (int leaf : cluster) {
      if (leaf < 0 || leaf >= static_cast<int>(labels.size()))
        throw InputError("partition: leaf index out of range");
      names.push_back(labels[static_cast<std::size_t>(leaf)]);
    }
    arr.push_back(std::move(names));
  }
  return arr;
}

void write_distance_matrix_csv(const std::vector<std::string>& names, const Matrix& m,
                               std::ostream& out) {
  if (m.rows != m.cols || static_cast<int>(names.size()) != m.rows)
    throw InputError("csv: need a square matrix and one name per row");
  out << "name";
  for (const auto& n : names) out << ',' << n;
  out << '\n';
  out.precision(17);
  for (int i = 0; i < m.rows; ++i) {
    out << names[static_cast<std::size_t>(i)];
    for (int j = 0; j < m.cols; ++j) out << ',' << m.at(i, j);
    out << '\n';
  }
}

std::pair<std::vector<std::string>, Matrix> read_distance_matrix_csv(std::istream& in) {
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
  };
  std::string line;
  if (!std::getline(in, line)) throw InputError("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split(line);
  if (header.size() < 2) throw InputError("csv: header must list at least one name");
  std::vector<std::string> names(header.begin() + 1, header.end());
  const int n = static_cast<int>(names.size());
  Matrix m;
  m.rows = m.cols = n;
  m.data.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw InputError("csv: expected " + std::to_string(n) + " rows");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto cells = split(line);
    if (static_cast<int>(cells.size()) != n + 1)
      throw InputError("csv: row " + std::to_string(i + 1) + " has wrong cell count");
    if (cells[0] != names[static_cast<std::size_t>(i)])
      throw InputError("csv: row name '" + cells[0] + "' does not match header");
    for (int j = 0; j < n; ++j) {
      try {
        m.at(i, j) = std::stod(cells[static_cast<std::size_t>(j) + 1]);
      } catch (const std::exception&) {
        throw InputError("csv: bad number in row " + std::to_string(i + 1));
      }
    }
  }
  return {std::move(names), std::move(m)};
}

}  // namespace dtgw
