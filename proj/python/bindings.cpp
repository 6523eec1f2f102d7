#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "dtgw/dtgw.hpp"
#include "dtgw/errors.hpp"
#include "dtgw/experiments.hpp"
#include "dtgw/io.hpp"
#include "dtgw/qp_export.hpp"
#include "dtgw/warp.hpp"

namespace py = pybind11;
using namespace dtgw;

namespace {

DtgwOptions resolve(const std::optional<DtgwOptions>& opts) {
  return opts ? *opts : DtgwOptions{};
}

py::dict result_dict(const DtgwResult& r) {
  py::dict d;
  d["distance"] = r.distance;
  d["mapping"] = r.mapping.pairs;
  d["path"] = r.path.pairs;
  d["iterations"] = r.iterations;
  d["trace"] = r.trace;
  d["exact"] = r.exact;
  d["normalized"] = r.normalized;
  return d;
}

Matrix to_matrix(const std::vector<std::vector<double>>& rows) {
  Matrix m;
  m.rows = static_cast<int>(rows.size());
  m.cols = m.rows == 0 ? 0 : static_cast<int>(rows.front().size());
  m.data.reserve(static_cast<std::size_t>(m.rows) * m.cols);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != m.cols)
      throw std::invalid_argument("matrix rows must have equal length");
    m.data.insert(m.data.end(), row.begin(), row.end());
  }
  return m;
}

}  // namespace

PYBIND11_MODULE(_dtgw, m) {
  m.doc() = "dynamic temporal graph warping";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);

  py::class_<TemporalGraph>(m, "TemporalGraph")
      .def(py::init<>())
      .def(py::init([](std::vector<std::string> labels,
                       std::vector<std::vector<Edge>> layers) {
             TemporalGraph g;
             g.vertex_labels = std::move(labels);
             g.layers = std::move(layers);
             return g;
           }),
           py::arg("vertex_labels"), py::arg("layers"))
      .def_readwrite("vertex_labels", &TemporalGraph::vertex_labels)
      .def_readwrite("layers", &TemporalGraph::layers)
      .def("lifetime", &TemporalGraph::lifetime)
      .def("vertex_count", &TemporalGraph::vertex_count)
      .def("__repr__", [](const TemporalGraph& g) {
        std::ostringstream os;
        os << "TemporalGraph(n=" << g.vertex_count() << ", T=" << g.lifetime() << ")";
        return os.str();
      });

  py::class_<DtgwOptions>(m, "Options")
      .def(py::init<>())
      .def_property(
          "signature", [](const DtgwOptions& o) { return to_string(o.signature); },
          [](DtgwOptions& o, const std::string& s) {
            o.signature = signature_kind_from_string(s);
          })
      .def_property(
          "metric", [](const DtgwOptions& o) { return to_string(o.metric); },
          [](DtgwOptions& o, const std::string& s) { o.metric = metric_kind_from_string(s); })
      .def_property(
          "delta", [](const DtgwOptions& o) { return to_string(o.deletion); },
          [](DtgwOptions& o, const std::string& s) {
            o.deletion = deletion_policy_from_string(s);
          })
      .def_property(
          "band", [](const DtgwOptions& o) { return o.band.width; },
          [](DtgwOptions& o, int w) {
            o.band = w < 0 ? BandConstraint::none() : BandConstraint::sakoe_chiba(w);
          })
      .def_readwrite("normalize", &DtgwOptions::normalize)
      .def_property(
          "lambda_budget",
          [](const DtgwOptions& o) { return o.lambda_budget; },
          [](DtgwOptions& o, std::optional<int> v) { o.lambda_budget = v; })
      .def_readwrite("max_iterations", &DtgwOptions::max_iterations)
      .def_property(
          "init", [](const DtgwOptions& o) { return to_string(o.init); },
          [](DtgwOptions& o, const std::string& s) { o.init = init_kind_from_string(s); })
      .def_readwrite("path_budget", &DtgwOptions::path_budget);

  m.def(
      "validate",
      [](const TemporalGraph& g) -> std::optional<std::string> {
        if (auto bad = validate_temporal_graph(g)) return bad->kind + ": " + bad->detail;
        return std::nullopt;
      },
      py::arg("graph"), "None if the graph is well formed, else a description");

  m.def(
      "ingest_file",
      [](const std::string& path, int bin_width, bool drop_isolated) {
        return ingest_file(path, bin_width, drop_isolated);
      },
      py::arg("path"), py::arg("bin_width") = 20, py::arg("drop_isolated") = false);

  m.def(
      "distance",
      [](const TemporalGraph& g, const TemporalGraph& h, std::optional<DtgwOptions> options,
         bool exact) {
        const auto opts = resolve(options);
        return result_dict(exact ? exact_dtgw(g, h, opts) : am_heuristic(g, h, opts));
      },
      py::arg("g"), py::arg("h"), py::arg("options") = std::nullopt,
      py::arg("exact") = false);

  m.def(
      "non_consistent",
      [](const TemporalGraph& g, const TemporalGraph& h, std::optional<DtgwOptions> options) {
        return non_consistent_distance(g, h, resolve(options));
      },
      py::arg("g"), py::arg("h"), py::arg("options") = std::nullopt);

  m.def(
      "non_temporal",
      [](const TemporalGraph& g, const TemporalGraph& h, std::optional<DtgwOptions> options) {
        return non_temporal_distance(g, h, resolve(options));
      },
      py::arg("g"), py::arg("h"), py::arg("options") = std::nullopt);

  m.def(
      "is_zero",
      [](const TemporalGraph& g, const TemporalGraph& h, std::optional<DtgwOptions> options) {
        return is_zero_dtgw(g, h, resolve(options)).is_zero;
      },
      py::arg("g"), py::arg("h"), py::arg("options") = std::nullopt);

  m.def(
      "decide",
      [](const TemporalGraph& g, const TemporalGraph& h, double c,
         std::optional<DtgwOptions> options) { return decide_dtgw(g, h, c, resolve(options)); },
      py::arg("g"), py::arg("h"), py::arg("c"), py::arg("options") = std::nullopt);

  m.def(
      "perturb",
      [](const TemporalGraph& g, const std::string& model, double p, std::uint64_t seed) {
        NoiseSpec spec;
        spec.model = noise_model_from_string(model);
        spec.p = p;
        spec.seed = seed;
        return perturb(g, spec);
      },
      py::arg("g"), py::arg("model"), py::arg("p"), py::arg("seed") = 0);

  m.def(
      "cluster",
      [](const std::vector<std::vector<double>>& distances,
         std::vector<std::string> labels, int k) {
        const auto dend = complete_linkage_cluster(to_matrix(distances), std::move(labels));
        const auto clusters = cut_dendrogram(dend, k);
        py::dict d;
        py::list merges;
        for (const auto& mg : dend.merges)
          merges.append(py::make_tuple(mg.a, mg.b, mg.height));
        d["merges"] = merges;
        d["newick"] = dendrogram_to_newick(dend);
        py::list parts;
        for (const auto& cluster : clusters) {
          py::list names;
          for (int leaf : cluster) names.append(dend.leaf_labels[leaf]);
          parts.append(names);
        }
        d["partition"] = parts;
        return d;
      },
      py::arg("distances"), py::arg("labels") = std::vector<std::string>{},
      py::arg("k") = 2);

  m.def(
      "qp_export",
      [](const TemporalGraph& g, const TemporalGraph& h, std::optional<DtgwOptions> options) {
        std::ostringstream os;
        export_qp(g, h, resolve(options), os);
        return os.str();
      },
      py::arg("g"), py::arg("h"), py::arg("options") = std::nullopt);

  m.def(
      "count_paths",
      [](int t, int u, std::optional<int> lam) { return count_warping_paths(t, u, lam); },
      py::arg("t"), py::arg("u"), py::arg("lam") = std::nullopt);
}
