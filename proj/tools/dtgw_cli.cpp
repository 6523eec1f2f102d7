#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dtgw/dtgw.hpp"
#include "dtgw/errors.hpp"
#include "dtgw/experiments.hpp"
#include "dtgw/io.hpp"
#include "dtgw/qp_export.hpp"

namespace {

struct Settings {
  std::vector<std::string> inputs;
  std::string manifest;
  std::string signature = "degree";
  std::string metric = "l1";
  std::string delta = "norm";
  long long band = -1;  // -1 = unconstrained
  bool normalize = false;
  std::string init = "swp";
  int max_iter = 100;
  long long lambda = -1;  // -1 = unrestricted path length
  std::uint64_t budget = 1000000;
  bool exact = false;
  bool pin_path = false;
  std::string path_file;
  std::string mapping_file;
  int bin_width = 20;
  bool drop_isolated = false;
  std::uint64_t seed = 0;
  int jobs = 0;  // 0 = DTGW_JOBS env var, else 1
  std::string model = "deletion";
  double p = 0.1;
  int k = 2;
  std::string truth;
  std::string output;
  double threshold = 0.0;
};

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw dtgw::InputError("cannot open '" + path + "'");
  try {
    nlohmann::json j;
    in >> j;
    return j;
  } catch (const std::exception& e) {
    throw dtgw::InputError(path + ": " + e.what());
  }
}

bool flag_given(const CLI::App* sub, const std::string& name) {
  const auto* opt = sub->get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

template <class T>
T manifest_value(const nlohmann::json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const std::exception&) {
    throw dtgw::InputError("manifest: bad value for '" + key + "'");
  }
}

void apply_manifest(const CLI::App* sub, Settings& s) {
  const nlohmann::json j = read_json_file(s.manifest);
  if (!j.is_object()) throw dtgw::InputError("manifest: expected a JSON object");
  for (const auto& [key, val] : j.items()) {
    if (key == "inputs") {
      if (!flag_given(sub, "inputs"))
        s.inputs = manifest_value<std::vector<std::string>>(val, key);
    } else if (key == "signature") {
      if (!flag_given(sub, "--signature")) s.signature = manifest_value<std::string>(val, key);
    } else if (key == "metric") {
      if (!flag_given(sub, "--metric")) s.metric = manifest_value<std::string>(val, key);
    } else if (key == "delta") {
      if (!flag_given(sub, "--delta")) s.delta = manifest_value<std::string>(val, key);
    } else if (key == "band") {
      if (!flag_given(sub, "--band")) s.band = manifest_value<long long>(val, key);
    } else if (key == "normalize") {
      if (!flag_given(sub, "--normalize")) s.normalize = manifest_value<bool>(val, key);
    } else if (key == "init") {
      if (!flag_given(sub, "--init")) s.init = manifest_value<std::string>(val, key);
    } else if (key == "max_iter") {
      if (!flag_given(sub, "--max-iter")) s.max_iter = manifest_value<int>(val, key);
    } else if (key == "lambda") {
      if (!flag_given(sub, "--lambda"))
        s.lambda = val.is_null() ? -1 : manifest_value<long long>(val, key);
    } else if (key == "budget") {
      if (!flag_given(sub, "--budget")) s.budget = manifest_value<std::uint64_t>(val, key);
    } else if (key == "exact") {
      if (!flag_given(sub, "--exact")) s.exact = manifest_value<bool>(val, key);
    } else if (key == "pin_path") {
      if (!flag_given(sub, "--pin-path")) s.pin_path = manifest_value<bool>(val, key);
    } else if (key == "path_file") {
      if (!flag_given(sub, "--path-file")) s.path_file = manifest_value<std::string>(val, key);
    } else if (key == "mapping_file") {
      if (!flag_given(sub, "--mapping-file"))
        s.mapping_file = manifest_value<std::string>(val, key);
    } else if (key == "bin_width") {
      if (!flag_given(sub, "--bin-width")) s.bin_width = manifest_value<int>(val, key);
    } else if (key == "drop_isolated") {
      if (!flag_given(sub, "--drop-isolated"))
        s.drop_isolated = manifest_value<bool>(val, key);
    } else if (key == "seed") {
      if (!flag_given(sub, "--seed")) s.seed = manifest_value<std::uint64_t>(val, key);
    } else if (key == "jobs") {
      if (!flag_given(sub, "--jobs")) s.jobs = manifest_value<int>(val, key);
    } else if (key == "model") {
      if (!flag_given(sub, "--model")) s.model = manifest_value<std::string>(val, key);
    } else if (key == "p") {
      if (!flag_given(sub, "--p")) s.p = manifest_value<double>(val, key);
    } else if (key == "k") {
      if (!flag_given(sub, "--clusters")) s.k = manifest_value<int>(val, key);
    } else if (key == "truth") {
      if (!flag_given(sub, "--truth")) s.truth = manifest_value<std::string>(val, key);
    } else if (key == "threshold") {
      if (!flag_given(sub, "--threshold")) s.threshold = manifest_value<double>(val, key);
    } else if (key == "output") {
      if (!flag_given(sub, "--output")) s.output = manifest_value<std::string>(val, key);
    } else {
      throw dtgw::InputError("manifest: unknown key '" + key + "'");
    }
  }
}

void finalize(const CLI::App* sub, Settings& s) {
  if (!s.manifest.empty()) apply_manifest(sub, s);
}

void need_inputs(const Settings& s, std::size_t exact_count) {
  if (s.inputs.size() != exact_count)
    throw std::invalid_argument("expected exactly " + std::to_string(exact_count) +
                                " input file(s)");
}

void need_at_least(const Settings& s, std::size_t lo) {
  if (s.inputs.size() < lo)
    throw std::invalid_argument("expected at least " + std::to_string(lo) + " input files");
}

dtgw::DtgwOptions make_options(const Settings& s, const dtgw::TemporalGraph& g,
                               const dtgw::TemporalGraph& h) {
  dtgw::DtgwOptions o;
  o.signature = dtgw::signature_kind_from_string(s.signature);
  o.metric = dtgw::metric_kind_from_string(s.metric);
  o.deletion = dtgw::deletion_policy_from_string(s.delta);
  if (s.band < -1) throw std::invalid_argument("--band takes a width >= 0, or -1 for none");
  o.band = s.band < 0 ? dtgw::BandConstraint::none()
                      : dtgw::BandConstraint::sakoe_chiba(static_cast<int>(s.band));
  o.normalize = s.normalize;
  if (s.lambda >= 0) o.lambda_budget = static_cast<int>(s.lambda);
  o.max_iterations = s.max_iter;
  o.init = dtgw::init_kind_from_string(s.init);
  o.pin_path = s.pin_path;
  o.path_budget = s.budget;
  if (!s.path_file.empty()) {
    o.fixed_path = dtgw::warping_path_from_json(read_json_file(s.path_file));
    o.fixed_path->order_t = g.lifetime();
    o.fixed_path->order_u = h.lifetime();
  }
  if (!s.mapping_file.empty())
    o.fixed_mapping = dtgw::vertex_mapping_from_json(read_json_file(s.mapping_file), g, h);
  return o;
}

int with_output(const Settings& s, const std::function<void(std::ostream&)>& body) {
  if (s.output.empty()) {
    body(std::cout);
    return 0;
  }
  std::ofstream out(s.output);
  if (!out) throw dtgw::InputError("cannot open '" + s.output + "' for writing");
  body(out);
  return 0;
}

std::string base_name(const std::string& path) {
  const auto slash = path.find_last_of('/');
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = name.find_last_of('.');
  if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
  return name;
}

std::vector<std::string> graph_names(const std::vector<std::string>& paths) {
  std::vector<std::string> names;
  std::map<std::string, int> seen;
  for (const auto& path : paths) {
    std::string name = base_name(path);
    const int count = ++seen[name];
    if (count > 1) name += "-" + std::to_string(count);
    names.push_back(std::move(name));
  }
  return names;
}

int resolve_jobs(const Settings& s) {
  if (s.jobs > 0) return s.jobs;
  if (const char* env = std::getenv("DTGW_JOBS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

double pair_distance(const dtgw::TemporalGraph& g, const dtgw::TemporalGraph& h,
                     const dtgw::DtgwOptions& opts, bool exact) {
  const dtgw::DtgwResult r =
      exact ? dtgw::exact_dtgw(g, h, opts) : dtgw::am_heuristic(g, h, opts);
  return r.distance;
}

// each unordered pair once, mirrored (dtgw is symmetric; the heuristic is
// made symmetric by construction here)
dtgw::Matrix distance_matrix(const std::vector<dtgw::TemporalGraph>& graphs,
                             const Settings& s) {
  const int n = static_cast<int>(graphs.size());
  dtgw::Matrix m;
  m.rows = m.cols = n;
  m.data.assign(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});

  const int jobs = std::max(1, std::min<int>(resolve_jobs(s), static_cast<int>(pairs.size())));
  std::atomic<std::size_t> next{0};
  std::mutex fail_mutex;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      const std::size_t at = next.fetch_add(1);
      if (at >= pairs.size()) return;
      const auto [i, j] = pairs[at];
      try {
        const auto opts = make_options(s, graphs[i], graphs[j]);
        const double d = pair_distance(graphs[i], graphs[j], opts, s.exact);
        m.at(i, j) = d;
        m.at(j, i) = d;
      } catch (...) {
        const std::lock_guard<std::mutex> lock(fail_mutex);
        if (!failure) failure = std::current_exception();
        next.store(pairs.size());
        return;
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return m;
}

std::vector<dtgw::TemporalGraph> load_graphs(const Settings& s) {
  std::vector<dtgw::TemporalGraph> graphs;
  graphs.reserve(s.inputs.size());
  for (const auto& path : s.inputs)
    graphs.push_back(dtgw::ingest_file(path, s.bin_width, s.drop_isolated));
  return graphs;
}

int cmd_distance(const CLI::App* sub, Settings& s) {
  finalize(sub, s);
  need_inputs(s, 2);
  const auto graphs = load_graphs(s);
  const auto opts = make_options(s, graphs[0], graphs[1]);
  const dtgw::DtgwResult r = s.exact ? dtgw::exact_dtgw(graphs[0], graphs[1], opts)
                                     : dtgw::am_heuristic(graphs[0], graphs[1], opts);
  return with_output(s, [&](std::ostream& out) {
    out << dtgw::result_to_json(r, graphs[0], graphs[1]).dump(2) << '\n';
  });
}

int cmd_matrix(const CLI::App* sub, Settings& s) {
  finalize(sub, s);
  need_at_least(s, 2);
  const auto graphs = load_graphs(s);
  const auto names = graph_names(s.inputs);
  const auto m = distance_matrix(graphs, s);
  return with_output(s,
                     [&](std::ostream& out) { dtgw::write_distance_matrix_csv(names, m, out); });
}

int cmd_cluster(const CLI::App* sub, Settings& s) {
  finalize(sub, s);
  need_at_least(s, 2);
  const auto graphs = load_graphs(s);
  const auto names = graph_names(s.inputs);
  const auto m = distance_matrix(graphs, s);
  const auto dend = dtgw::complete_linkage_cluster(m, names);
  const auto clusters = dtgw::cut_dendrogram(dend, s.k);
  const nlohmann::json report = {
      {"newick", dtgw::dendrogram_to_newick(dend)},
      {"dendrogram", dtgw::dendrogram_to_json(dend)},
      {"partition", dtgw::partition_to_json(clusters, names)},
  };
  return with_output(s, [&](std::ostream& out) { out << report.dump(2) << '\n'; });
}

int cmd_perturb(const CLI::App* sub, Settings& s) {
  finalize(sub, s);
  need_inputs(s, 1);
  const auto g = dtgw::ingest_file(s.inputs[0], s.bin_width, s.drop_isolated);
  dtgw::NoiseSpec spec;
  spec.model = dtgw::noise_model_from_string(s.model);
  spec.p = s.p;
  spec.seed = s.seed;
  const auto noisy = dtgw::perturb(g, spec);
  return with_output(
      s, [&](std::ostream& out) { dtgw::write_contact_events(noisy, s.bin_width, out); });
}

int cmd_deanon(const CLI::App* sub, Settings& s) {
  finalize(sub, s);
  need_inputs(s, 2);
  if (s.truth.empty()) throw std::invalid_argument("--truth is required");
  const auto graphs = load_graphs(s);
  const auto opts = make_options(s, graphs[0], graphs[1]);
  const dtgw::DtgwResult r = s.exact ? dtgw::exact_dtgw(graphs[0], graphs[1], opts)
                                     : dtgw::am_heuristic(graphs[0], graphs[1], opts);
  const auto truth_m =
      dtgw::vertex_mapping_from_json(read_json_file(s.truth), graphs[0], graphs[1]);
  std::unordered_map<int, int> truth;
  for (const auto& [u, v] : truth_m.pairs) truth[u] = v;
  const double acc = dtgw::deanonymization_accuracy(r.mapping, truth);
  const nlohmann::json report = {
      {"accuracy", acc},
      {"distance", r.distance},
      {"mapping", dtgw::vertex_mapping_to_json(r.mapping, graphs[0], graphs[1])},
  };
  return with_output(s, [&](std::ostream& out) { out << report.dump(2) << '\n'; });
}

int cmd_qp_export(const CLI::App* sub, Settings& s) {
  finalize(sub, s);
  need_inputs(s, 2);
  const auto graphs = load_graphs(s);
  const auto opts = make_options(s, graphs[0], graphs[1]);
  return with_output(
      s, [&](std::ostream& out) { dtgw::export_qp(graphs[0], graphs[1], opts, out); });
}

int cmd_decide(const CLI::App* sub, Settings& s) {
  finalize(sub, s);
  need_inputs(s, 2);
  const auto graphs = load_graphs(s);
  const auto opts = make_options(s, graphs[0], graphs[1]);
  const bool yes = dtgw::decide_dtgw(graphs[0], graphs[1], s.threshold, opts);
  with_output(s, [&](std::ostream& out) { out << (yes ? "yes" : "no") << '\n'; });
  return yes ? 0 : 1;
}

void add_common(CLI::App* sub, Settings& s, int max_inputs) {
  auto* inputs = sub->add_option("inputs", s.inputs, "contact-event files");
  if (max_inputs > 0) inputs->expected(0, max_inputs);
  sub->add_option("--manifest", s.manifest, "JSON run manifest; flags override its values");
  sub->add_option("--signature", s.signature, "degree | component-size | betweenness");
  sub->add_option("--metric", s.metric, "l1 | l2 | linf");
  sub->add_option("--delta", s.delta, "deletion cost: norm | constant:<value>");
  sub->add_option("--band", s.band, "warping band width (default: unconstrained)");
  sub->add_flag("--normalize", s.normalize, "divide distances by min(|V|, |W|)");
  sub->add_option("--init", s.init,
                  "sigma-star | sigma-opt | swp | owp | fixed-path | fixed-mapping");
  sub->add_option("--max-iter", s.max_iter, "alternation round cap");
  sub->add_option("--lambda", s.lambda, "extra path length over max(T, U)");
  sub->add_option("--budget", s.budget, "exact solver path enumeration cap");
  sub->add_flag("--exact", s.exact, "use the exact solver instead of the heuristic");
  sub->add_flag("--pin-path", s.pin_path, "keep the fixed path, solve the mapping once");
  sub->add_option("--path-file", s.path_file, "JSON warping path for --init fixed-path");
  sub->add_option("--mapping-file", s.mapping_file,
                  "JSON vertex mapping for --init fixed-mapping");
  sub->add_option("--bin-width", s.bin_width, "time units per layer (default 20)");
  sub->add_flag("--drop-isolated", s.drop_isolated, "drop vertices with no incident edge");
  sub->add_option("--seed", s.seed, "RNG seed");
  sub->add_option("--jobs", s.jobs, "worker threads (default: DTGW_JOBS env var, else 1)");
  sub->add_option("--output", s.output, "write results to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamic temporal graph warping toolkit"};
  app.require_subcommand(1);
  Settings s;
  std::function<int()> action;

  auto* dist = app.add_subcommand("distance", "dtgw distance between two graphs");
  add_common(dist, s, 2);
  dist->callback([&, dist] { action = [&, dist] { return cmd_distance(dist, s); }; });

  auto* matrix = app.add_subcommand("matrix", "pairwise distance matrix (CSV)");
  add_common(matrix, s, 0);
  matrix->callback([&, matrix] { action = [&, matrix] { return cmd_matrix(matrix, s); }; });

  auto* cluster = app.add_subcommand("cluster", "complete-linkage clustering of the inputs");
  add_common(cluster, s, 0);
  cluster->add_option("-k,--clusters", s.k, "clusters to cut the dendrogram into");
  cluster->callback(
      [&, cluster] { action = [&, cluster] { return cmd_cluster(cluster, s); }; });

  auto* perturb = app.add_subcommand("perturb", "apply a noise model to one graph");
  add_common(perturb, s, 1);
  perturb->add_option("--model", s.model,
                      "deletion | temporal-rewire | underlying-rewire | layer-stretch");
  perturb->add_option("--p", s.p, "perturbation probability");
  perturb->callback(
      [&, perturb] { action = [&, perturb] { return cmd_perturb(perturb, s); }; });

  auto* deanon = app.add_subcommand("deanon", "score a mapping against a ground truth");
  add_common(deanon, s, 2);
  deanon->add_option("--truth", s.truth, "JSON file of true [label_g, label_h] pairs");
  deanon->callback([&, deanon] { action = [&, deanon] { return cmd_deanon(deanon, s); }; });

  auto* qp = app.add_subcommand("qp-export", "write the QP model for two graphs");
  add_common(qp, s, 2);
  qp->callback([&, qp] { action = [&, qp] { return cmd_qp_export(qp, s); }; });

  auto* decide = app.add_subcommand("decide", "is dtgw <= threshold? exit 0 yes, 1 no");
  add_common(decide, s, 2);
  decide->add_option("-c,--threshold", s.threshold, "decision threshold (default 0)");
  decide->callback([&, decide] { action = [&, decide] { return cmd_decide(decide, s); }; });

  try {
    app.parse(argc, argv);
    return action ? action() : 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const dtgw::BudgetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const dtgw::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
