// gvsa: graph-variate signal analysis command-line tool.
//
// Subcommands: analyze, connectivity, cluster, simulate ar-detect,
// simulate spheroid. A JSON config file (--config) supplies defaults for any
// flag (keys are the flag names without the leading dashes); explicit flags
// win. All outputs are deterministic functions of (config, seed) in
// single-thread mode.

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "gvsa/connectivity.hpp"
#include "gvsa/csv.hpp"
#include "gvsa/errors.hpp"
#include "gvsa/experiments.hpp"
#include "gvsa/gsp.hpp"
#include "gvsa/rng.hpp"
#include "gvsa/signal.hpp"
#include "gvsa/tensor.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

struct Options {
  std::string config_path;
  std::string output_dir = ".";
  std::uint64_t seed = 0;
  int threads = 1;

  std::string input_path;
  double sample_rate = 1.0;
  std::vector<double> band;  // [low_hz, high_hz] when present
  std::string graph_kind = "correlation";
  std::string external_graph;
  std::string node_function = "ico";
  long window_tau = 0;
  long window_t = 0;
  long window_offset = 0;
  std::vector<long> module_nodes;

  // simulate ar-detect
  std::vector<long> signal_sizes;
  std::vector<long> populations;
  long length = 1000;

  // simulate spheroid
  std::vector<double> deltas;
  int num_seeds = 20;
  double noise_sd = 0.3;
  std::vector<long> dims = {10, 10, 10};
};

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gvsa::IoError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw gvsa::ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw gvsa::ConfigError("config file must hold a JSON object");
  return j;
}

/// Finds --config on the raw command line so its values can act as defaults
/// before CLI11 parses the flags proper.
std::string scan_config_path(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) return argv[i + 1];
    if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
  }
  return {};
}

template <typename T>
void from_config(const json& j, const char* key, T& value) {
  if (j.contains(key)) {
    try {
      value = j.at(key).get<T>();
    } catch (const json::exception& e) {
      throw gvsa::ConfigError(std::string("config key '") + key + "': " + e.what());
    }
  }
}

void apply_config(const json& j, Options& o) {
  from_config(j, "output-dir", o.output_dir);
  from_config(j, "seed", o.seed);
  from_config(j, "threads", o.threads);
  from_config(j, "input-path", o.input_path);
  from_config(j, "sample-rate", o.sample_rate);
  from_config(j, "band", o.band);
  from_config(j, "graph-kind", o.graph_kind);
  from_config(j, "external-graph", o.external_graph);
  from_config(j, "node-function", o.node_function);
  from_config(j, "window-tau", o.window_tau);
  from_config(j, "window-t", o.window_t);
  from_config(j, "window-offset", o.window_offset);
  from_config(j, "module-nodes", o.module_nodes);
  from_config(j, "signal-sizes", o.signal_sizes);
  from_config(j, "populations", o.populations);
  from_config(j, "length", o.length);
  from_config(j, "deltas", o.deltas);
  from_config(j, "num-seeds", o.num_seeds);
  from_config(j, "noise-sd", o.noise_sd);
  from_config(j, "dims", o.dims);
}

gvsa::NodeFunction parse_node_function(const std::string& name) {
  if (name == "sqd") return gvsa::NodeFunction::squared_difference;
  if (name == "ico") return gvsa::NodeFunction::instantaneous_correlation;
  if (name == "env_sqd") return gvsa::NodeFunction::envelope_squared_difference;
  if (name == "env_ico") return gvsa::NodeFunction::envelope_instantaneous_correlation;
  if (name == "phase_sign") return gvsa::NodeFunction::phase_sign;
  if (name == "pair_average") return gvsa::NodeFunction::pair_average;
  throw gvsa::ConfigError("unknown node function: " + name);
}

std::optional<gvsa::FrequencyBand> parse_band(const Options& o) {
  if (o.band.empty()) return std::nullopt;
  if (o.band.size() != 2) throw gvsa::ConfigError("--band needs exactly two values: low high");
  return gvsa::FrequencyBand{o.band[0], o.band[1]};
}

void require_band_if_needed(const Options& o, gvsa::NodeFunction f) {
  const bool graph_needs = o.graph_kind == "coherence" || o.graph_kind == "pli";
  const bool func_needs = f == gvsa::NodeFunction::envelope_squared_difference ||
                          f == gvsa::NodeFunction::envelope_instantaneous_correlation ||
                          f == gvsa::NodeFunction::phase_sign;
  if ((graph_needs || func_needs) && o.band.empty()) {
    throw gvsa::ConfigError("graph kind '" + o.graph_kind + "' / node function '" +
                            o.node_function + "' requires --band");
  }
}

gvsa::WeightedGraph build_graph(const gvsa::MultivariateSignal& signal, const Options& o) {
  const auto band = parse_band(o);
  if (o.graph_kind == "correlation") return gvsa::correlation_matrix(signal);
  if (o.graph_kind == "coherence") return gvsa::coherence_matrix(signal, *band);
  if (o.graph_kind == "pli") {
    return gvsa::pli_matrix(gvsa::bandpass(signal, band->low_hz, band->high_hz).signal);
  }
  if (o.graph_kind == "external") {
    if (o.external_graph.empty()) {
      throw gvsa::ConfigError("graph-kind external requires --external-graph");
    }
    Eigen::MatrixXd w = gvsa::ingest_csv(o.external_graph, 1.0).data();
    if (w.rows() != signal.nodes() || w.cols() != signal.nodes()) {
      throw gvsa::ConfigError("external graph dimension does not match the signal");
    }
    return gvsa::WeightedGraph(std::move(w), gvsa::GraphKind::generic);
  }
  throw gvsa::ConfigError("unknown graph kind: " + o.graph_kind);
}

json config_echo(const Options& o) {
  json j;
  j["output-dir"] = o.output_dir;
  j["seed"] = o.seed;
  j["threads"] = o.threads;
  j["input-path"] = o.input_path;
  j["sample-rate"] = o.sample_rate;
  j["band"] = o.band;
  j["graph-kind"] = o.graph_kind;
  j["external-graph"] = o.external_graph;
  j["node-function"] = o.node_function;
  j["window-tau"] = o.window_tau;
  j["window-t"] = o.window_t;
  j["window-offset"] = o.window_offset;
  j["module-nodes"] = o.module_nodes;
  j["signal-sizes"] = o.signal_sizes;
  j["populations"] = o.populations;
  j["length"] = o.length;
  j["deltas"] = o.deltas;
  j["num-seeds"] = o.num_seeds;
  j["noise-sd"] = o.noise_sd;
  j["dims"] = o.dims;
  return j;
}

void write_manifest(const Options& o, const std::string& command, const json& extra) {
  json j;
  j["command"] = command;
  j["config"] = config_echo(o);
  j["versions"] = {{"gvsa", kVersion},
                   {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                 std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                 std::to_string(EIGEN_MINOR_VERSION)}};
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  const fs::path path = fs::path(o.output_dir) / "manifest.json";
  std::ofstream out(path);
  if (!out) throw gvsa::IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void ensure_output_dir(const Options& o) {
  std::error_code ec;
  fs::create_directories(o.output_dir, ec);
  if (ec) throw gvsa::IoError("cannot create output directory " + o.output_dir);
}

std::vector<Eigen::Index> to_index_vector(const std::vector<long>& v) {
  return {v.begin(), v.end()};
}

void run_analyze(const Options& o) {
  const gvsa::NodeFunction f = parse_node_function(o.node_function);
  require_band_if_needed(o, f);
  ensure_output_dir(o);

  const gvsa::MultivariateSignal signal = gvsa::ingest_csv(o.input_path, o.sample_rate);
  const gvsa::WeightedGraph graph = build_graph(signal, o);
  const auto band = parse_band(o);

  Eigen::Index margin = 0;
  const gvsa::NodeFunctionSpec spec = gvsa::make_node_function(f, signal, band, &margin);
  const gvsa::GvdResult res = gvsa::gvd(signal, graph, spec, margin);
  const Eigen::MatrixXd clustering = gvsa::local_clustering(graph, signal, spec);

  const fs::path dir(o.output_dir);
  gvsa::write_matrix_csv((dir / "node_gvd.csv").string(), res.node_values);
  gvsa::write_matrix_csv((dir / "clustering.csv").string(), clustering);
  gvsa::write_matrix_csv((dir / "connectivity.csv").string(), graph.weights());

  json extra;
  extra["margins"] = {{"unreliable", margin}};
  extra["nodes"] = signal.nodes();
  extra["samples"] = signal.samples();

  if (o.window_tau > 0) {
    if (o.graph_kind == "external") {
      throw gvsa::ConfigError("windowed analysis needs a signal-derived graph kind");
    }
    const gvsa::GraphKind gk = o.graph_kind == "correlation" ? gvsa::GraphKind::correlation
                               : o.graph_kind == "coherence" ? gvsa::GraphKind::coherence
                                                             : gvsa::GraphKind::pli;
    const gvsa::WindowScheme scheme{o.window_tau, o.window_t > 0 ? o.window_t : o.window_tau,
                                    o.window_offset};
    const gvsa::WindowedGvd w =
        gvsa::windowed_gvd(signal, scheme, gk, f, band, to_index_vector(o.module_nodes));
    gvsa::write_matrix_csv((dir / "windowed.csv").string(), w.values);
    extra["windows"] = {{"epochs", w.epochs}, {"per-epoch", w.windows_per_epoch}};
  }
  write_manifest(o, "analyze", extra);
}

void run_connectivity(const Options& o) {
  const gvsa::NodeFunction f = parse_node_function(o.node_function);
  require_band_if_needed(o, f);
  ensure_output_dir(o);
  const gvsa::MultivariateSignal signal = gvsa::ingest_csv(o.input_path, o.sample_rate);
  const gvsa::WeightedGraph graph = build_graph(signal, o);
  gvsa::write_matrix_csv((fs::path(o.output_dir) / "connectivity.csv").string(),
                         graph.weights());
  write_manifest(o, "connectivity", {{"nodes", signal.nodes()}});
}

void run_cluster(const Options& o) {
  const gvsa::NodeFunction f = parse_node_function(o.node_function);
  require_band_if_needed(o, f);
  ensure_output_dir(o);
  const gvsa::MultivariateSignal signal = gvsa::ingest_csv(o.input_path, o.sample_rate);
  const gvsa::WeightedGraph graph = build_graph(signal, o);
  Eigen::Index margin = 0;
  const gvsa::NodeFunctionSpec spec =
      gvsa::make_node_function(f, signal, parse_band(o), &margin);
  const Eigen::MatrixXd clustering = gvsa::local_clustering(graph, signal, spec);
  gvsa::write_matrix_csv((fs::path(o.output_dir) / "clustering.csv").string(), clustering);
  write_manifest(o, "cluster", {{"margins", {{"unreliable", margin}}}});
}

void run_ar_detect_cmd(Options& o) {
  if (o.signal_sizes.empty()) {
    for (long h = 2; h <= 512; h *= 2) o.signal_sizes.push_back(h);
  }
  if (o.populations.empty()) {
    for (long s = 5; s <= 50; s += 5) o.populations.push_back(s);
  }
  ensure_output_dir(o);
  const gvsa::ArDetectGrid grid = gvsa::run_ar_detect(
      to_index_vector(o.signal_sizes), to_index_vector(o.populations), o.seed, o.length);

  const fs::path dir(o.output_dir);
  for (int m = 0; m < gvsa::kGvdMethodCount; ++m) {
    const auto method = static_cast<gvsa::GvdMethod>(m);
    const fs::path path = dir / (std::string("ar_detect_") + gvsa::to_string(method) + ".csv");
    std::ofstream out(path);
    if (!out) throw gvsa::IoError("cannot write " + path.string());
    out << "population";
    for (Eigen::Index h : grid.signal_sizes) out << ",h" << h;
    out << '\n';
    for (std::size_t pi = 0; pi < grid.populations.size(); ++pi) {
      out << grid.populations[pi];
      for (std::size_t hi = 0; hi < grid.signal_sizes.size(); ++hi) {
        out << ','
            << gvsa::format_double(grid.p_values[m](static_cast<Eigen::Index>(pi),
                                                    static_cast<Eigen::Index>(hi)));
      }
      out << '\n';
    }
  }
  write_manifest(o, "simulate ar-detect", json::object());
}

void run_spheroid_cmd(Options& o) {
  if (o.deltas.empty()) {
    for (int k = 1; k <= 9; ++k) o.deltas.push_back(0.1 * k);
  }
  if (o.dims.size() != 3) throw gvsa::ConfigError("--dims needs exactly three values");
  ensure_output_dir(o);

  const gvsa::GridWorld world =
      gvsa::make_grid_world({o.dims[0], o.dims[1], o.dims[2]});
  const std::vector<gvsa::SpheroidSummary> summaries = gvsa::run_spheroid_experiment(
      world, o.deltas, o.num_seeds, o.length, o.seed, o.noise_sd);

  const fs::path dir(o.output_dir);
  {
    std::ofstream out(dir / "spheroid_percentages.csv");
    if (!out) throw gvsa::IoError("cannot write spheroid_percentages.csv");
    out << "delta,detector,centre_pct,any_pct\n";
    for (const auto& s : summaries) {
      for (int d = 0; d < gvsa::kDetectorCount; ++d) {
        out << gvsa::format_double(s.delta) << ',' << gvsa::to_string(gvsa::kDetectors[d])
            << ',' << gvsa::format_double(s.centre_pct[d]) << ','
            << gvsa::format_double(s.any_pct[d]) << '\n';
      }
    }
  }
  {
    std::ofstream out(dir / "spheroid_overall.csv");
    if (!out) throw gvsa::IoError("cannot write spheroid_overall.csv");
    out << "detector,centre_pct,any_pct\n";
    for (int d = 0; d < gvsa::kDetectorCount; ++d) {
      double centre = 0.0, any = 0.0;
      for (const auto& s : summaries) {
        centre += s.centre_pct[d];
        any += s.any_pct[d];
      }
      const double k = static_cast<double>(summaries.size());
      out << gvsa::to_string(gvsa::kDetectors[d]) << ',' << gvsa::format_double(centre / k)
          << ',' << gvsa::format_double(any / k) << '\n';
    }
  }
  {
    std::ofstream out(dir / "spheroid_counts.csv");
    if (!out) throw gvsa::IoError("cannot write spheroid_counts.csv");
    out << "delta,seed_index,detector,centre,any,samples\n";
    for (const auto& s : summaries) {
      for (std::size_t seed_i = 0; seed_i < s.per_seed.size(); ++seed_i) {
        const gvsa::DetectionTable& t = s.per_seed[seed_i];
        for (int d = 0; d < gvsa::kDetectorCount; ++d) {
          out << gvsa::format_double(s.delta) << ',' << seed_i << ','
              << gvsa::to_string(gvsa::kDetectors[d]) << ',' << t.counts[d].centre << ','
              << t.counts[d].any << ',' << t.samples << '\n';
        }
      }
    }
  }
  write_manifest(o, "simulate spheroid", json::object());
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  try {
    const std::string config_path = scan_config_path(argc, argv);
    if (!config_path.empty()) {
      o.config_path = config_path;
      apply_config(load_config(config_path), o);
    }
  } catch (const gvsa::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }

  CLI::App app{"graph-variate signal analysis"};
  app.require_subcommand(1);
  app.add_option("--config", o.config_path, "JSON config file; flags override its values");
  app.add_option("--output-dir", o.output_dir, "directory for result files");
  app.add_option("--seed", o.seed, "base RNG seed");
  app.add_option("--threads", o.threads, "worker threads (1 = reference mode)");

  auto add_signal_opts = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "JSON config file; flags override its values");
    sub->add_option("--output-dir", o.output_dir, "directory for result files");
    sub->add_option("--seed", o.seed, "base RNG seed");
    sub->add_option("--threads", o.threads, "worker threads (1 = reference mode)");
    sub->add_option("--input-path", o.input_path, "input signal CSV");
    sub->add_option("--sample-rate", o.sample_rate, "samples per second (or per metre)");
    sub->add_option("--band", o.band, "frequency band: low_hz high_hz")->expected(0, 2);
    sub->add_option("--graph-kind", o.graph_kind, "correlation|coherence|pli|external");
    sub->add_option("--external-graph", o.external_graph, "graph CSV for graph-kind=external");
    sub->add_option("--node-function", o.node_function,
                    "sqd|ico|env_sqd|env_ico|phase_sign|pair_average");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "full GVD analysis of a signal file");
  add_signal_opts(analyze);
  analyze->add_option("--window-tau", o.window_tau, "long epoch length (samples)");
  analyze->add_option("--window-t", o.window_t, "short window length (samples)");
  analyze->add_option("--window-offset", o.window_offset, "first epoch offset (samples)");
  analyze->add_option("--module-nodes", o.module_nodes, "node subset for windowed analysis");

  CLI::App* connectivity =
      app.add_subcommand("connectivity", "connectivity matrix only");
  add_signal_opts(connectivity);

  CLI::App* cluster = app.add_subcommand("cluster", "clustering-coefficient matrix only");
  add_signal_opts(cluster);

  CLI::App* simulate = app.add_subcommand("simulate", "run a simulation experiment");
  simulate->require_subcommand(1);
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "JSON config file; flags override its values");
    sub->add_option("--output-dir", o.output_dir, "directory for result files");
    sub->add_option("--seed", o.seed, "base RNG seed");
    sub->add_option("--threads", o.threads, "worker threads (1 = reference mode)");
    sub->add_option("--length", o.length, "samples per realization");
  };
  CLI::App* ar = simulate->add_subcommand("ar-detect", "correlated-source detection grid");
  add_common(ar);
  ar->add_option("--signal-sizes", o.signal_sizes, "multivariate signal sizes h");
  ar->add_option("--populations", o.populations, "population sizes");
  CLI::App* sph = simulate->add_subcommand("spheroid", "travelling-spheroid detection");
  add_common(sph);
  sph->add_option("--deltas", o.deltas, "spheroid amplitudes");
  sph->add_option("--num-seeds", o.num_seeds, "seeds per delta");
  sph->add_option("--noise-sd", o.noise_sd, "background noise standard deviation");
  sph->add_option("--dims", o.dims, "grid dimensions (three values)")->expected(3);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    if (analyze->parsed()) {
      run_analyze(o);
    } else if (connectivity->parsed()) {
      run_connectivity(o);
    } else if (cluster->parsed()) {
      run_cluster(o);
    } else if (simulate->parsed()) {
      if (ar->parsed()) {
        run_ar_detect_cmd(o);
      } else {
        run_spheroid_cmd(o);
      }
    }
  } catch (const gvsa::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const gvsa::NumericError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const gvsa::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
  return 0;
}
