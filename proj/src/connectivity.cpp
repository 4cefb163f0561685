#include "gvsa/connectivity.hpp"

#include <cmath>

#include "gvsa/errors.hpp"
#include "gvsa/stats.hpp"

namespace gvsa {

WeightedGraph correlation_matrix(const MultivariateSignal& signal, SampleRange epoch) {
  if (epoch.first < 0 || epoch.count < 3 || epoch.first + epoch.count > signal.samples()) {
    throw ConfigError("correlation_matrix: epoch out of bounds or shorter than 3 samples");
  }
  const Eigen::Index n = signal.nodes();
  Eigen::MatrixXd centered = signal.data().middleCols(epoch.first, epoch.count);
  centered.colwise() -= centered.rowwise().mean().eval();
  Eigen::VectorXd norms = centered.rowwise().norm();
  const double scale = std::max(1.0, centered.cwiseAbs().maxCoeff());
  Eigen::MatrixXd gram = centered * centered.transpose();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      // constant rows carry no shape information: weight 0
      if (norms(i) <= 1e-14 * scale || norms(j) <= 1e-14 * scale) continue;
      const double r = gram(i, j) / (norms(i) * norms(j));
      c(i, j) = c(j, i) = std::clamp(r, -1.0, 1.0);
    }
  }
  return WeightedGraph(std::move(c), GraphKind::correlation);
}

WeightedGraph correlation_matrix(const MultivariateSignal& signal) {
  return correlation_matrix(signal, SampleRange{0, signal.samples()});
}

WeightedGraph coherence_matrix(const MultivariateSignal& signal, FrequencyBand band) {
  if (!(band.low_hz >= 0.0) || !(band.low_hz < band.high_hz) ||
      !(band.high_hz <= signal.sample_rate() / 2.0)) {
    throw ConfigError("coherence_matrix: invalid band");
  }
  const SpectralDensity sd = welch_spectra(signal);
  std::vector<Eigen::Index> bins;
  for (Eigen::Index k = 0; k < sd.frequencies.size(); ++k) {
    if (sd.frequencies(k) >= band.low_hz && sd.frequencies(k) <= band.high_hz) {
      bins.push_back(k);
    }
  }
  if (bins.empty()) throw ConfigError("coherence_matrix: band contains no frequency bins");

  const Eigen::Index n = signal.nodes();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      std::vector<double> msc;
      msc.reserve(bins.size());
      for (Eigen::Index k : bins) {
        const double denom = sd.auto_spectra(i, k) * sd.auto_spectra(j, k);
        msc.push_back(denom > 0.0 ? std::norm(sd.cross[k](i, j)) / denom : 0.0);
      }
      // band average (not the paper's raw sum) keeps entries in [0,1]
      const double v = pairwise_sum(msc) / static_cast<double>(msc.size());
      c(i, j) = c(j, i) = std::clamp(v, 0.0, 1.0);
    }
  }
  return WeightedGraph(std::move(c), GraphKind::coherence);
}

WeightedGraph pli_matrix(const MultivariateSignal& signal) {
  const AnalyticDecomposition ad = analytic_signal(signal);
  const Eigen::Index n = signal.nodes();
  const Eigen::Index p = signal.samples();
  const Eigen::Index m = ad.unreliable_margin;
  const Eigen::Index count = p - 2 * m;
  if (count < 2) throw ConfigError("pli_matrix: too few reliable samples");

  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  std::vector<double> signs(static_cast<std::size_t>(count));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      for (Eigen::Index t = 0; t < count; ++t) {
        // Wrap the difference onto the circle so a fixed lag cannot change
        // sign when one phase crosses the +-pi cut.
        const double d = std::remainder(ad.phase(i, m + t) - ad.phase(j, m + t), 2.0 * M_PI);
        signs[t] = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
      }
      const double v = std::fabs(pairwise_sum(signs) / static_cast<double>(count));
      c(i, j) = c(j, i) = std::clamp(v, 0.0, 1.0);
    }
  }
  return WeightedGraph(std::move(c), GraphKind::pli);
}

GvdResult gvd(const MultivariateSignal& signal, const WeightedGraph& graph,
              const NodeFunctionSpec& spec, Eigen::Index unreliable_margin) {
  if (graph.nodes() != signal.nodes()) {
    throw ConfigError("gvd: node dimension mismatch");
  }
  GvdResult r;
  r.kind = spec.kind;
  r.graph_kind = graph.kind();
  r.unreliable_margin = unreliable_margin;
  r.node_values.resize(signal.nodes(), signal.samples());
  for_each_weighted_slice(graph, signal, spec, [&](Eigen::Index t, const Eigen::MatrixXd& d) {
    r.node_values.col(t) = d.rowwise().sum();
  });
  return r;
}

double modular_connectivity(const MultivariateSignal& signal, const WeightedGraph& graph,
                            const NodeFunctionSpec& spec,
                            const std::vector<Eigen::Index>& module_nodes, SampleRange epoch) {
  if (module_nodes.empty()) throw ConfigError("modular_connectivity: empty module");
  if (epoch.first < 0 || epoch.count < 1 || epoch.first + epoch.count > signal.samples()) {
    throw ConfigError("modular_connectivity: epoch out of bounds");
  }
  for (Eigen::Index i : module_nodes) {
    if (i < 0 || i >= signal.nodes()) throw ConfigError("modular_connectivity: node out of range");
  }
  std::vector<double> per_sample;
  per_sample.reserve(epoch.count);
  for_each_weighted_slice(graph, signal, spec, [&](Eigen::Index t, const Eigen::MatrixXd& d) {
    if (t < epoch.first || t >= epoch.first + epoch.count) return;
    double acc = 0.0;
    for (Eigen::Index i : module_nodes) acc += d.row(i).sum();
    per_sample.push_back(acc);
  });
  return pairwise_sum(per_sample) / static_cast<double>(epoch.count);
}

NodeFunctionSpec make_node_function(NodeFunction kind, const MultivariateSignal& epoch_signal,
                                    std::optional<FrequencyBand> band, Eigen::Index* margin) {
  Eigen::Index m = 0;
  NodeFunctionSpec spec;
  switch (kind) {
    case NodeFunction::squared_difference:
      spec = NodeFunctionSpec::squared_difference();
      break;
    case NodeFunction::pair_average:
      spec = NodeFunctionSpec::pair_average();
      break;
    case NodeFunction::instantaneous_correlation:
      spec = NodeFunctionSpec::instantaneous_correlation(epoch_signal);
      break;
    case NodeFunction::envelope_squared_difference:
    case NodeFunction::envelope_instantaneous_correlation: {
      if (!band) throw ConfigError("envelope node functions require a frequency band");
      BandpassResult bp = bandpass(epoch_signal, band->low_hz, band->high_hz);
      AnalyticDecomposition ad = analytic_signal(bp.signal);
      m = bp.unreliable_margin + ad.unreliable_margin;
      if (kind == NodeFunction::envelope_squared_difference) {
        spec = NodeFunctionSpec::envelope_squared_difference(std::move(ad.envelope));
      } else {
        const Eigen::Index p = epoch_signal.samples();
        const Eigen::Index count = p - 2 * m;
        if (count < 2) throw ConfigError("envelope statistics: too few reliable samples");
        spec = NodeFunctionSpec::envelope_instantaneous_correlation(std::move(ad.envelope), m,
                                                                    count);
      }
      break;
    }
    case NodeFunction::phase_sign: {
      if (band) {
        BandpassResult bp = bandpass(epoch_signal, band->low_hz, band->high_hz);
        AnalyticDecomposition ad = analytic_signal(bp.signal);
        m = bp.unreliable_margin + ad.unreliable_margin;
        spec = NodeFunctionSpec::phase_sign(std::move(ad.phase));
      } else {
        AnalyticDecomposition ad = analytic_signal(epoch_signal);
        m = ad.unreliable_margin;
        spec = NodeFunctionSpec::phase_sign(std::move(ad.phase));
      }
      break;
    }
  }
  if (margin) *margin = m;
  return spec;
}

WindowedGvd windowed_gvd(const MultivariateSignal& signal, const WindowScheme& scheme,
                         GraphKind graph_kind, NodeFunction function_kind,
                         std::optional<FrequencyBand> band,
                         const std::vector<Eigen::Index>& module_nodes) {
  if (scheme.tau < 2 || scheme.t_window < 2 || scheme.t_window > scheme.tau ||
      scheme.start_offset < 0) {
    throw ConfigError("windowed_gvd: invalid window scheme");
  }
  const Eigen::Index p = signal.samples();
  const Eigen::Index epochs = (p - scheme.start_offset) / scheme.tau;
  if (epochs < 1) {
    throw ConfigError("windowed_gvd: signal too short for one epoch");
  }
  const Eigen::Index windows = scheme.tau / scheme.t_window;

  std::vector<Eigen::Index> module = module_nodes;
  if (module.empty()) {
    for (Eigen::Index i = 0; i < signal.nodes(); ++i) module.push_back(i);
  }

  WindowedGvd out;
  out.epochs = epochs;
  out.windows_per_epoch = windows;
  out.values.resize(epochs, windows);

  for (Eigen::Index e = 0; e < epochs; ++e) {
    const Eigen::Index start = scheme.start_offset + e * scheme.tau;
    MultivariateSignal sub = signal.slice_samples(start, scheme.tau);

    WeightedGraph graph = [&]() {
      switch (graph_kind) {
        case GraphKind::correlation:
          return correlation_matrix(sub);
        case GraphKind::coherence:
          if (!band) throw ConfigError("windowed_gvd: coherence graph requires a band");
          return coherence_matrix(sub, *band);
        case GraphKind::pli:
          if (band) {
            return pli_matrix(bandpass(sub, band->low_hz, band->high_hz).signal);
          }
          return pli_matrix(sub);
        default:
          throw ConfigError("windowed_gvd: graph kind must be derived from the signal");
      }
    }();

    Eigen::Index margin = 0;
    NodeFunctionSpec spec = make_node_function(function_kind, sub, band, &margin);
    GvdResult res = gvd(sub, graph, spec, margin);

    Eigen::RowVectorXd module_sum = Eigen::RowVectorXd::Zero(scheme.tau);
    for (Eigen::Index i : module) module_sum += res.node_values.row(i);
    for (Eigen::Index w = 0; w < windows; ++w) {
      const auto seg = module_sum.segment(w * scheme.t_window, scheme.t_window);
      std::vector<double> vals(seg.data(), seg.data() + seg.size());
      out.values(e, w) = pairwise_sum(vals) / static_cast<double>(scheme.t_window);
    }
  }
  return out;
}

}  // namespace gvsa
