#ifndef GVSA_CONNECTIVITY_HPP
#define GVSA_CONNECTIVITY_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "gvsa/signal.hpp"
#include "gvsa/spectral.hpp"
#include "gvsa/tensor.hpp"

namespace gvsa {

/// Contiguous sample range [first, first + count).
struct SampleRange {
  Eigen::Index first = 0;
  Eigen::Index count = 0;
};

struct FrequencyBand {
  double low_hz = 0.0;
  double high_hz = 0.0;
};

/// Pearson correlation over the epoch; pairs involving a constant row get
/// weight 0 (no shape information, no connectivity evidence).
WeightedGraph correlation_matrix(const MultivariateSignal& signal, SampleRange epoch);
WeightedGraph correlation_matrix(const MultivariateSignal& signal);

/// Band-averaged magnitude-squared coherence (sum over band bins divided by
/// the bin count, so entries stay in [0,1]).
WeightedGraph coherence_matrix(const MultivariateSignal& signal, FrequencyBand band);

/// Phase-lag index |<sgn(phi_i - phi_j)>| over the reliable samples.
WeightedGraph pli_matrix(const MultivariateSignal& signal);

/// Node GVD connectivity: node_values(i,t) = sum_j c_ij F(x_i(t), x_j(t)).
struct GvdResult {
  Eigen::MatrixXd node_values;  // n x p
  NodeFunction kind = NodeFunction::pair_average;
  GraphKind graph_kind = GraphKind::generic;
  Eigen::Index unreliable_margin = 0;
};

GvdResult gvd(const MultivariateSignal& signal, const WeightedGraph& graph,
              const NodeFunctionSpec& spec, Eigen::Index unreliable_margin = 0);

/// Modular connectivity: the epoch mean over t of
/// sum_{i in module} sum_{j} c_ij F(x_i(t), x_j(t)).
double modular_connectivity(const MultivariateSignal& signal, const WeightedGraph& graph,
                            const NodeFunctionSpec& spec,
                            const std::vector<Eigen::Index>& module_nodes, SampleRange epoch);

/// Disjoint-window scheme: tau-long epochs provide the graph, T-long windows
/// inside each epoch provide the short-term averages. Trailing partial
/// windows and epochs are dropped.
struct WindowScheme {
  Eigen::Index tau = 0;       // long epoch, samples
  Eigen::Index t_window = 0;  // short window, samples
  Eigen::Index start_offset = 0;
};

struct WindowedGvd {
  Eigen::MatrixXd values;  // epochs x windows-per-epoch
  Eigen::Index epochs = 0;
  Eigen::Index windows_per_epoch = 0;
};

/// For each tau epoch: build the connectivity graph and node-function
/// statistics on that epoch, then average the modular connectivity over each
/// disjoint T window. `band` is required for coherence graphs and for
/// envelope/phase node functions. An empty module list means all nodes.
WindowedGvd windowed_gvd(const MultivariateSignal& signal, const WindowScheme& scheme,
                         GraphKind graph_kind, NodeFunction function_kind,
                         std::optional<FrequencyBand> band = std::nullopt,
                         const std::vector<Eigen::Index>& module_nodes = {});

/// Builds the node-function statistics for `kind` from the given epoch of
/// the signal (the same epoch the graph is computed on). Envelope and phase
/// statistics go through bandpass + analytic signal; their margins are
/// excluded from the means and reported in `margin`.
NodeFunctionSpec make_node_function(NodeFunction kind, const MultivariateSignal& epoch_signal,
                                    std::optional<FrequencyBand> band, Eigen::Index* margin);

}  // namespace gvsa

#endif
