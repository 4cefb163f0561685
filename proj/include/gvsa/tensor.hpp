#ifndef GVSA_TENSOR_HPP
#define GVSA_TENSOR_HPP

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "gvsa/signal.hpp"

namespace gvsa {

/// The bivariate node-space functions used to build instantaneous networks.
enum class NodeFunction {
  squared_difference,              ///< (x~_i - x~_j)^2 on the node-normalized signal
  instantaneous_correlation,       ///< |(x_i - mean_i)(x_j - mean_j)|
  envelope_squared_difference,     ///< (s_i - s_j)^2 on envelopes
  envelope_instantaneous_correlation,
  phase_sign,                      ///< sgn(phi_i - phi_j), sgn(0) = 0
  pair_average,                    ///< (x_i + x_j) / 2
};

const char* to_string(NodeFunction f);
bool is_symmetric(NodeFunction f);

/// A node function together with the per-node statistics its evaluation
/// needs (time means, envelopes, phases). Built by the factory helpers;
/// dimensions are validated against the signal at evaluation time.
struct NodeFunctionSpec {
  NodeFunction kind = NodeFunction::pair_average;
  Eigen::VectorXd node_means;      // instantaneous_correlation
  Eigen::VectorXd envelope_means;  // envelope_instantaneous_correlation
  Eigen::MatrixXd envelopes;       // envelope variants (n x p)
  Eigen::MatrixXd phases;          // phase_sign (n x p)

  static NodeFunctionSpec squared_difference();
  static NodeFunctionSpec pair_average();
  /// Means over the given samples of the signal (the graph epoch).
  static NodeFunctionSpec instantaneous_correlation(const MultivariateSignal& signal,
                                                    Eigen::Index first, Eigen::Index count);
  static NodeFunctionSpec instantaneous_correlation(const MultivariateSignal& signal);
  static NodeFunctionSpec envelope_squared_difference(Eigen::MatrixXd envelopes);
  /// Envelope means computed over [mean_first, mean_first + mean_count).
  static NodeFunctionSpec envelope_instantaneous_correlation(Eigen::MatrixXd envelopes,
                                                             Eigen::Index mean_first,
                                                             Eigen::Index mean_count);
  static NodeFunctionSpec phase_sign(Eigen::MatrixXd phases);
};

/// p slices of n x n instantaneous network matrices (J or Delta).
/// Stored slice-major; every slice has a zero diagonal.
class InstantaneousNetworkTensor {
 public:
  InstantaneousNetworkTensor() = default;
  explicit InstantaneousNetworkTensor(std::vector<Eigen::MatrixXd> slices);

  const std::vector<Eigen::MatrixXd>& slices() const { return slices_; }
  const Eigen::MatrixXd& slice(Eigen::Index t) const { return slices_.at(t); }
  Eigen::Index nodes() const { return slices_.empty() ? 0 : slices_.front().rows(); }
  Eigen::Index samples() const { return static_cast<Eigen::Index>(slices_.size()); }

 private:
  std::vector<Eigen::MatrixXd> slices_;
};

/// Callback receiving one slice at a time; the matrix reference is only
/// valid during the call (the buffer is reused).
using SliceVisitor = std::function<void(Eigen::Index t, const Eigen::MatrixXd& slice)>;

/// Evaluates J_ijt = F(x_i(t), x_j(t)) into one reusable buffer per sample.
void for_each_node_function_slice(const MultivariateSignal& signal, const NodeFunctionSpec& spec,
                                  const SliceVisitor& visit);

/// Same, with the graph weighting applied: Delta_(t) = W o J_(t).
void for_each_weighted_slice(const WeightedGraph& graph, const MultivariateSignal& signal,
                             const NodeFunctionSpec& spec, const SliceVisitor& visit);

/// Materialized J tensor.
InstantaneousNetworkTensor node_function_tensor(const MultivariateSignal& signal,
                                                const NodeFunctionSpec& spec);

/// Per-column normalization over the node dimension: each column gets mean 0
/// and sample standard deviation 1 (n-1 denominator); constant columns map
/// to all zeros.
MultivariateSignal node_normalize(const MultivariateSignal& signal);

/// Delta_(t) = W o J_(t), elementwise per slice.
InstantaneousNetworkTensor graph_weighted_tensor(const WeightedGraph& graph,
                                                 const InstantaneousNetworkTensor& j);

/// Signal product A <> B per its definition: out(i,t) = sum_j A_ij B_jit,
/// the dot product of row i of A with column i of B_(t).
Eigen::MatrixXd signal_product(const WeightedGraph& graph, const InstantaneousNetworkTensor& j);

/// Row-sum companion of the signal product: out(i,t) = sum_j w_ij J_ijt,
/// the row sums of W o J_(t). Equal to signal_product for symmetric J,
/// negated for antisymmetric J.
Eigen::MatrixXd weighted_row_sums(const WeightedGraph& graph, const InstantaneousNetworkTensor& j);

/// Per-sample local clustering coefficient: out(i,t) = (Delta_(t)^3)_ii.
Eigen::MatrixXd local_clustering(const InstantaneousNetworkTensor& delta);

/// Streaming variant over weighted slices built on the fly.
Eigen::MatrixXd local_clustering(const WeightedGraph& graph, const MultivariateSignal& signal,
                                 const NodeFunctionSpec& spec);

/// Dirichlet energy 0.5 * sum_ij w_ij (x_i - x_j)^2 == x' (D - W) x.
double dirichlet_energy(const WeightedGraph& graph, const Eigen::VectorXd& column);

/// Checks the matrix-multiplication equivalence for linear node functions
/// F = a_ij x_i + a_ji x_j: the transformed matrix with diagonal
/// sum_j a_ij w_ij and off-diagonal a_ji w_ij applied to X must equal the
/// signal product W <> J. True iff the two sides agree within 1e-9.
bool proposition1_equivalence_check(const WeightedGraph& graph, const MultivariateSignal& signal,
                                    const Eigen::MatrixXd& coefficients);

}  // namespace gvsa

#endif
