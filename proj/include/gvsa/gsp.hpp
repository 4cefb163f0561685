#ifndef GVSA_GSP_HPP
#define GVSA_GSP_HPP

#include <Eigen/Dense>

#include "gvsa/signal.hpp"

namespace gvsa {

enum class OperatorKind {
  adjacency_selfloops,  // I + W
  laplacian,            // D - W
  adjacency_cubed,      // (I + W)^3
  laplacian_cubed,      // (D - W)^3
  heat_kernel,          // exp(-tau L)
};

const char* to_string(OperatorKind kind);

/// A graph filter matrix applied to signal columns by matrix multiplication.
struct GraphOperator {
  Eigen::MatrixXd matrix;
  OperatorKind kind = OperatorKind::adjacency_selfloops;
  double tau = 1.0;  // heat-kernel scale; ignored otherwise
};

/// Graph Laplacian D - W.
Eigen::MatrixXd laplacian(const WeightedGraph& graph);

/// Builds the requested filter. The heat kernel goes through a symmetric
/// eigendecomposition, exp(-tau L) = U exp(-tau Lambda) U'.
GraphOperator build_operator(const WeightedGraph& graph, OperatorKind kind, double tau = 1.0);

/// Index of the largest entry of op.matrix * X(:,t); ties break to the
/// lowest node index.
Eigen::Index filter_and_argmax(const GraphOperator& op, const MultivariateSignal& signal,
                               Eigen::Index t);

/// Lowest-index argmax over a score vector (the shared tie-break rule).
Eigen::Index argmax_lowest(const Eigen::VectorXd& scores);

}  // namespace gvsa

#endif
