#include "gvsa/gsp.hpp"

#include <Eigen/Eigenvalues>

#include "gvsa/errors.hpp"

namespace gvsa {

const char* to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::adjacency_selfloops: return "adjacency_selfloops";
    case OperatorKind::laplacian: return "laplacian";
    case OperatorKind::adjacency_cubed: return "adjacency_cubed";
    case OperatorKind::laplacian_cubed: return "laplacian_cubed";
    case OperatorKind::heat_kernel: return "heat_kernel";
  }
  return "unknown";
}

Eigen::MatrixXd laplacian(const WeightedGraph& graph) {
  Eigen::MatrixXd l = -graph.weights();
  l.diagonal() += graph.degrees();
  return l;
}

GraphOperator build_operator(const WeightedGraph& graph, OperatorKind kind, double tau) {
  const Eigen::Index n = graph.nodes();
  GraphOperator op;
  op.kind = kind;
  op.tau = tau;
  switch (kind) {
    case OperatorKind::adjacency_selfloops:
      op.matrix = graph.weights();
      op.matrix.diagonal().array() += 1.0;
      break;
    case OperatorKind::adjacency_cubed: {
      Eigen::MatrixXd w_hat = graph.weights();
      w_hat.diagonal().array() += 1.0;
      op.matrix = w_hat * w_hat * w_hat;
      break;
    }
    case OperatorKind::laplacian:
      op.matrix = laplacian(graph);
      break;
    case OperatorKind::laplacian_cubed: {
      Eigen::MatrixXd l = laplacian(graph);
      op.matrix = l * l * l;
      break;
    }
    case OperatorKind::heat_kernel: {
      if (tau < 0.0) throw ConfigError("build_operator: heat-kernel tau must be nonnegative");
      if (tau == 0.0) {
        op.matrix = Eigen::MatrixXd::Identity(n, n);
        break;
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(laplacian(graph));
      if (es.info() != Eigen::Success) {
        throw NumericError("build_operator: Laplacian eigendecomposition failed");
      }
      const Eigen::VectorXd damped = (-tau * es.eigenvalues().array()).exp();
      op.matrix = es.eigenvectors() * damped.asDiagonal() * es.eigenvectors().transpose();
      break;
    }
  }
  (void)n;
  return op;
}

Eigen::Index argmax_lowest(const Eigen::VectorXd& scores) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < scores.size(); ++i) {
    if (scores(i) > scores(best)) best = i;
  }
  return best;
}

Eigen::Index filter_and_argmax(const GraphOperator& op, const MultivariateSignal& signal,
                               Eigen::Index t) {
  if (op.matrix.cols() != signal.nodes()) {
    throw ConfigError("filter_and_argmax: node dimension mismatch");
  }
  if (t < 0 || t >= signal.samples()) {
    throw ConfigError("filter_and_argmax: sample index out of range");
  }
  return argmax_lowest(op.matrix * signal.data().col(t));
}

}  // namespace gvsa
