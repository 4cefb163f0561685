#include "gvsa/tensor.hpp"

#include <cmath>

#include "gvsa/errors.hpp"
#include "gvsa/stats.hpp"

namespace gvsa {

const char* to_string(NodeFunction f) {
  switch (f) {
    case NodeFunction::squared_difference: return "sqd";
    case NodeFunction::instantaneous_correlation: return "ico";
    case NodeFunction::envelope_squared_difference: return "env_sqd";
    case NodeFunction::envelope_instantaneous_correlation: return "env_ico";
    case NodeFunction::phase_sign: return "phase_sign";
    case NodeFunction::pair_average: return "pair_average";
  }
  return "unknown";
}

bool is_symmetric(NodeFunction f) { return f != NodeFunction::phase_sign; }

NodeFunctionSpec NodeFunctionSpec::squared_difference() {
  return NodeFunctionSpec{NodeFunction::squared_difference, {}, {}, {}, {}};
}

NodeFunctionSpec NodeFunctionSpec::pair_average() {
  return NodeFunctionSpec{NodeFunction::pair_average, {}, {}, {}, {}};
}

NodeFunctionSpec NodeFunctionSpec::instantaneous_correlation(const MultivariateSignal& signal,
                                                             Eigen::Index first,
                                                             Eigen::Index count) {
  if (first < 0 || count < 1 || first + count > signal.samples()) {
    throw ConfigError("instantaneous_correlation: epoch out of bounds");
  }
  NodeFunctionSpec spec;
  spec.kind = NodeFunction::instantaneous_correlation;
  spec.node_means = signal.data().middleCols(first, count).rowwise().mean();
  return spec;
}

NodeFunctionSpec NodeFunctionSpec::instantaneous_correlation(const MultivariateSignal& signal) {
  return instantaneous_correlation(signal, 0, signal.samples());
}

NodeFunctionSpec NodeFunctionSpec::envelope_squared_difference(Eigen::MatrixXd envelopes) {
  NodeFunctionSpec spec;
  spec.kind = NodeFunction::envelope_squared_difference;
  spec.envelopes = std::move(envelopes);
  return spec;
}

NodeFunctionSpec NodeFunctionSpec::envelope_instantaneous_correlation(Eigen::MatrixXd envelopes,
                                                                      Eigen::Index mean_first,
                                                                      Eigen::Index mean_count) {
  if (mean_first < 0 || mean_count < 1 || mean_first + mean_count > envelopes.cols()) {
    throw ConfigError("envelope_instantaneous_correlation: mean range out of bounds");
  }
  NodeFunctionSpec spec;
  spec.kind = NodeFunction::envelope_instantaneous_correlation;
  spec.envelope_means = envelopes.middleCols(mean_first, mean_count).rowwise().mean();
  spec.envelopes = std::move(envelopes);
  return spec;
}

NodeFunctionSpec NodeFunctionSpec::phase_sign(Eigen::MatrixXd phases) {
  NodeFunctionSpec spec;
  spec.kind = NodeFunction::phase_sign;
  spec.phases = std::move(phases);
  return spec;
}

InstantaneousNetworkTensor::InstantaneousNetworkTensor(std::vector<Eigen::MatrixXd> slices)
    : slices_(std::move(slices)) {
  for (const auto& s : slices_) {
    if (s.rows() != s.cols() || (!slices_.empty() && s.rows() != slices_.front().rows())) {
      throw ConfigError("InstantaneousNetworkTensor: slices must be square and uniform");
    }
    if (s.diagonal().cwiseAbs().maxCoeff() != 0.0) {
      throw ConfigError("InstantaneousNetworkTensor: slices must have zero diagonal");
    }
  }
}

namespace {

void validate_spec(const MultivariateSignal& signal, const NodeFunctionSpec& spec) {
  const Eigen::Index n = signal.nodes();
  const Eigen::Index p = signal.samples();
  switch (spec.kind) {
    case NodeFunction::instantaneous_correlation:
      if (spec.node_means.size() != n) {
        throw ConfigError("node function: node means missing or wrong length");
      }
      break;
    case NodeFunction::envelope_squared_difference:
      if (spec.envelopes.rows() != n || spec.envelopes.cols() != p) {
        throw ConfigError("node function: envelopes missing or wrong shape");
      }
      break;
    case NodeFunction::envelope_instantaneous_correlation:
      if (spec.envelopes.rows() != n || spec.envelopes.cols() != p) {
        throw ConfigError("node function: envelopes missing or wrong shape");
      }
      if (spec.envelope_means.size() != n) {
        throw ConfigError("node function: envelope means missing or wrong length");
      }
      break;
    case NodeFunction::phase_sign:
      if (spec.phases.rows() != n || spec.phases.cols() != p) {
        throw ConfigError("node function: phases missing or wrong shape");
      }
      break;
    default:
      break;
  }
}

inline double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// Fills `slice` with F(x_i(t), x_j(t)); `col` is the relevant column source
// (already normalized for squared_difference).
void fill_slice(Eigen::MatrixXd& slice, const NodeFunctionSpec& spec,
                const Eigen::MatrixXd& source, const Eigen::VectorXd& means, Eigen::Index t) {
  const Eigen::Index n = slice.rows();
  switch (spec.kind) {
    case NodeFunction::squared_difference:
    case NodeFunction::envelope_squared_difference: {
      const auto col = source.col(t);
      for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
          const double d = col(i) - col(j);
          slice(i, j) = d * d;
        }
      }
      break;
    }
    case NodeFunction::instantaneous_correlation:
    case NodeFunction::envelope_instantaneous_correlation: {
      Eigen::VectorXd dev = (source.col(t) - means).cwiseAbs();
      for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
          slice(i, j) = dev(i) * dev(j);
        }
      }
      break;
    }
    case NodeFunction::phase_sign: {
      const auto col = source.col(t);
      for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
          slice(i, j) = sgn(col(i) - col(j));
        }
      }
      break;
    }
    case NodeFunction::pair_average: {
      const auto col = source.col(t);
      for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
          slice(i, j) = 0.5 * (col(i) + col(j));
        }
      }
      break;
    }
  }
  slice.diagonal().setZero();
}

}  // namespace

void for_each_node_function_slice(const MultivariateSignal& signal, const NodeFunctionSpec& spec,
                                  const SliceVisitor& visit) {
  validate_spec(signal, spec);
  const Eigen::Index n = signal.nodes();
  const Eigen::Index p = signal.samples();

  const Eigen::MatrixXd* source = &signal.data();
  Eigen::MatrixXd normalized;
  Eigen::VectorXd means;
  switch (spec.kind) {
    case NodeFunction::squared_difference:
      normalized = node_normalize(signal).data();
      source = &normalized;
      break;
    case NodeFunction::instantaneous_correlation:
      means = spec.node_means;
      break;
    case NodeFunction::envelope_squared_difference:
      source = &spec.envelopes;
      break;
    case NodeFunction::envelope_instantaneous_correlation:
      source = &spec.envelopes;
      means = spec.envelope_means;
      break;
    case NodeFunction::phase_sign:
      source = &spec.phases;
      break;
    case NodeFunction::pair_average:
      break;
  }

  Eigen::MatrixXd slice(n, n);
  for (Eigen::Index t = 0; t < p; ++t) {
    fill_slice(slice, spec, *source, means, t);
    visit(t, slice);
  }
}

void for_each_weighted_slice(const WeightedGraph& graph, const MultivariateSignal& signal,
                             const NodeFunctionSpec& spec, const SliceVisitor& visit) {
  if (graph.nodes() != signal.nodes()) {
    throw ConfigError("for_each_weighted_slice: node dimension mismatch");
  }
  Eigen::MatrixXd weighted(graph.nodes(), graph.nodes());
  for_each_node_function_slice(signal, spec, [&](Eigen::Index t, const Eigen::MatrixXd& j) {
    weighted = graph.weights().cwiseProduct(j);
    visit(t, weighted);
  });
}

InstantaneousNetworkTensor node_function_tensor(const MultivariateSignal& signal,
                                                const NodeFunctionSpec& spec) {
  std::vector<Eigen::MatrixXd> slices;
  slices.reserve(signal.samples());
  for_each_node_function_slice(signal, spec, [&](Eigen::Index, const Eigen::MatrixXd& s) {
    slices.push_back(s);
  });
  return InstantaneousNetworkTensor(std::move(slices));
}

MultivariateSignal node_normalize(const MultivariateSignal& signal) {
  const Eigen::Index n = signal.nodes();
  Eigen::MatrixXd out = signal.data();
  for (Eigen::Index t = 0; t < out.cols(); ++t) {
    auto col = out.col(t);
    const double m = col.mean();
    col.array() -= m;
    const double sd = std::sqrt(col.squaredNorm() / static_cast<double>(n - 1));
    const double scale = std::max(1.0, signal.data().col(t).cwiseAbs().maxCoeff());
    if (sd <= 1e-14 * scale) {
      col.setZero();  // flat instant carries no shape information
    } else {
      col /= sd;
    }
  }
  return MultivariateSignal(std::move(out), signal.sample_rate(), signal.node_labels());
}

InstantaneousNetworkTensor graph_weighted_tensor(const WeightedGraph& graph,
                                                 const InstantaneousNetworkTensor& j) {
  if (graph.nodes() != j.nodes()) {
    throw ConfigError("graph_weighted_tensor: node dimension mismatch");
  }
  std::vector<Eigen::MatrixXd> slices;
  slices.reserve(j.samples());
  for (const auto& s : j.slices()) {
    slices.push_back(graph.weights().cwiseProduct(s));
  }
  return InstantaneousNetworkTensor(std::move(slices));
}

Eigen::MatrixXd signal_product(const WeightedGraph& graph, const InstantaneousNetworkTensor& j) {
  if (graph.nodes() != j.nodes()) {
    throw ConfigError("signal_product: node dimension mismatch");
  }
  const Eigen::Index n = j.nodes();
  const Eigen::Index p = j.samples();
  Eigen::MatrixXd out(n, p);
  for (Eigen::Index t = 0; t < p; ++t) {
    // row i of W dotted with column i of J_(t)
    out.col(t) = graph.weights().cwiseProduct(j.slice(t).transpose()).rowwise().sum();
  }
  return out;
}

Eigen::MatrixXd weighted_row_sums(const WeightedGraph& graph,
                                  const InstantaneousNetworkTensor& j) {
  if (graph.nodes() != j.nodes()) {
    throw ConfigError("weighted_row_sums: node dimension mismatch");
  }
  const Eigen::Index n = j.nodes();
  const Eigen::Index p = j.samples();
  Eigen::MatrixXd out(n, p);
  for (Eigen::Index t = 0; t < p; ++t) {
    out.col(t) = graph.weights().cwiseProduct(j.slice(t)).rowwise().sum();
  }
  return out;
}

namespace {

Eigen::VectorXd clustering_of_slice(const Eigen::MatrixXd& s) {
  // diag(S^3)_i = sum_j (S^2)_ij S_ji
  Eigen::MatrixXd sq = s * s;
  return sq.cwiseProduct(s.transpose()).rowwise().sum();
}

}  // namespace

Eigen::MatrixXd local_clustering(const InstantaneousNetworkTensor& delta) {
  const Eigen::Index n = delta.nodes();
  const Eigen::Index p = delta.samples();
  Eigen::MatrixXd out(n, p);
  for (Eigen::Index t = 0; t < p; ++t) {
    out.col(t) = clustering_of_slice(delta.slice(t));
  }
  return out;
}

Eigen::MatrixXd local_clustering(const WeightedGraph& graph, const MultivariateSignal& signal,
                                 const NodeFunctionSpec& spec) {
  Eigen::MatrixXd out(signal.nodes(), signal.samples());
  for_each_weighted_slice(graph, signal, spec, [&](Eigen::Index t, const Eigen::MatrixXd& d) {
    out.col(t) = clustering_of_slice(d);
  });
  return out;
}

double dirichlet_energy(const WeightedGraph& graph, const Eigen::VectorXd& column) {
  const Eigen::Index n = graph.nodes();
  if (column.size() != n) {
    throw ConfigError("dirichlet_energy: dimension mismatch");
  }
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d = column(i) - column(j);
      terms.push_back(graph.weights()(i, j) * d * d);
    }
  }
  // 0.5 * sum over ordered pairs == sum over unordered pairs
  return pairwise_sum(terms);
}

bool proposition1_equivalence_check(const WeightedGraph& graph, const MultivariateSignal& signal,
                                    const Eigen::MatrixXd& coefficients) {
  const Eigen::Index n = signal.nodes();
  if (graph.nodes() != n || coefficients.rows() != n || coefficients.cols() != n) {
    throw ConfigError("proposition1_equivalence_check: dimension mismatch");
  }
  const Eigen::MatrixXd& w = graph.weights();
  const Eigen::MatrixXd& a = coefficients;
  const Eigen::MatrixXd& x = signal.data();
  const Eigen::Index p = signal.samples();

  // Transformed matrix: diagonal sum_j a_ij w_ij, off-diagonal a_ji w_ij.
  Eigen::MatrixXd transformed = a.transpose().cwiseProduct(w);
  transformed.diagonal() = a.cwiseProduct(w).rowwise().sum();
  Eigen::MatrixXd lhs = transformed * x;

  // W <> J with J_ijt = a_ij x_i(t) + a_ji x_j(t):
  // (W <> J)_it = sum_j w_ij J_jit = sum_j w_ij (a_ji x_j + a_ij x_i).
  Eigen::MatrixXd rhs(n, p);
  for (Eigen::Index t = 0; t < p; ++t) {
    for (Eigen::Index i = 0; i < n; ++i) {
      double acc = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        acc += w(i, j) * (a(j, i) * x(j, t) + a(i, j) * x(i, t));
      }
      rhs(i, t) = acc;
    }
  }
  return (lhs - rhs).cwiseAbs().maxCoeff() <= 1e-9;
}

}  // namespace gvsa
