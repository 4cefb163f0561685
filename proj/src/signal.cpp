#include "gvsa/signal.hpp"

#include <cmath>

#include "gvsa/errors.hpp"

namespace gvsa {

MultivariateSignal::MultivariateSignal(Eigen::MatrixXd data, double sample_rate,
                                       std::vector<std::string> node_labels)
    : data_(std::move(data)), sample_rate_(sample_rate), node_labels_(std::move(node_labels)) {
  if (data_.rows() < 2 || data_.cols() < 2) {
    throw ConfigError("MultivariateSignal: need at least 2 nodes and 2 samples");
  }
  if (!(sample_rate_ > 0.0) || !std::isfinite(sample_rate_)) {
    throw ConfigError("MultivariateSignal: sample rate must be positive and finite");
  }
  if (!data_.allFinite()) {
    throw NumericError("MultivariateSignal: non-finite entries");
  }
  if (!node_labels_.empty() && static_cast<Eigen::Index>(node_labels_.size()) != data_.rows()) {
    throw ConfigError("MultivariateSignal: label count does not match node count");
  }
}

MultivariateSignal MultivariateSignal::slice_samples(Eigen::Index first, Eigen::Index count) const {
  if (first < 0 || count < 2 || first + count > samples()) {
    throw ConfigError("MultivariateSignal: sample range out of bounds");
  }
  return MultivariateSignal(data_.middleCols(first, count), sample_rate_, node_labels_);
}

const char* to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::generic: return "generic";
    case GraphKind::correlation: return "correlation";
    case GraphKind::coherence: return "coherence";
    case GraphKind::pli: return "pli";
    case GraphKind::spatial: return "spatial";
  }
  return "unknown";
}

WeightedGraph::WeightedGraph(Eigen::MatrixXd weights, GraphKind kind)
    : weights_(std::move(weights)), kind_(kind) {
  if (weights_.rows() != weights_.cols() || weights_.rows() < 2) {
    throw ConfigError("WeightedGraph: weights must be square, n >= 2");
  }
  if (!weights_.allFinite()) {
    throw NumericError("WeightedGraph: non-finite weights");
  }
  const double scale = std::max(1.0, weights_.cwiseAbs().maxCoeff());
  constexpr double kSymTol = 1e-9;
  for (Eigen::Index i = 0; i < weights_.rows(); ++i) {
    if (weights_(i, i) != 0.0) {
      throw ConfigError("WeightedGraph: diagonal must be zero");
    }
    for (Eigen::Index j = i + 1; j < weights_.cols(); ++j) {
      if (std::fabs(weights_(i, j) - weights_(j, i)) > kSymTol * scale) {
        throw ConfigError("WeightedGraph: weights must be symmetric");
      }
    }
  }
  double lo = 0.0, hi = 0.0;
  bool bounded = false;
  if (kind_ == GraphKind::coherence || kind_ == GraphKind::pli) {
    lo = 0.0; hi = 1.0; bounded = true;
  } else if (kind_ == GraphKind::correlation) {
    lo = -1.0; hi = 1.0; bounded = true;
  }
  if (bounded) {
    constexpr double kRangeTol = 1e-9;
    if (weights_.minCoeff() < lo - kRangeTol || weights_.maxCoeff() > hi + kRangeTol) {
      throw ConfigError("WeightedGraph: weights out of range for kind");
    }
    weights_ = weights_.cwiseMax(lo).cwiseMin(hi);
    weights_.diagonal().setZero();
  }
}

GraphVariateSignal::GraphVariateSignal(MultivariateSignal s, WeightedGraph g)
    : signal(std::move(s)), graph(std::move(g)) {
  if (graph.nodes() != signal.nodes()) {
    throw ConfigError("GraphVariateSignal: graph and signal node counts differ");
  }
}

}  // namespace gvsa
