#ifndef GVSA_SIGNAL_HPP
#define GVSA_SIGNAL_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace gvsa {

/// n univariate signals by p samples, with sampling-rate metadata.
/// Entries are validated finite at construction; n >= 2, p >= 2.
class MultivariateSignal {
 public:
  MultivariateSignal(Eigen::MatrixXd data, double sample_rate,
                     std::vector<std::string> node_labels = {});

  const Eigen::MatrixXd& data() const { return data_; }
  double sample_rate() const { return sample_rate_; }
  const std::vector<std::string>& node_labels() const { return node_labels_; }

  Eigen::Index nodes() const { return data_.rows(); }
  Eigen::Index samples() const { return data_.cols(); }

  /// Copy of the sample range [first, first + count).
  MultivariateSignal slice_samples(Eigen::Index first, Eigen::Index count) const;

 private:
  Eigen::MatrixXd data_;
  double sample_rate_;
  std::vector<std::string> node_labels_;
};

enum class GraphKind { generic, correlation, coherence, pli, spatial };

const char* to_string(GraphKind kind);

/// Symmetric weighted adjacency matrix with zero diagonal.
/// Entry ranges are validated per kind: [0,1] for coherence/pli,
/// [-1,1] for correlation.
class WeightedGraph {
 public:
  WeightedGraph(Eigen::MatrixXd weights, GraphKind kind);

  const Eigen::MatrixXd& weights() const { return weights_; }
  GraphKind kind() const { return kind_; }
  Eigen::Index nodes() const { return weights_.rows(); }

  /// Degree vector: row sums of the weights.
  Eigen::VectorXd degrees() const { return weights_.rowwise().sum(); }

 private:
  Eigen::MatrixXd weights_;
  GraphKind kind_;
};

/// The pair (X, W) with matching node dimension.
struct GraphVariateSignal {
  GraphVariateSignal(MultivariateSignal s, WeightedGraph g);

  MultivariateSignal signal;
  WeightedGraph graph;
};

}  // namespace gvsa

#endif
