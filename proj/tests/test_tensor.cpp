#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "gvsa/rng.hpp"
#include "gvsa/signal.hpp"
#include "gvsa/spectral.hpp"
#include "gvsa/tensor.hpp"

using namespace gvsa;
using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MultivariateSignal random_signal(Index n, Index p, std::uint64_t seed) {
  Rng rng(seed);
  MatrixXd x(n, p);
  for (Index i = 0; i < x.size(); ++i) x.data()[i] = rng.gauss();
  return MultivariateSignal(x, 1.0);
}

WeightedGraph random_graph(Index n, std::uint64_t seed) {
  Rng rng(seed);
  MatrixXd w = MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      w(i, j) = w(j, i) = rng.uniform();
    }
  }
  return WeightedGraph(w, GraphKind::generic);
}

// Straightforward per-pair evaluation of each node function, written
// independently of the tensor machinery.
double oracle_f(NodeFunction kind, const MultivariateSignal& raw, const MultivariateSignal& norm,
                const NodeFunctionSpec& spec, Index i, Index j, Index t) {
  switch (kind) {
    case NodeFunction::squared_difference: {
      const double d = norm.data()(i, t) - norm.data()(j, t);
      return d * d;
    }
    case NodeFunction::instantaneous_correlation:
      return std::fabs((raw.data()(i, t) - spec.node_means(i)) *
                       (raw.data()(j, t) - spec.node_means(j)));
    case NodeFunction::envelope_squared_difference: {
      const double d = spec.envelopes(i, t) - spec.envelopes(j, t);
      return d * d;
    }
    case NodeFunction::envelope_instantaneous_correlation:
      return std::fabs((spec.envelopes(i, t) - spec.envelope_means(i)) *
                       (spec.envelopes(j, t) - spec.envelope_means(j)));
    case NodeFunction::phase_sign: {
      const double d = spec.phases(i, t) - spec.phases(j, t);
      return d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
    }
    case NodeFunction::pair_average:
      return 0.5 * (raw.data()(i, t) + raw.data()(j, t));
  }
  return 0.0;
}

NodeFunctionSpec build_spec(NodeFunction kind, const MultivariateSignal& raw) {
  switch (kind) {
    case NodeFunction::squared_difference:
      return NodeFunctionSpec::squared_difference();
    case NodeFunction::instantaneous_correlation:
      return NodeFunctionSpec::instantaneous_correlation(raw);
    case NodeFunction::envelope_squared_difference: {
      // Arbitrary positive surrogate envelopes keep the oracle independent
      // of the spectral pipeline.
      return NodeFunctionSpec::envelope_squared_difference(
          (raw.data().array().abs() + 0.5).matrix());
    }
    case NodeFunction::envelope_instantaneous_correlation:
      return NodeFunctionSpec::envelope_instantaneous_correlation(
          (raw.data().array().abs() + 0.5).matrix(), 0, raw.samples());
    case NodeFunction::phase_sign:
      return NodeFunctionSpec::phase_sign(raw.data() * 0.7);
    case NodeFunction::pair_average:
      return NodeFunctionSpec::pair_average();
  }
  return NodeFunctionSpec::pair_average();
}

}  // namespace

TEST_CASE("node_normalize gives zero-mean unit-sd columns") {
  const MultivariateSignal s = random_signal(6, 40, 10);
  const MultivariateSignal z = node_normalize(s);
  for (Index t = 0; t < z.samples(); ++t) {
    const VectorXd col = z.data().col(t);
    CHECK(std::fabs(col.mean()) < 1e-12);
    const double sd = std::sqrt(
        (col.array() - col.mean()).square().sum() / static_cast<double>(col.size() - 1));
    CHECK(sd == doctest::Approx(1.0).epsilon(1e-12));
  }

  MatrixXd flat(3, 4);
  flat.setConstant(2.5);
  flat.col(1) << 1.0, 2.0, 3.0;
  const MultivariateSignal zf = node_normalize(MultivariateSignal(flat, 1.0));
  CHECK(zf.data().col(0).isZero(0.0));  // constant columns map to zero
  CHECK(zf.data().col(1)(0) == doctest::Approx(-1.0));
}

TEST_CASE("node function tensor matches per-pair oracle") {
  const MultivariateSignal raw = random_signal(5, 12, 21);
  const MultivariateSignal norm = node_normalize(raw);
  for (NodeFunction kind :
       {NodeFunction::squared_difference, NodeFunction::instantaneous_correlation,
        NodeFunction::envelope_squared_difference,
        NodeFunction::envelope_instantaneous_correlation, NodeFunction::phase_sign,
        NodeFunction::pair_average}) {
    CAPTURE(to_string(kind));
    const NodeFunctionSpec spec = build_spec(kind, raw);
    const InstantaneousNetworkTensor j = node_function_tensor(raw, spec);
    REQUIRE(j.samples() == raw.samples());
    double worst = 0.0;
    for (Index t = 0; t < j.samples(); ++t) {
      for (Index i = 0; i < j.nodes(); ++i) {
        CHECK(j.slice(t)(i, i) == 0.0);
        for (Index k = 0; k < j.nodes(); ++k) {
          if (i == k) continue;
          worst = std::max(worst,
                           std::fabs(j.slice(t)(i, k) - oracle_f(kind, raw, norm, spec, i, k, t)));
        }
      }
    }
    CHECK(worst < 1e-12);
    const bool symmetric = kind != NodeFunction::phase_sign;
    CHECK(is_symmetric(kind) == symmetric);
  }
}

TEST_CASE("weighted slices and streaming agree with materialized tensors") {
  const MultivariateSignal s = random_signal(6, 15, 33);
  const WeightedGraph g = random_graph(6, 34);
  const NodeFunctionSpec spec = NodeFunctionSpec::instantaneous_correlation(s);

  const InstantaneousNetworkTensor j = node_function_tensor(s, spec);
  const InstantaneousNetworkTensor delta = graph_weighted_tensor(g, j);
  Index seen = 0;
  for_each_weighted_slice(g, s, spec, [&](Index t, const MatrixXd& slice) {
    CHECK((slice - delta.slice(t)).cwiseAbs().maxCoeff() < 1e-14);
    ++seen;
  });
  CHECK(seen == s.samples());
  for (Index t = 0; t < delta.samples(); ++t) {
    CHECK((delta.slice(t) - g.weights().cwiseProduct(j.slice(t))).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("local clustering matches explicit triple loop") {
  const MultivariateSignal s = random_signal(5, 8, 40);
  const WeightedGraph g = random_graph(5, 41);
  const NodeFunctionSpec spec = NodeFunctionSpec::pair_average();
  const InstantaneousNetworkTensor delta =
      graph_weighted_tensor(g, node_function_tensor(s, spec));

  const MatrixXd fast = local_clustering(delta);
  const MatrixXd streaming = local_clustering(g, s, spec);
  for (Index t = 0; t < delta.samples(); ++t) {
    const MatrixXd& d = delta.slice(t);
    for (Index i = 0; i < d.rows(); ++i) {
      double acc = 0.0;
      for (Index j = 0; j < d.rows(); ++j) {
        for (Index k = 0; k < d.rows(); ++k) {
          acc += d(i, j) * d(j, k) * d(k, i);
        }
      }
      CHECK(fast(i, t) == doctest::Approx(acc).epsilon(1e-10));
      CHECK(streaming(i, t) == doctest::Approx(acc).epsilon(1e-10));
    }
  }
}

TEST_CASE("weighted row sums realize the linear identities") {
  const MultivariateSignal s = random_signal(7, 20, 50);
  const WeightedGraph g = random_graph(7, 51);

  // F(x_i, x_j) = x_j: row sums give W X.
  {
    std::vector<MatrixXd> slices;
    for (Index t = 0; t < s.samples(); ++t) {
      MatrixXd m = s.data().col(t).transpose().replicate(s.nodes(), 1);
      m.diagonal().setZero();
      slices.push_back(m);
    }
    const MatrixXd out = weighted_row_sums(g, InstantaneousNetworkTensor(std::move(slices)));
    const MatrixXd expected = g.weights() * s.data();
    CHECK((out - expected).cwiseAbs().maxCoeff() < 1e-10);
  }

  // F(x_i, x_j) = x_i - x_j: row sums give (D - W) X, the graph Laplacian.
  {
    std::vector<MatrixXd> slices;
    for (Index t = 0; t < s.samples(); ++t) {
      MatrixXd m(s.nodes(), s.nodes());
      for (Index i = 0; i < s.nodes(); ++i) {
        for (Index j = 0; j < s.nodes(); ++j) {
          m(i, j) = i == j ? 0.0 : s.data()(i, t) - s.data()(j, t);
        }
      }
      slices.push_back(m);
    }
    const MatrixXd out = weighted_row_sums(g, InstantaneousNetworkTensor(std::move(slices)));
    MatrixXd laplacian = -g.weights();
    laplacian.diagonal() = g.degrees();
    const MatrixXd expected = laplacian * s.data();
    CHECK((out - expected).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("signal product vs row sums: sign flip on antisymmetric slices") {
  const MultivariateSignal s = random_signal(5, 10, 60);
  const WeightedGraph g = random_graph(5, 61);

  const InstantaneousNetworkTensor sym =
      node_function_tensor(s, NodeFunctionSpec::pair_average());
  CHECK((signal_product(g, sym) - weighted_row_sums(g, sym)).cwiseAbs().maxCoeff() < 1e-12);

  const InstantaneousNetworkTensor anti =
      node_function_tensor(s, NodeFunctionSpec::phase_sign(s.data()));
  CHECK((signal_product(g, anti) + weighted_row_sums(g, anti)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("dirichlet energy equals the Laplacian quadratic form") {
  const WeightedGraph g = random_graph(8, 70);
  Rng rng(71);
  VectorXd x(8);
  for (Index i = 0; i < 8; ++i) x(i) = rng.gauss();
  MatrixXd laplacian = -g.weights();
  laplacian.diagonal() = g.degrees();
  CHECK(dirichlet_energy(g, x) ==
        doctest::Approx(x.dot(laplacian * x)).epsilon(1e-12));
  CHECK(dirichlet_energy(g, VectorXd::Constant(8, 3.7)) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("proposition 1 equivalence holds for random linear coefficients") {
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    const MultivariateSignal s = random_signal(6, 9, 100 + trial);
    const WeightedGraph g = random_graph(6, 200 + trial);
    Rng rng(300 + trial);
    MatrixXd a(6, 6);
    for (Index i = 0; i < a.size(); ++i) a.data()[i] = rng.gauss();
    CHECK(proposition1_equivalence_check(g, s, a));
  }
}

TEST_CASE("phase sign slices sum to zero") {
  const MultivariateSignal s = random_signal(6, 10, 80);
  const InstantaneousNetworkTensor j =
      node_function_tensor(s, NodeFunctionSpec::phase_sign(s.data()));
  for (Index t = 0; t < j.samples(); ++t) {
    CHECK(j.slice(t).sum() == doctest::Approx(0.0).scale(1.0));
    CHECK((j.slice(t) + j.slice(t).transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}
