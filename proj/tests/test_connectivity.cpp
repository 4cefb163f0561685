#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "gvsa/connectivity.hpp"
#include "gvsa/errors.hpp"
#include "gvsa/experiments.hpp"
#include "gvsa/rng.hpp"
#include "gvsa/signal.hpp"

using namespace gvsa;
using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MultivariateSignal random_signal(Index n, Index p, std::uint64_t seed, double fs = 1.0) {
  Rng rng(seed);
  MatrixXd x(n, p);
  for (Index i = 0; i < x.size(); ++i) x.data()[i] = rng.gauss();
  return MultivariateSignal(x, fs);
}

double pearson(const VectorXd& a, const VectorXd& b) {
  const VectorXd da = a.array() - a.mean();
  const VectorXd db = b.array() - b.mean();
  return da.dot(db) / std::sqrt(da.squaredNorm() * db.squaredNorm());
}

// Three-node signal where nodes 0 and 1 share one of their two sources.
MultivariateSignal correlated_triplet(std::uint64_t seed, Index length) {
  std::vector<VectorXd> z;
  for (std::uint64_t r = 0; r < 6; ++r) {
    ArModel model;
    model.seed = derive_seed(seed, {r});
    z.push_back(ar2_generate(model, length));
  }
  MatrixXd x(3, length);
  x.row(0) = 0.5 * (z[0] + z[2]).transpose();
  x.row(1) = 0.5 * (z[2] + z[3]).transpose();
  x.row(2) = 0.5 * (z[4] + z[5]).transpose();
  return MultivariateSignal(x, 1.0);
}

}  // namespace

TEST_CASE("correlation matrix matches manual Pearson") {
  const MultivariateSignal s = random_signal(4, 60, 5);
  const WeightedGraph g = correlation_matrix(s);
  CHECK(g.kind() == GraphKind::correlation);
  for (Index i = 0; i < 4; ++i) {
    CHECK(g.weights()(i, i) == 0.0);
    for (Index j = 0; j < 4; ++j) {
      if (i == j) continue;
      const double expected =
          pearson(s.data().row(i).transpose(), s.data().row(j).transpose());
      CHECK(g.weights()(i, j) == doctest::Approx(expected).epsilon(1e-12));
    }
  }

  // A constant row carries no shape information: its pairs get weight 0.
  MatrixXd flat = s.data();
  flat.row(2).setConstant(4.0);
  const WeightedGraph gf = correlation_matrix(MultivariateSignal(flat, 1.0));
  CHECK(gf.weights().row(2).isZero(0.0));
  CHECK(gf.weights().col(2).isZero(0.0));

  // Epoch restriction only sees the requested samples.
  const WeightedGraph ge = correlation_matrix(s, SampleRange{10, 30});
  const MultivariateSignal sub = s.slice_samples(10, 30);
  const WeightedGraph gsub = correlation_matrix(sub);
  CHECK((ge.weights() - gsub.weights()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("coherence of identical signals is one") {
  Rng rng(8);
  MatrixXd x(3, 2048);
  for (Index t = 0; t < 2048; ++t) {
    x(0, t) = rng.gauss();
    x(2, t) = rng.gauss();
  }
  x.row(1) = x.row(0);
  const WeightedGraph g = coherence_matrix(MultivariateSignal(x, 128.0), FrequencyBand{4.0, 30.0});
  CHECK(g.kind() == GraphKind::coherence);
  CHECK(g.weights()(0, 1) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(g.weights()(0, 2) < 0.9);
  CHECK(g.weights()(0, 2) >= 0.0);
}

TEST_CASE("pli of a quarter-cycle lag is one") {
  const double fs = 100.0;
  const Index p = 1000;
  MatrixXd x(2, p);
  for (Index t = 0; t < p; ++t) {
    x(0, t) = std::sin(2.0 * M_PI * 5.0 * t / fs);
    x(1, t) = std::sin(2.0 * M_PI * 5.0 * t / fs - M_PI / 2.0);
  }
  const WeightedGraph g = pli_matrix(MultivariateSignal(x, fs));
  CHECK(g.kind() == GraphKind::pli);
  CHECK(g.weights()(0, 1) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("gvd equals the manual row-sum computation") {
  const MultivariateSignal s = random_signal(5, 30, 12);
  const WeightedGraph g = correlation_matrix(s);
  const NodeFunctionSpec spec = NodeFunctionSpec::instantaneous_correlation(s);
  const GvdResult r = gvd(s, g, spec);
  REQUIRE(r.node_values.rows() == 5);
  REQUIRE(r.node_values.cols() == 30);
  CHECK(r.kind == NodeFunction::instantaneous_correlation);
  CHECK(r.graph_kind == GraphKind::correlation);

  for (Index t = 0; t < 30; ++t) {
    for (Index i = 0; i < 5; ++i) {
      double acc = 0.0;
      for (Index j = 0; j < 5; ++j) {
        if (i == j) continue;
        acc += g.weights()(i, j) * std::fabs((s.data()(i, t) - spec.node_means(i)) *
                                             (s.data()(j, t) - spec.node_means(j)));
      }
      CHECK(r.node_values(i, t) == doctest::Approx(acc).epsilon(1e-10));
    }
  }
}

TEST_CASE("modular connectivity is the epoch mean of module row sums") {
  const MultivariateSignal s = random_signal(4, 20, 14);
  const WeightedGraph g = correlation_matrix(s);
  const NodeFunctionSpec spec = NodeFunctionSpec::instantaneous_correlation(s);
  const GvdResult r = gvd(s, g, spec);
  const std::vector<Index> module_nodes{0, 2};
  const double got = modular_connectivity(s, g, spec, module_nodes, SampleRange{5, 10});
  double acc = 0.0;
  for (Index t = 5; t < 15; ++t) {
    acc += r.node_values(0, t) + r.node_values(2, t);
  }
  CHECK(got == doctest::Approx(acc / 10.0).epsilon(1e-10));
}

TEST_CASE("windowed gvd drops partial windows and epochs") {
  const MultivariateSignal s = random_signal(4, 105, 16, 100.0);
  const WindowScheme scheme{40, 10, 0};
  const WindowedGvd w = windowed_gvd(s, scheme, GraphKind::correlation,
                                     NodeFunction::instantaneous_correlation);
  CHECK(w.epochs == 2);
  CHECK(w.windows_per_epoch == 4);
  CHECK(w.values.rows() == 2);
  CHECK(w.values.cols() == 4);

  // First epoch, first window cross-checked directly.
  const MultivariateSignal epoch = s.slice_samples(0, 40);
  const WeightedGraph g = correlation_matrix(epoch);
  const NodeFunctionSpec spec = NodeFunctionSpec::instantaneous_correlation(epoch);
  const double manual = modular_connectivity(epoch, g, spec, {0, 1, 2, 3}, SampleRange{0, 10});
  CHECK(w.values(0, 0) == doctest::Approx(manual).epsilon(1e-10));

  CHECK_THROWS_AS(windowed_gvd(s, scheme, GraphKind::coherence,
                               NodeFunction::instantaneous_correlation),
                  ConfigError);
}

TEST_CASE("three-node shared-source example") {
  // Correlation weights c12, c13, c23 fixed to reference values; the
  // instantaneous-correlation GVD should expose node 2 (no shared source)
  // as the weakest.
  MatrixXd w = MatrixXd::Zero(3, 3);
  w(0, 1) = w(1, 0) = 0.6934;
  w(0, 2) = w(2, 0) = -0.0576;
  w(1, 2) = w(2, 1) = 0.0943;
  const WeightedGraph g(w, GraphKind::correlation);

  const MultivariateSignal s = correlated_triplet(2024, 1000);
  const NodeFunctionSpec spec = NodeFunctionSpec::instantaneous_correlation(s);
  const GvdResult r = gvd(s, g, spec);
  const VectorXd strength = r.node_values.cwiseAbs().rowwise().mean();
  CHECK(strength(2) < strength(0));
  CHECK(strength(2) < strength(1));

  // The empirical shared-source correlation concentrates around 1/2.
  double c01 = 0.0;
  const int trials = 1000;
  for (int k = 0; k < trials; ++k) {
    const MultivariateSignal trip = correlated_triplet(5000 + k, 1000);
    c01 += pearson(trip.data().row(0).transpose(), trip.data().row(1).transpose());
  }
  c01 /= trials;
  CHECK(c01 > 0.40);
  CHECK(c01 < 0.60);
}
