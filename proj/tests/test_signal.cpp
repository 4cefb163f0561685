#include <doctest.h>

#include <Eigen/Dense>

#include "gvsa/errors.hpp"
#include "gvsa/signal.hpp"

using namespace gvsa;
using Eigen::MatrixXd;

TEST_CASE("signal validation") {
  CHECK_THROWS_AS(MultivariateSignal(MatrixXd::Zero(1, 5), 1.0), ConfigError);
  CHECK_THROWS_AS(MultivariateSignal(MatrixXd::Zero(3, 1), 1.0), ConfigError);
  CHECK_THROWS_AS(MultivariateSignal(MatrixXd::Zero(3, 5), 0.0), ConfigError);
  MatrixXd bad = MatrixXd::Zero(3, 5);
  bad(1, 2) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(MultivariateSignal(bad, 1.0), NumericError);
  CHECK_THROWS_AS(MultivariateSignal(MatrixXd::Zero(3, 5), 1.0, {"a", "b"}), ConfigError);

  const MultivariateSignal s(MatrixXd::Random(3, 10), 250.0, {"a", "b", "c"});
  CHECK(s.nodes() == 3);
  CHECK(s.samples() == 10);
  CHECK(s.sample_rate() == 250.0);
  const MultivariateSignal sub = s.slice_samples(2, 5);
  CHECK(sub.samples() == 5);
  CHECK(sub.data() == s.data().middleCols(2, 5));
  CHECK_THROWS_AS(s.slice_samples(8, 5), ConfigError);
}

TEST_CASE("graph validation") {
  MatrixXd w(3, 3);
  w << 0, 0.5, 0.2, 0.5, 0, 0.9, 0.2, 0.9, 0;

  const WeightedGraph g(w, GraphKind::correlation);
  CHECK(g.nodes() == 3);
  CHECK(g.degrees()(0) == doctest::Approx(0.7));

  MatrixXd diag = w;
  diag(1, 1) = 0.1;
  CHECK_THROWS_AS(WeightedGraph(diag, GraphKind::generic), ConfigError);

  MatrixXd asym = w;
  asym(0, 1) = 0.6;
  CHECK_THROWS_AS(WeightedGraph(asym, GraphKind::generic), ConfigError);

  MatrixXd range = w;
  range(0, 1) = range(1, 0) = 1.5;
  CHECK_THROWS_AS(WeightedGraph(range, GraphKind::correlation), ConfigError);
  CHECK_NOTHROW(WeightedGraph(range, GraphKind::generic));

  MatrixXd neg = w;
  neg(0, 1) = neg(1, 0) = -0.5;
  CHECK_NOTHROW(WeightedGraph(neg, GraphKind::correlation));
  CHECK_THROWS_AS(WeightedGraph(neg, GraphKind::coherence), ConfigError);

  CHECK_THROWS_AS(WeightedGraph(MatrixXd::Zero(3, 4), GraphKind::generic), ConfigError);
}

TEST_CASE("graph-variate signal pairs check dimensions") {
  const MultivariateSignal s(MatrixXd::Random(3, 10), 1.0);
  const WeightedGraph g(MatrixXd::Zero(4, 4), GraphKind::generic);
  CHECK_THROWS_AS(GraphVariateSignal(s, g), ConfigError);
}
