#include <doctest.h>

#include <cmath>
#include <vector>

#include "gvsa/rng.hpp"
#include "gvsa/stats.hpp"

using namespace gvsa;

namespace {

// Survival-based two-sided p of the t distribution by Simpson integration of
// the density -- an oracle independent of the incomplete-beta route.
double t_two_sided_p_by_quadrature(double t, double dof) {
  const double norm = std::exp(std::lgamma((dof + 1.0) / 2.0) - std::lgamma(dof / 2.0)) /
                      std::sqrt(dof * M_PI);
  auto density = [&](double x) {
    return norm * std::pow(1.0 + x * x / dof, -(dof + 1.0) / 2.0);
  };
  const double a = std::fabs(t), b = 200.0;
  const int steps = 200000;
  const double h = (b - a) / steps;
  double acc = density(a) + density(b);
  for (int k = 1; k < steps; ++k) {
    acc += density(a + k * h) * (k % 2 ? 4.0 : 2.0);
  }
  return 2.0 * acc * h / 3.0;
}

}  // namespace

TEST_CASE("pairwise_sum matches long-double accumulation") {
  Rng rng(5);
  std::vector<double> v(100001);
  long double acc = 0.0L;
  for (double& x : v) {
    x = rng.gauss() * 1e3;
    acc += x;
  }
  const double expected = static_cast<double>(acc);
  CHECK(pairwise_sum(v) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
  CHECK(pairwise_sum(std::vector<double>{3.5}) == 3.5);
}

TEST_CASE("mean and sample variance") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  CHECK(mean(v) == doctest::Approx(2.5));
  CHECK(sample_variance(v) == doctest::Approx(5.0 / 3.0));
}

TEST_CASE("regularized incomplete beta basics") {
  CHECK(regularized_incomplete_beta(2.0, 2.0, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(regularized_incomplete_beta(1.0, 1.0, 0.3) == doctest::Approx(0.3).epsilon(1e-12));
  // I_x(1, b) = 1 - (1-x)^b
  CHECK(regularized_incomplete_beta(1.0, 3.0, 0.2) ==
        doctest::Approx(1.0 - std::pow(0.8, 3)).epsilon(1e-12));
  CHECK(regularized_incomplete_beta(2.5, 1.5, 0.0) == 0.0);
  CHECK(regularized_incomplete_beta(2.5, 1.5, 1.0) == 1.0);
}

TEST_CASE("t-test two-sided p matches quadrature oracle") {
  // n=10 -> 9 dof; the 5% two-sided critical value.
  std::vector<double> v(10);
  // Build data with mean m and spread s such that t = 2.262:
  // t = m / (s/sqrt(n)). Use unit-variance fixed pattern.
  const double base[10] = {-1.5, -1.0, -0.5, -0.25, 0.0, 0.0, 0.25, 0.5, 1.0, 1.5};
  double var = 0.0;
  for (double b : base) var += b * b;
  var /= 9.0;
  const double target_t = 2.262;
  const double shift = target_t * std::sqrt(var / 10.0);
  for (int i = 0; i < 10; ++i) v[i] = base[i] + shift;
  const TTestResult r = one_sample_ttest(v);
  CHECK(!r.degenerate);
  CHECK(r.dof == doctest::Approx(9.0));
  CHECK(r.statistic == doctest::Approx(target_t).epsilon(1e-9));
  CHECK(r.p_value == doctest::Approx(t_two_sided_p_by_quadrature(target_t, 9.0)).epsilon(1e-6));
  CHECK(std::fabs(r.p_value - 0.05) < 1e-3);
}

TEST_CASE("t = 0 gives p = 1 exactly") {
  const std::vector<double> v{-2.0, -1.0, 1.0, 2.0};
  const TTestResult r = one_sample_ttest(v);
  CHECK(r.statistic == 0.0);
  CHECK(r.p_value == 1.0);
}

TEST_CASE("degenerate tests are flagged") {
  const std::vector<double> c{1.0, 1.0, 1.0};
  CHECK(one_sample_ttest(c).degenerate);
  const std::vector<double> a{0.3, 1.2, -0.7, 2.2};
  CHECK(paired_ttest(a, a).degenerate);
}

TEST_CASE("paired t-test equals one-sample test on differences") {
  const std::vector<double> a{1.0, 2.5, 0.5, 3.0, 1.5};
  const std::vector<double> b{0.5, 2.0, 1.5, 1.0, 0.5};
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  const TTestResult p = paired_ttest(a, b);
  const TTestResult o = one_sample_ttest(d);
  CHECK(p.statistic == doctest::Approx(o.statistic));
  CHECK(p.p_value == doctest::Approx(o.p_value));
}

TEST_CASE("exact sign test") {
  CHECK(sign_test_p(5, 5) == doctest::Approx(2.0 / 32.0).epsilon(1e-12));
  CHECK(sign_test_p(0, 5) == doctest::Approx(2.0 / 32.0).epsilon(1e-12));
  CHECK(sign_test_p(3, 5) == doctest::Approx(1.0).epsilon(1e-12));
  // Binomial(10, 1/2): P(X >= 9) = 11/1024, two-sided.
  CHECK(sign_test_p(9, 10) == doctest::Approx(22.0 / 1024.0).epsilon(1e-12));
}

TEST_CASE("KS distance against uniform") {
  std::vector<double> grid(1000);
  for (int i = 0; i < 1000; ++i) grid[i] = (i + 0.5) / 1000.0;
  CHECK(ks_distance_uniform(grid) < 0.002);
  std::vector<double> clumped(1000, 0.2);
  CHECK(ks_distance_uniform(clumped) > 0.5);
}
