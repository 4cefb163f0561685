#ifndef GVSA_STATS_HPP
#define GVSA_STATS_HPP

#include <span>
#include <vector>

namespace gvsa {

/// Pairwise (cascade) summation. Used for long accumulations so that
/// p ~ 1e4 length reductions keep full double accuracy.
double pairwise_sum(std::span<const double> values);

double mean(std::span<const double> values);

/// Unbiased sample variance (n-1 denominator). Requires at least 2 values.
double sample_variance(std::span<const double> values);

/// Regularized incomplete beta function I_x(a, b), continued-fraction form.
double regularized_incomplete_beta(double a, double b, double x);

/// Outcome of a one-sample (or paired) t-test.
struct TTestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  double dof = 0.0;
  double mean = 0.0;
  bool degenerate = false;  ///< zero sample variance: statistic undefined
};

/// Two-sided one-sample t-test for mean zero.
TTestResult one_sample_ttest(std::span<const double> values);

/// Paired two-sided t-test: one-sample test on the differences a - b.
TTestResult paired_ttest(std::span<const double> a, std::span<const double> b);

/// Two-sided p of the exact sign test: `wins` successes out of `trials`
/// under Binomial(trials, 1/2). Ties must be excluded by the caller.
double sign_test_p(int wins, int trials);

/// Kolmogorov-Smirnov distance between the sample and the uniform [0,1] law.
double ks_distance_uniform(std::vector<double> sample);

}  // namespace gvsa

#endif
