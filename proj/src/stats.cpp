#include "gvsa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gvsa/errors.hpp"

namespace gvsa {

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  if (n <= 16) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double mean(std::span<const double> values) {
  if (values.empty()) throw ConfigError("mean: empty input");
  return pairwise_sum(values) / static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) throw ConfigError("sample_variance: need at least 2 values");
  const double m = mean(values);
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = values[i] - m;
    sq[i] = d * d;
  }
  return pairwise_sum(sq) / static_cast<double>(n - 1);
}

namespace {

// Continued fraction for I_x(a,b), modified Lentz algorithm.
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (a <= 0.0 || b <= 0.0) throw ConfigError("incomplete beta: a, b must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(a, b, x) / a;
  }
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

namespace {

double student_t_two_sided_p(double t, double dof) {
  if (t == 0.0) return 1.0;
  const double x = dof / (dof + t * t);
  return regularized_incomplete_beta(dof / 2.0, 0.5, x);
}

}  // namespace

TTestResult one_sample_ttest(std::span<const double> values) {
  if (values.size() < 2) throw ConfigError("one_sample_ttest: need at least 2 values");
  TTestResult r;
  const double n = static_cast<double>(values.size());
  r.mean = mean(values);
  r.dof = n - 1.0;
  const double var = sample_variance(values);
  if (var <= 0.0 || !std::isfinite(var)) {
    r.degenerate = true;
    r.statistic = std::numeric_limits<double>::quiet_NaN();
    r.p_value = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  r.statistic = r.mean / std::sqrt(var / n);
  r.p_value = student_t_two_sided_p(r.statistic, r.dof);
  return r;
}

TTestResult paired_ttest(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ConfigError("paired_ttest: length mismatch");
  std::vector<double> diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  return one_sample_ttest(diff);
}

double sign_test_p(int wins, int trials) {
  if (trials <= 0) throw ConfigError("sign_test_p: no trials");
  if (wins < 0 || wins > trials) throw ConfigError("sign_test_p: wins out of range");
  // log binomial pmf at p = 1/2, summed over both tails
  auto log_pmf = [trials](int k) {
    return std::lgamma(trials + 1.0) - std::lgamma(k + 1.0) - std::lgamma(trials - k + 1.0) -
           trials * std::log(2.0);
  };
  double lower = 0.0, upper = 0.0;
  for (int k = 0; k <= wins; ++k) lower += std::exp(log_pmf(k));
  for (int k = wins; k <= trials; ++k) upper += std::exp(log_pmf(k));
  return std::min(1.0, 2.0 * std::min(lower, upper));
}

double ks_distance_uniform(std::vector<double> sample) {
  if (sample.empty()) throw ConfigError("ks_distance_uniform: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double cdf = std::clamp(sample[i], 0.0, 1.0);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max({d, std::fabs(cdf - lo), std::fabs(hi - cdf)});
  }
  return d;
}

}  // namespace gvsa
