#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "gvsa/errors.hpp"
#include "gvsa/rng.hpp"
#include "gvsa/signal.hpp"
#include "gvsa/spectral.hpp"

using namespace gvsa;
using Eigen::Index;
using Eigen::MatrixXd;

namespace {

// n sinusoids with given frequencies/amplitudes/phases at sample rate fs.
MultivariateSignal tones(const std::vector<double>& freqs, const std::vector<double>& amps,
                         const std::vector<double>& phases, double fs, Index p) {
  MatrixXd x(static_cast<Index>(freqs.size()), p);
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index t = 0; t < p; ++t) {
      x(i, t) = amps[i] * std::cos(2.0 * M_PI * freqs[i] * t / fs + phases[i]);
    }
  }
  return MultivariateSignal(x, fs);
}

}  // namespace

TEST_CASE("analytic signal recovers cosine envelope and phase") {
  const double fs = 200.0;
  const Index p = 2000;
  const MultivariateSignal s = tones({10.0, 25.0}, {1.3, 0.8}, {0.4, -1.1}, fs, p);
  const AnalyticDecomposition d = analytic_signal(s);
  REQUIRE(d.unreliable_margin * 2 < p);

  for (Index i = 0; i < 2; ++i) {
    const double amp = i == 0 ? 1.3 : 0.8;
    const double f = i == 0 ? 10.0 : 25.0;
    const double ph0 = i == 0 ? 0.4 : -1.1;
    for (Index t = d.unreliable_margin; t < p - d.unreliable_margin; ++t) {
      CHECK(d.envelope(i, t) == doctest::Approx(amp).epsilon(0.01));
      const double expected = 2.0 * M_PI * f * t / fs + ph0;
      // Compare on the circle.
      const double diff = std::remainder(d.phase(i, t) - expected, 2.0 * M_PI);
      CHECK(std::fabs(diff) < 0.01 * 2.0 * M_PI);
    }
  }
}

TEST_CASE("analytic signal rejects short input, passes zero rows through") {
  CHECK_THROWS_AS(analytic_signal(MultivariateSignal(MatrixXd::Ones(2, 4), 1.0)), ConfigError);
  MatrixXd x = MatrixXd::Zero(2, 64);
  for (Index t = 0; t < 64; ++t) x(0, t) = std::cos(2.0 * M_PI * 8.0 * t / 64.0);
  const AnalyticDecomposition d = analytic_signal(MultivariateSignal(x, 64.0));
  CHECK(d.envelope.row(1).isZero(0.0));
  CHECK(d.phase.row(1).isZero(0.0));
}

TEST_CASE("bandpass keeps the in-band tone and attenuates the rest") {
  const double fs = 250.0;
  const Index p = 5000;
  Rng rng(9);
  MatrixXd x(2, p);
  for (Index t = 0; t < p; ++t) {
    // Row 0: 10 Hz target plus 40 Hz interferer; row 1: out-of-band only.
    x(0, t) = std::sin(2.0 * M_PI * 10.0 * t / fs) + 2.0 * std::sin(2.0 * M_PI * 40.0 * t / fs);
    x(1, t) = std::sin(2.0 * M_PI * 40.0 * t / fs) + 0.5 * std::sin(2.0 * M_PI * 2.0 * t / fs);
  }
  const BandpassResult r = bandpass(MultivariateSignal(x, fs), 8.0, 12.0);
  REQUIRE(r.unreliable_margin * 2 < p);
  const Index m = r.unreliable_margin;
  const Index len = p - 2 * m;

  double in_power = 0.0, ref_power = 0.0, out_power = 0.0;
  for (Index t = m; t < p - m; ++t) {
    const double target = std::sin(2.0 * M_PI * 10.0 * t / fs);
    in_power += std::pow(r.signal.data()(0, t) - target, 2);
    ref_power += target * target;
    out_power += std::pow(r.signal.data()(1, t), 2);
  }
  // Passband: the 10 Hz component survives essentially untouched.
  CHECK(in_power / ref_power < 1e-3);
  // Stopband: >= 40 dB attenuation of the out-of-band row.
  CHECK(out_power / len < 1e-4 * (0.5 + 0.125));

  CHECK_THROWS_AS(bandpass(MultivariateSignal(x, fs), 0.0, 12.0), ConfigError);
  CHECK_THROWS_AS(bandpass(MultivariateSignal(x, fs), 12.0, 8.0), ConfigError);
  CHECK_THROWS_AS(bandpass(MultivariateSignal(x, fs), 8.0, 130.0), ConfigError);
}

TEST_CASE("welch spectra: variance integration and peak location") {
  const double fs = 128.0;
  const Index p = 4096;
  Rng rng(17);
  MatrixXd x(2, p);
  for (Index t = 0; t < p; ++t) {
    x(0, t) = rng.gauss();
    x(1, t) = std::sqrt(2.0) * std::cos(2.0 * M_PI * 16.0 * t / fs);
  }
  const MultivariateSignal s(x, fs);
  const SpectralDensity sd = welch_spectra(s);

  REQUIRE(sd.frequencies.size() > 8);
  const double df = sd.frequencies(1) - sd.frequencies(0);

  // One-sided PSD integrates to the variance (white noise ~1, tone = 1).
  const double noise_int = sd.auto_spectra.row(0).sum() * df;
  CHECK(noise_int == doctest::Approx(1.0).epsilon(0.15));
  const double tone_int = sd.auto_spectra.row(1).sum() * df;
  CHECK(tone_int == doctest::Approx(1.0).epsilon(0.1));

  // The tone's peak bin sits at 16 Hz.
  Index peak = 0;
  sd.auto_spectra.row(1).maxCoeff(&peak);
  CHECK(std::fabs(sd.frequencies(peak) - 16.0) <= df);

  // cross(i,i) equals the auto spectrum; cross is conjugate-symmetric.
  for (std::size_t b = 0; b < sd.cross.size(); ++b) {
    CHECK(std::fabs(sd.cross[b](0, 0).real() - sd.auto_spectra(0, b)) < 1e-12);
    CHECK(std::fabs(sd.cross[b](0, 0).imag()) < 1e-15);
    CHECK(std::abs(sd.cross[b](0, 1) - std::conj(sd.cross[b](1, 0))) < 1e-12);
  }
}
