#ifndef GVSA_SPECTRAL_HPP
#define GVSA_SPECTRAL_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "gvsa/signal.hpp"

namespace gvsa {

/// Instantaneous amplitude and phase of the analytic representation.
/// `unreliable_margin` samples at each end are contaminated by FFT end
/// effects and should be excluded from statistics.
struct AnalyticDecomposition {
  Eigen::MatrixXd envelope;  // n x p, nonnegative
  Eigen::MatrixXd phase;     // n x p, wrapped to (-pi, pi]
  Eigen::Index unreliable_margin = 0;
};

/// Per-row discrete Hilbert transform via full-length FFT: double the
/// positive frequencies, zero the negative, keep DC and Nyquist.
/// Requires p >= 8. Zero rows yield zero envelope and zero phase.
AnalyticDecomposition analytic_signal(const MultivariateSignal& signal);

/// Zero-phase band-pass filtered copy plus the per-side margin (half the
/// filter order) where the output is unreliable.
struct BandpassResult {
  MultivariateSignal signal;
  Eigen::Index unreliable_margin = 0;
};

/// Linear-phase windowed-sinc FIR band-pass (Hamming window) applied with
/// group-delay compensation. Requires 0 < low_hz < high_hz < fs/2 and a
/// signal longer than the filter.
BandpassResult bandpass(const MultivariateSignal& signal, double low_hz, double high_hz);

/// Welch-averaged auto and cross spectral densities.
/// One-sided PSD scaling: auto integrates to the signal variance over
/// [0, fs/2]. cross(i,i,.) equals auto(i,.); cross is conjugate-symmetric.
struct SpectralDensity {
  Eigen::VectorXd frequencies;            // bin centres, Hz
  Eigen::MatrixXd auto_spectra;           // n x bins, nonnegative
  std::vector<Eigen::MatrixXcd> cross;    // per bin, n x n
};

/// Hann window, segment length min(256, p/4) rounded down to a power of
/// two, 50% overlap. Requires p >= 2 * segment length.
SpectralDensity welch_spectra(const MultivariateSignal& signal);

}  // namespace gvsa

#endif
