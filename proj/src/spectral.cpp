#include "gvsa/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "gvsa/errors.hpp"

namespace gvsa {

namespace {

// FFTW planning is not thread-safe; execution on plan-owned buffers is
// serialized here as well since the helper owns a single buffer pair.
std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

// In-place complex FFT helper with cached plans for one length.
class Fft {
 public:
  explicit Fft(int n) : n_(n) {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    buf_ = fftw_alloc_complex(static_cast<std::size_t>(n));
    fwd_ = fftw_plan_dft_1d(n, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
    inv_ = fftw_plan_dft_1d(n, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Fft() {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(inv_);
    fftw_free(buf_);
  }
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::complex<double>* buffer() { return reinterpret_cast<std::complex<double>*>(buf_); }
  void forward() { fftw_execute(fwd_); }
  void inverse() { fftw_execute(inv_); }  // unnormalized
  int size() const { return n_; }

 private:
  int n_;
  fftw_complex* buf_;
  fftw_plan fwd_, inv_;
};

double wrap_phase(double phi) {
  // atan2 yields [-pi, pi]; fold -pi onto +pi for the (-pi, pi] convention
  if (phi <= -std::numbers::pi) phi += 2.0 * std::numbers::pi;
  return phi;
}

}  // namespace

AnalyticDecomposition analytic_signal(const MultivariateSignal& signal) {
  const Eigen::Index n = signal.nodes();
  const Eigen::Index p = signal.samples();
  if (p < 8) throw ConfigError("analytic_signal: need at least 8 samples");

  AnalyticDecomposition out;
  out.envelope.resize(n, p);
  out.phase.resize(n, p);
  out.unreliable_margin = (p * 5 + 99) / 100;  // ceil(5% of p)

  Fft fft(static_cast<int>(p));
  auto* buf = fft.buffer();
  const Eigen::Index nyquist = p / 2;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index t = 0; t < p; ++t) buf[t] = {signal.data()(i, t), 0.0};
    fft.forward();
    // keep DC; double positive frequencies; keep Nyquist (even p); zero the rest
    for (Eigen::Index k = 1; k < nyquist; ++k) buf[k] *= 2.0;
    for (Eigen::Index k = (p % 2 == 0) ? nyquist + 1 : nyquist; k < p; ++k) buf[k] = 0.0;
    fft.inverse();
    const double scale = 1.0 / static_cast<double>(p);
    for (Eigen::Index t = 0; t < p; ++t) {
      const std::complex<double> a = buf[t] * scale;
      const double env = std::abs(a);
      out.envelope(i, t) = env;
      out.phase(i, t) = env == 0.0 ? 0.0 : wrap_phase(std::atan2(a.imag(), a.real()));
    }
  }
  return out;
}

BandpassResult bandpass(const MultivariateSignal& signal, double low_hz, double high_hz) {
  const double fs = signal.sample_rate();
  if (!(low_hz > 0.0) || !(low_hz < high_hz) || !(high_hz < fs / 2.0)) {
    throw ConfigError("bandpass: need 0 < low < high < fs/2");
  }
  // Tap count from the required selectivity: the Hamming-window transition
  // width 3.3*fs/taps must fit between the band edge and one octave outside.
  Eigen::Index taps = static_cast<Eigen::Index>(std::ceil(12.0 * fs / low_hz));
  if (taps % 2 == 1) ++taps;
  ++taps;  // odd length, symmetric type-I FIR
  const Eigen::Index half = taps / 2;
  if (signal.samples() <= taps) {
    throw ConfigError("bandpass: signal shorter than the filter");
  }

  const double transition = 3.3 * fs / static_cast<double>(taps);
  const double f1 = std::max(low_hz - transition / 2.0, low_hz * 0.25);
  const double f2 = std::min(high_hz + transition / 2.0, 0.499 * fs);

  // windowed-sinc band-pass: difference of two low-pass kernels
  Eigen::VectorXd h(taps);
  const double w1 = 2.0 * std::numbers::pi * f1 / fs;
  const double w2 = 2.0 * std::numbers::pi * f2 / fs;
  for (Eigen::Index k = 0; k < taps; ++k) {
    const double m = static_cast<double>(k - half);
    double ideal;
    if (m == 0.0) {
      ideal = (w2 - w1) / std::numbers::pi;
    } else {
      ideal = (std::sin(w2 * m) - std::sin(w1 * m)) / (std::numbers::pi * m);
    }
    const double window =
        0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) /
                               static_cast<double>(taps - 1));
    h(k) = ideal * window;
  }

  const Eigen::Index n = signal.nodes();
  const Eigen::Index p = signal.samples();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, p);
  // group-delay compensated convolution, zero padding beyond the ends
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index t = 0; t < p; ++t) {
      double acc = 0.0;
      const Eigen::Index k_lo = std::max<Eigen::Index>(0, half - t);
      const Eigen::Index k_hi = std::min<Eigen::Index>(taps - 1, p - 1 - t + half);
      for (Eigen::Index k = k_lo; k <= k_hi; ++k) {
        acc += h(k) * signal.data()(i, t + k - half);
      }
      out(i, t) = acc;
    }
  }
  return BandpassResult{MultivariateSignal(std::move(out), fs, signal.node_labels()), half};
}

SpectralDensity welch_spectra(const MultivariateSignal& signal) {
  const Eigen::Index n = signal.nodes();
  const Eigen::Index p = signal.samples();
  const double fs = signal.sample_rate();

  Eigen::Index seg = 256;
  while (seg > p / 4) seg /= 2;
  if (seg < 8 || p < 2 * seg) {
    throw ConfigError("welch_spectra: signal too short for spectral estimation");
  }
  const Eigen::Index hop = seg / 2;
  const Eigen::Index bins = seg / 2 + 1;
  const Eigen::Index segments = (p - seg) / hop + 1;

  Eigen::VectorXd window(seg);
  for (Eigen::Index t = 0; t < seg; ++t) {
    window(t) = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(t) /
                                     static_cast<double>(seg - 1));
  }
  const double window_power = window.squaredNorm();

  SpectralDensity out;
  out.frequencies.resize(bins);
  for (Eigen::Index k = 0; k < bins; ++k) {
    out.frequencies(k) = fs * static_cast<double>(k) / static_cast<double>(seg);
  }
  out.cross.assign(bins, Eigen::MatrixXcd::Zero(n, n));

  Fft fft(static_cast<int>(seg));
  auto* buf = fft.buffer();
  Eigen::MatrixXcd coeffs(n, bins);
  for (Eigen::Index s = 0; s < segments; ++s) {
    const Eigen::Index start = s * hop;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index t = 0; t < seg; ++t) {
        buf[t] = {signal.data()(i, start + t) * window(t), 0.0};
      }
      fft.forward();
      for (Eigen::Index k = 0; k < bins; ++k) coeffs(i, k) = buf[k];
    }
    for (Eigen::Index k = 0; k < bins; ++k) {
      out.cross[k].noalias() += coeffs.col(k) * coeffs.col(k).adjoint();
    }
  }

  // one-sided PSD scaling; DC and Nyquist are not doubled
  const double base = 1.0 / (fs * window_power * static_cast<double>(segments));
  for (Eigen::Index k = 0; k < bins; ++k) {
    const bool edge = (k == 0) || (k == bins - 1 && seg % 2 == 0);
    out.cross[k] *= base * (edge ? 1.0 : 2.0);
  }
  out.auto_spectra.resize(n, bins);
  for (Eigen::Index k = 0; k < bins; ++k) {
    out.auto_spectra.col(k) = out.cross[k].diagonal().real();
  }
  return out;
}

}  // namespace gvsa
