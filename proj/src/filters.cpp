#include "erpavg/filters.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "erpavg/types.hpp"

namespace erpavg {

namespace {

constexpr double kPi = std::numbers::pi;

// Mirror reflection of an out-of-range index into [0, n).
std::size_t reflect_index(long long m, std::size_t n) {
  if (n == 1) return 0;
  const long long period = 2 * static_cast<long long>(n) - 2;
  m %= period;
  if (m < 0) m += period;
  if (m >= static_cast<long long>(n)) m = period - m;
  return static_cast<std::size_t>(m);
}

}  // namespace

double bessel_i0(double x) {
  const double half = x / 2.0;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= half / k;
    const double contribution = term * term;
    sum += contribution;
    if (contribution < sum * 1e-18) break;
  }
  return sum;
}

FirFilter design_kaiser_lowpass(double fs_hz, double cutoff_hz,
                                double transition_hz, double atten_db) {
  if (!(fs_hz > 0.0) || !(cutoff_hz > 0.0) || !(transition_hz > 0.0) ||
      !(atten_db > 0.0)) {
    throw Error(ErrorCode::BadBand, "filter design parameters must be positive");
  }
  if (cutoff_hz + transition_hz / 2.0 >= fs_hz / 2.0) {
    throw Error(ErrorCode::BadBand, "filter band edges exceed the Nyquist frequency");
  }

  const double a = atten_db;
  double beta = 0.0;
  if (a > 50.0) {
    beta = 0.1102 * (a - 8.7);
  } else if (a >= 21.0) {
    beta = 0.5842 * std::pow(a - 21.0, 0.4) + 0.07886 * (a - 21.0);
  }

  const double dw = 2.0 * kPi * transition_hz / fs_hz;
  const double raw_taps = (a - 8.0) / (2.285 * dw);
  std::size_t len = static_cast<std::size_t>(std::ceil(raw_taps));
  if (len < 1) len = 1;
  if (len % 2 == 0) ++len;

  FirFilter f;
  f.cutoff_hz = cutoff_hz;
  f.transition_hz = transition_hz;
  f.atten_db = atten_db;
  f.fs_hz = fs_hz;
  f.taps.resize(len);

  const double wc = 2.0 * kPi * (cutoff_hz + transition_hz / 2.0) / fs_hz;
  const double center = static_cast<double>(len - 1) / 2.0;
  const double i0_beta = bessel_i0(beta);
  for (std::size_t k = 0; k < len; ++k) {
    const double offset = static_cast<double>(k) - center;
    const double ideal = (offset == 0.0) ? wc / kPi : std::sin(wc * offset) / (kPi * offset);
    double window = 1.0;
    if (len > 1) {
      const double ratio = offset / center;
      window = bessel_i0(beta * std::sqrt(1.0 - ratio * ratio)) / i0_beta;
    }
    f.taps[k] = ideal * window;
  }

  const double gain = std::accumulate(f.taps.begin(), f.taps.end(), 0.0);
  for (double& tap : f.taps) tap /= gain;
  return f;
}

double estimate_max_frequency(std::span<const double> x, double fs_hz,
                              double energy_fraction) {
  if (x.size() < 2) {
    throw Error(ErrorCode::LengthMismatch, "need at least 2 samples to estimate bandwidth");
  }
  if (!(fs_hz > 0.0)) throw Error(ErrorCode::BadRate, "sampling rate must be positive");
  const std::size_t n = x.size();
  const bool all_zero = std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; });
  if (all_zero) return 0.0;

  // One-sided magnitude-squared spectrum by direct DFT; interior bins carry
  // the energy of both conjugate halves.
  const std::size_t half = n / 2;
  std::vector<double> energy(half + 1, 0.0);
  double total = 0.0;
  for (std::size_t k = 0; k <= half; ++k) {
    std::complex<double> bin{0.0, 0.0};
    const double w = -2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
    for (std::size_t m = 0; m < n; ++m) {
      bin += x[m] * std::polar(1.0, w * static_cast<double>(m));
    }
    double e = std::norm(bin);
    const bool shared_bin = k == 0 || (n % 2 == 0 && k == half);
    if (!shared_bin) e *= 2.0;
    energy[k] = e;
    total += e;
  }

  double cumulative = 0.0;
  for (std::size_t k = 0; k <= half; ++k) {
    cumulative += energy[k];
    if (cumulative >= energy_fraction * total) {
      return static_cast<double>(k) * fs_hz / static_cast<double>(n);
    }
  }
  return static_cast<double>(half) * fs_hz / static_cast<double>(n);
}

std::vector<double> apply_zero_phase(const FirFilter& f, std::span<const double> x) {
  if (f.taps.empty()) throw Error(ErrorCode::BadSpec, "filter has no taps");
  if (x.empty()) return {};
  const std::size_t n = x.size();
  const std::size_t len = f.taps.size();
  const long long center = static_cast<long long>((len - 1) / 2);

  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    const long long base = static_cast<long long>(i) + center;
    for (std::size_t k = 0; k < len; ++k) {
      acc += f.taps[k] * x[reflect_index(base - static_cast<long long>(k), n)];
    }
    out[i] = acc;
  }
  return out;
}

Resampled resample_rational(std::span<const double> x, double fs_hz, int up, int down) {
  if (up < 1 || down < 1) {
    throw Error(ErrorCode::BadFactor, "resampling factors must be positive integers");
  }
  if (x.empty()) throw Error(ErrorCode::Empty, "cannot resample an empty signal");
  const int g = std::gcd(up, down);
  const int l = up / g;
  const int m = down / g;
  if (l == 1 && m == 1) {
    return {std::vector<double>(x.begin(), x.end()), fs_hz};
  }

  const std::size_t n_up = x.size() * static_cast<std::size_t>(l);
  std::vector<double> stuffed(n_up, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    stuffed[i * static_cast<std::size_t>(l)] = x[i];
  }

  const double fs_up = fs_hz * l;
  // Band center at the smaller of the original and target Nyquist, pulled in
  // when the transition band would cross fs_up/2 (pure upsampling).
  double band_center = std::min(fs_up / 2.0, fs_up / (2.0 * m));
  const double transition = band_center / 5.0;
  band_center = std::min(band_center, fs_up / 2.0 - transition);
  FirFilter f = design_kaiser_lowpass(fs_up, band_center - transition / 2.0, transition, 60.0);

  std::vector<double> filtered = apply_zero_phase(f, stuffed);

  Resampled out;
  out.fs_hz = fs_hz * l / m;
  out.samples.reserve((n_up + static_cast<std::size_t>(m) - 1) / static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < n_up; i += static_cast<std::size_t>(m)) {
    out.samples.push_back(filtered[i] * l);  // gain l restores amplitude after zero-stuffing
  }
  return out;
}

}  // namespace erpavg
