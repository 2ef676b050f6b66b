#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace erpavg {

// Symmetric FIR low-pass with design metadata. Passband edge is cutoff_hz,
// stopband edge cutoff_hz + transition_hz; the underlying ideal response cuts
// at the band center.
struct FirFilter {
  std::vector<double> taps;  // odd length, taps[k] == taps[L-1-k]
  double cutoff_hz{0.0};
  double transition_hz{0.0};
  double atten_db{0.0};
  double fs_hz{0.0};

  std::size_t group_delay() const { return (taps.size() - 1) / 2; }
};

// Modified Bessel function of the first kind, order zero (power series).
double bessel_i0(double x);

// Minimum-order Kaiser design for the requested stopband attenuation.
// beta = 0.1102(A-8.7) for A > 50, 0.5842(A-21)^0.4 + 0.07886(A-21) for
// 21 <= A <= 50, 0 below; tap count = (A-8)/(2.285*dw) rounded up to the next
// odd integer; DC gain normalized to 1.
FirFilter design_kaiser_lowpass(double fs_hz, double cutoff_hz,
                                double transition_hz, double atten_db);

// Smallest DFT-bin frequency below which the one-sided magnitude-squared
// spectrum holds at least energy_fraction of the total. All-zero input
// returns 0.
double estimate_max_frequency(std::span<const double> x, double fs_hz,
                              double energy_fraction = 0.999);

// Convolves with the symmetric taps and compensates the group delay, so the
// output is phase-free. Edges are handled by mirror reflection.
std::vector<double> apply_zero_phase(const FirFilter& f, std::span<const double> x);

struct Resampled {
  std::vector<double> samples;
  double fs_hz{0.0};
};

// Rational rate change by up/down: zero-stuff, Kaiser low-pass (60 dB) at the
// smaller of the original and target Nyquist, decimate. Output length is
// ceil(N*up/down).
Resampled resample_rational(std::span<const double> x, double fs_hz, int up, int down);

}  // namespace erpavg
