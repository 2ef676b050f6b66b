#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "erpavg/types.hpp"

namespace erpavg {

// Which trials survived artifact screening and why the others did not.
struct RejectionReport {
  std::vector<int> kept;
  std::vector<int> rejected_amplitude;
  std::vector<int> rejected_variance;
  double amp_range_uv{0.0};
  double var_factor{0.0};
  double variance_threshold{0.0};
};

// Low-pass cutoff selection for the post-warp filter: a fixed frequency, or a
// per-trial estimate from the original (pre-warp) trial spectrum.
struct CutoffMode {
  enum class Kind { Fixed, Estimate };
  Kind kind{Kind::Fixed};
  double fixed_hz{30.0};

  static CutoffMode fixed(double hz) { return {Kind::Fixed, hz}; }
  static CutoffMode estimate() { return {Kind::Estimate, 0.0}; }
};

// Drops trials whose peak-to-peak range exceeds amp_range_uv, then trials
// whose sample variance exceeds var_factor times the median variance of the
// remaining ones. Surviving order is preserved.
std::pair<TrialSet, RejectionReport> reject_artifacts(const TrialSet& ts,
                                                      double amp_range_uv = 150.0,
                                                      double var_factor = 3.0);

// Kaiser low-pass (transition 5 Hz, 60 dB), zero phase, applied per trial;
// optional subtraction of each trial's pre-stimulus mean.
TrialSet preprocess(const TrialSet& ts, double lowpass_hz = 30.0, bool baseline = false);

// Plain mean across trials in ascending-id order with compensated summation.
AverageSignal conventional_average(const TrialSet& ts);

struct DtwAverageResult {
  AverageSignal average;
  std::vector<std::vector<double>> warped;  // one per trial, id-ascending
};

// Aligns every trial to the reference, then averages the warped trials.
DtwAverageResult dtw_average(const TrialSet& ts, const AverageSignal& reference,
                             int workers = 1);

struct FilteredDtwResult {
  AverageSignal average;
  std::vector<std::vector<double>> filtered;  // one per trial, id-ascending
};

// Like dtw_average, but each warped trial is low-pass filtered before the
// averaging step to remove the spurious high frequencies the warp introduces.
FilteredDtwResult filtered_dtw_average(const TrialSet& ts, const AverageSignal& reference,
                                       CutoffMode cutoff = CutoffMode::fixed(30.0),
                                       int workers = 1);

// Sample-wise mean and population standard deviation across trials.
SamplewiseBand samplewise_band(const std::vector<std::vector<double>>& trials,
                               const AverageSignal& avg);
SamplewiseBand samplewise_band(const TrialSet& ts, const AverageSignal& avg);

// Seeded permutation split; the first ceil(T/2) trials go to the first set.
// Both subsets keep ascending-id order.
std::pair<TrialSet, TrialSet> split_even(const TrialSet& ts, std::uint64_t seed);

struct Fold {
  TrialSet train;
  TrialSet held_out;
};

// Seeded partition into k folds of size floor(T/k) or ceil(T/k); stratified
// per label when labels are present.
std::vector<Fold> kfold(const TrialSet& ts, std::size_t k, std::uint64_t seed);

}  // namespace erpavg
