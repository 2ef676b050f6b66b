#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace erpavg {

enum class ErrorCode {
  RaggedTrials,
  NonFinite,
  BadRate,
  LengthMismatch,
  IndexOutOfRange,
  BadBand,
  BadFactor,
  Empty,
  BadK,
  DegenerateClass,
  EmptyWindow,
  BadSpec,
  BadUnits,
  BadFormat,
  IoFailure,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// One epoched excerpt, time-locked to a stimulus. Samples are in microvolts.
// label is empty for unlabeled data.
struct Trial {
  std::vector<double> samples;
  int id{0};
  std::string label;
};

// A batch of equal-length trials plus acquisition metadata. Trials are kept
// in ascending-id order; every reduction over them iterates in that order.
struct TrialSet {
  std::vector<Trial> trials;
  double fs_hz{0.0};
  double prestim_ms{0.0};
  std::string channel;
  std::string units{"microvolt"};

  std::size_t n_trials() const { return trials.size(); }
  std::size_t n_samples() const { return trials.empty() ? 0 : trials[0].samples.size(); }
  bool has_labels() const;
};

enum class AverageScheme { Conventional, Dtw, FilteredDtw };

const char* scheme_name(AverageScheme scheme);
AverageScheme scheme_from_name(const std::string& name);

struct AverageSignal {
  std::vector<double> samples;
  AverageScheme scheme{AverageScheme::Conventional};
  std::size_t trial_count{0};
  double fs_hz{0.0};
  double prestim_ms{0.0};
};

// Sample-wise mean and dispersion of a batch of equally long signals.
struct SamplewiseBand {
  std::vector<double> mean;
  std::vector<double> std_dev;
  AverageScheme scheme{AverageScheme::Conventional};
};

// Throws on invariant violations, otherwise returns its argument unchanged.
const TrialSet& validate_trialset(const TrialSet& ts);

// n -> (n-1)/fs - prestim/1000 seconds, n = 1..N. The first value >= 0 is the
// stimulus onset.
std::vector<double> time_axis(std::size_t n, double fs_hz, double prestim_ms);
std::vector<double> time_axis(const TrialSet& ts);

// Number of samples strictly before the stimulus onset.
std::size_t prestim_sample_count(double fs_hz, double prestim_ms);

// Concatenates two sets recorded under identical acquisition settings.
TrialSet merge_trialsets(const TrialSet& a, const TrialSet& b);

}  // namespace erpavg
