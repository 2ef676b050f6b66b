#include "erpavg/types.hpp"

#include <algorithm>
#include <cmath>

namespace erpavg {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::RaggedTrials: return "RaggedTrials";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::BadRate: return "BadRate";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::BadBand: return "BadBand";
    case ErrorCode::BadFactor: return "BadFactor";
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::BadK: return "BadK";
    case ErrorCode::DegenerateClass: return "DegenerateClass";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::BadUnits: return "BadUnits";
    case ErrorCode::BadFormat: return "BadFormat";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

bool TrialSet::has_labels() const {
  return std::any_of(trials.begin(), trials.end(),
                     [](const Trial& t) { return !t.label.empty(); });
}

const char* scheme_name(AverageScheme scheme) {
  switch (scheme) {
    case AverageScheme::Conventional: return "conventional";
    case AverageScheme::Dtw: return "dtw";
    case AverageScheme::FilteredDtw: return "filtered";
  }
  return "unknown";
}

AverageScheme scheme_from_name(const std::string& name) {
  if (name == "conventional") return AverageScheme::Conventional;
  if (name == "dtw") return AverageScheme::Dtw;
  if (name == "filtered") return AverageScheme::FilteredDtw;
  throw Error(ErrorCode::BadSpec, "unknown averaging scheme: " + name);
}

const TrialSet& validate_trialset(const TrialSet& ts) {
  if (!(ts.fs_hz > 0.0) || !std::isfinite(ts.fs_hz)) {
    throw Error(ErrorCode::BadRate, "sampling rate must be positive and finite");
  }
  if (ts.trials.empty()) {
    throw Error(ErrorCode::Empty, "trial set contains no trials");
  }
  const std::size_t n = ts.trials[0].samples.size();
  if (n < 2) {
    throw Error(ErrorCode::BadSpec, "epoch length must be at least 2 samples");
  }
  for (const Trial& trial : ts.trials) {
    if (trial.samples.size() != n) {
      throw Error(ErrorCode::RaggedTrials, "trial " + std::to_string(trial.id) +
                                               " has length " +
                                               std::to_string(trial.samples.size()) +
                                               ", expected " + std::to_string(n));
    }
    for (double v : trial.samples) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::NonFinite,
                    "trial " + std::to_string(trial.id) + " contains a non-finite sample");
      }
    }
  }
  if (ts.prestim_ms < 0.0 || !std::isfinite(ts.prestim_ms)) {
    throw Error(ErrorCode::BadSpec, "pre-stimulus duration must be finite and >= 0");
  }
  if (ts.prestim_ms * ts.fs_hz / 1000.0 >= static_cast<double>(n)) {
    throw Error(ErrorCode::BadSpec, "pre-stimulus interval exceeds the epoch");
  }
  if (ts.units != "microvolt") {
    throw Error(ErrorCode::BadUnits, "unsupported units: " + ts.units);
  }
  return ts;
}

std::vector<double> time_axis(std::size_t n, double fs_hz, double prestim_ms) {
  std::vector<double> axis(n);
  const double offset = prestim_ms / 1000.0;
  for (std::size_t i = 0; i < n; ++i) {
    axis[i] = static_cast<double>(i) / fs_hz - offset;
  }
  return axis;
}

std::vector<double> time_axis(const TrialSet& ts) {
  return time_axis(ts.n_samples(), ts.fs_hz, ts.prestim_ms);
}

std::size_t prestim_sample_count(double fs_hz, double prestim_ms) {
  // Samples with (n-1)/fs - prestim/1000 < 0, i.e. n-1 < fs*prestim/1000.
  const double bound = fs_hz * prestim_ms / 1000.0;
  return static_cast<std::size_t>(std::ceil(bound));
}

TrialSet merge_trialsets(const TrialSet& a, const TrialSet& b) {
  if (a.fs_hz != b.fs_hz || a.prestim_ms != b.prestim_ms ||
      a.n_samples() != b.n_samples() || a.units != b.units) {
    throw Error(ErrorCode::BadSpec, "trial sets have incompatible acquisition settings");
  }
  TrialSet merged = a;
  merged.trials.insert(merged.trials.end(), b.trials.begin(), b.trials.end());
  std::stable_sort(merged.trials.begin(), merged.trials.end(),
                   [](const Trial& x, const Trial& y) { return x.id < y.id; });
  return merged;
}

}  // namespace erpavg
