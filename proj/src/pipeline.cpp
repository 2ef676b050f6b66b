#include "erpavg/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "erpavg/filters.hpp"
#include "erpavg/parallel.hpp"
#include "erpavg/rng.hpp"
#include "erpavg/warp.hpp"

namespace erpavg {

namespace {

// Neumaier-compensated sum; reductions must not depend on platform FMA or
// vectorization choices.
double compensated_sum(const std::vector<std::vector<double>>& rows, std::size_t col) {
  double sum = 0.0;
  double comp = 0.0;
  for (const std::vector<double>& row : rows) {
    const double v = row[col];
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

std::vector<double> mean_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows[0].size();
  std::vector<double> mean(n);
  for (std::size_t col = 0; col < n; ++col) {
    mean[col] = compensated_sum(rows, col) / static_cast<double>(rows.size());
  }
  return mean;
}

std::vector<std::size_t> id_ascending_order(const TrialSet& ts) {
  std::vector<std::size_t> order(ts.n_trials());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ts.trials[a].id < ts.trials[b].id;
  });
  return order;
}

double population_variance(const std::vector<double>& samples) {
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= static_cast<double>(samples.size());
  double acc = 0.0;
  for (double v : samples) {
    const double d = v - mean;
    acc += d * d;
  }
  return acc / static_cast<double>(samples.size());
}

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

TrialSet subset_sorted_by_id(const TrialSet& ts, std::vector<std::size_t> indices) {
  std::sort(indices.begin(), indices.end(), [&](std::size_t a, std::size_t b) {
    return ts.trials[a].id < ts.trials[b].id;
  });
  TrialSet out = ts;
  out.trials.clear();
  out.trials.reserve(indices.size());
  for (std::size_t idx : indices) out.trials.push_back(ts.trials[idx]);
  return out;
}

}  // namespace

std::pair<TrialSet, RejectionReport> reject_artifacts(const TrialSet& ts,
                                                      double amp_range_uv,
                                                      double var_factor) {
  validate_trialset(ts);
  RejectionReport report;
  report.amp_range_uv = amp_range_uv;
  report.var_factor = var_factor;

  std::vector<std::size_t> amplitude_ok;
  for (std::size_t t = 0; t < ts.n_trials(); ++t) {
    const auto [lo, hi] = std::minmax_element(ts.trials[t].samples.begin(),
                                              ts.trials[t].samples.end());
    if (*hi - *lo > amp_range_uv) {
      report.rejected_amplitude.push_back(ts.trials[t].id);
    } else {
      amplitude_ok.push_back(t);
    }
  }
  if (amplitude_ok.empty()) {
    throw Error(ErrorCode::Empty, "every trial exceeded the amplitude range");
  }

  std::vector<double> variances(amplitude_ok.size());
  for (std::size_t i = 0; i < amplitude_ok.size(); ++i) {
    variances[i] = population_variance(ts.trials[amplitude_ok[i]].samples);
  }
  report.variance_threshold = var_factor * median_of(variances);

  TrialSet kept = ts;
  kept.trials.clear();
  for (std::size_t i = 0; i < amplitude_ok.size(); ++i) {
    const Trial& trial = ts.trials[amplitude_ok[i]];
    if (variances[i] > report.variance_threshold) {
      report.rejected_variance.push_back(trial.id);
    } else {
      kept.trials.push_back(trial);
      report.kept.push_back(trial.id);
    }
  }
  if (kept.trials.empty()) {
    throw Error(ErrorCode::Empty, "every trial was rejected by the variance screen");
  }
  return {std::move(kept), std::move(report)};
}

TrialSet preprocess(const TrialSet& ts, double lowpass_hz, bool baseline) {
  validate_trialset(ts);
  const FirFilter f = design_kaiser_lowpass(ts.fs_hz, lowpass_hz, 5.0, 60.0);
  const std::size_t prestim = prestim_sample_count(ts.fs_hz, ts.prestim_ms);

  TrialSet out = ts;
  for (Trial& trial : out.trials) {
    trial.samples = apply_zero_phase(f, trial.samples);
    if (baseline && prestim > 0) {
      double mean = 0.0;
      for (std::size_t i = 0; i < prestim; ++i) mean += trial.samples[i];
      mean /= static_cast<double>(prestim);
      for (double& v : trial.samples) v -= mean;
    }
  }
  return out;
}

AverageSignal conventional_average(const TrialSet& ts) {
  validate_trialset(ts);
  const std::vector<std::size_t> order = id_ascending_order(ts);
  std::vector<std::vector<double>> rows;
  rows.reserve(order.size());
  for (std::size_t idx : order) rows.push_back(ts.trials[idx].samples);

  AverageSignal avg;
  avg.samples = mean_rows(rows);
  avg.scheme = AverageScheme::Conventional;
  avg.trial_count = ts.n_trials();
  avg.fs_hz = ts.fs_hz;
  avg.prestim_ms = ts.prestim_ms;
  return avg;
}

DtwAverageResult dtw_average(const TrialSet& ts, const AverageSignal& reference,
                             int workers) {
  validate_trialset(ts);
  if (reference.samples.size() != ts.n_samples()) {
    throw Error(ErrorCode::LengthMismatch, "reference length differs from epoch length");
  }
  const std::vector<std::size_t> order = id_ascending_order(ts);

  DtwAverageResult result;
  result.warped.resize(order.size());
  parallel_for(order.size(), workers, [&](std::size_t k) {
    result.warped[k] = align_trial(reference.samples, ts.trials[order[k]].samples);
  });

  result.average.samples = mean_rows(result.warped);
  result.average.scheme = AverageScheme::Dtw;
  result.average.trial_count = ts.n_trials();
  result.average.fs_hz = ts.fs_hz;
  result.average.prestim_ms = ts.prestim_ms;
  return result;
}

FilteredDtwResult filtered_dtw_average(const TrialSet& ts, const AverageSignal& reference,
                                       CutoffMode cutoff, int workers) {
  validate_trialset(ts);
  if (reference.samples.size() != ts.n_samples()) {
    throw Error(ErrorCode::LengthMismatch, "reference length differs from epoch length");
  }
  const std::vector<std::size_t> order = id_ascending_order(ts);
  const double transition_hz = 5.0;
  // Keep per-trial estimates inside the designable band.
  const double cutoff_floor = ts.fs_hz / static_cast<double>(ts.n_samples());
  const double cutoff_ceil = ts.fs_hz / 2.0 - transition_hz / 2.0 - 1e-6 * ts.fs_hz;

  FilteredDtwResult result;
  result.filtered.resize(order.size());
  parallel_for(order.size(), workers, [&](std::size_t k) {
    const Trial& trial = ts.trials[order[k]];
    double cutoff_hz = cutoff.fixed_hz;
    if (cutoff.kind == CutoffMode::Kind::Estimate) {
      cutoff_hz = estimate_max_frequency(trial.samples, ts.fs_hz);
      cutoff_hz = std::clamp(cutoff_hz, cutoff_floor, cutoff_ceil);
    }
    const FirFilter f = design_kaiser_lowpass(ts.fs_hz, cutoff_hz, transition_hz, 60.0);
    const std::vector<double> warped = align_trial(reference.samples, trial.samples);
    result.filtered[k] = apply_zero_phase(f, warped);
  });

  result.average.samples = mean_rows(result.filtered);
  result.average.scheme = AverageScheme::FilteredDtw;
  result.average.trial_count = ts.n_trials();
  result.average.fs_hz = ts.fs_hz;
  result.average.prestim_ms = ts.prestim_ms;
  return result;
}

SamplewiseBand samplewise_band(const std::vector<std::vector<double>>& trials,
                               const AverageSignal& avg) {
  if (trials.empty()) throw Error(ErrorCode::Empty, "no trials for band computation");
  const std::size_t n = avg.samples.size();
  for (const std::vector<double>& row : trials) {
    if (row.size() != n) {
      throw Error(ErrorCode::LengthMismatch, "trial length differs from average length");
    }
  }

  SamplewiseBand band;
  band.scheme = avg.scheme;
  band.mean.resize(n);
  band.std_dev.resize(n);
  const double count = static_cast<double>(trials.size());
  for (std::size_t col = 0; col < n; ++col) {
    const double mean = compensated_sum(trials, col) / count;
    double acc = 0.0;
    for (const std::vector<double>& row : trials) {
      const double d = row[col] - mean;
      acc += d * d;
    }
    band.mean[col] = mean;
    band.std_dev[col] = std::sqrt(acc / count);
  }
  return band;
}

SamplewiseBand samplewise_band(const TrialSet& ts, const AverageSignal& avg) {
  validate_trialset(ts);
  std::vector<std::vector<double>> rows;
  rows.reserve(ts.n_trials());
  for (std::size_t idx : id_ascending_order(ts)) rows.push_back(ts.trials[idx].samples);
  return samplewise_band(rows, avg);
}

std::pair<TrialSet, TrialSet> split_even(const TrialSet& ts, std::uint64_t seed) {
  validate_trialset(ts);
  if (ts.n_trials() < 2) {
    throw Error(ErrorCode::Empty, "need at least 2 trials to split");
  }
  std::vector<std::size_t> order(ts.n_trials());
  std::iota(order.begin(), order.end(), 0);
  rng::SplitMix64 gen(rng::sub_seed(seed, rng::kStreamSplit));
  gen.shuffle(order);

  const std::size_t first_size = (ts.n_trials() + 1) / 2;
  std::vector<std::size_t> first(order.begin(), order.begin() + first_size);
  std::vector<std::size_t> second(order.begin() + first_size, order.end());
  return {subset_sorted_by_id(ts, std::move(first)), subset_sorted_by_id(ts, std::move(second))};
}

std::vector<Fold> kfold(const TrialSet& ts, std::size_t k, std::uint64_t seed) {
  validate_trialset(ts);
  if (k < 2 || k > ts.n_trials()) {
    throw Error(ErrorCode::BadK, "fold count must be in [2, n_trials]");
  }
  rng::SplitMix64 gen(rng::sub_seed(seed, rng::kStreamKfold));

  std::vector<std::vector<std::size_t>> fold_members(k);
  if (ts.has_labels()) {
    // Stratified: shuffle within each label, deal round-robin with a cursor
    // carried across labels so fold sizes stay within one of each other.
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t t = 0; t < ts.n_trials(); ++t) {
      groups[ts.trials[t].label].push_back(t);
    }
    std::size_t cursor = 0;
    for (auto& [label, members] : groups) {
      gen.shuffle(members);
      for (std::size_t idx : members) {
        fold_members[cursor % k].push_back(idx);
        ++cursor;
      }
    }
  } else {
    std::vector<std::size_t> order(ts.n_trials());
    std::iota(order.begin(), order.end(), 0);
    gen.shuffle(order);
    const std::size_t base = ts.n_trials() / k;
    const std::size_t extra = ts.n_trials() % k;
    std::size_t cursor = 0;
    for (std::size_t f = 0; f < k; ++f) {
      const std::size_t size = base + (f < extra ? 1 : 0);
      for (std::size_t i = 0; i < size; ++i) fold_members[f].push_back(order[cursor++]);
    }
  }

  std::vector<Fold> folds;
  folds.reserve(k);
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<std::size_t> train_indices;
    train_indices.reserve(ts.n_trials() - fold_members[f].size());
    for (std::size_t other = 0; other < k; ++other) {
      if (other == f) continue;
      train_indices.insert(train_indices.end(), fold_members[other].begin(),
                           fold_members[other].end());
    }
    folds.push_back({subset_sorted_by_id(ts, std::move(train_indices)),
                     subset_sorted_by_id(ts, fold_members[f])});
  }
  return folds;
}

}  // namespace erpavg
