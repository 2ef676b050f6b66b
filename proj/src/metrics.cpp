#include "erpavg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace erpavg {

namespace {

void require_equal_lengths(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::LengthMismatch, "signal lengths differ: " + std::to_string(a) +
                                               " vs " + std::to_string(b));
  }
}

double sorted_quantile(const std::vector<double>& sorted, double q) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double pos = q * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= n) return sorted[n - 1];
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

double rms_to_average(std::span<const double> trial, std::span<const double> avg) {
  require_equal_lengths(trial.size(), avg.size());
  if (trial.empty()) throw Error(ErrorCode::Empty, "empty signals");
  double acc = 0.0;
  for (std::size_t i = 0; i < trial.size(); ++i) {
    const double d = trial[i] - avg[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(trial.size()));
}

double rms_to_average(std::span<const double> trial, const AverageSignal& avg) {
  return rms_to_average(trial, std::span<const double>(avg.samples));
}

double mad_to_average(std::span<const double> trial, std::span<const double> avg) {
  require_equal_lengths(trial.size(), avg.size());
  if (trial.empty()) throw Error(ErrorCode::Empty, "empty signals");
  double worst = 0.0;
  for (std::size_t i = 0; i < trial.size(); ++i) {
    worst = std::max(worst, std::abs(trial[i] - avg[i]));
  }
  return worst;
}

double mad_to_average(std::span<const double> trial, const AverageSignal& avg) {
  return mad_to_average(trial, std::span<const double>(avg.samples));
}

double quantile(std::span<const double> values, double q) {
  if (values.empty()) throw Error(ErrorCode::Empty, "quantile of empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted_quantile(sorted, q);
}

StatsSummary summary_stats(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::Empty, "summary of empty sample");
  const std::size_t n = values.size();

  StatsSummary s;
  double acc = 0.0;
  for (double v : values) acc += v;
  s.mean = acc / static_cast<double>(n);

  double sq = 0.0;
  for (double v : values) {
    const double d = v - s.mean;
    sq += d * d;
  }
  s.std_dev = n > 1 ? std::sqrt(sq / static_cast<double>(n - 1)) : 0.0;

  if (s.mean != 0.0) {
    s.v = s.std_dev / s.mean;
    s.v_defined = true;
  } else {
    s.v = std::numeric_limits<double>::quiet_NaN();
    s.v_defined = false;
  }

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  s.median = sorted_quantile(sorted, 0.5);
  s.q25 = sorted_quantile(sorted, 0.25);
  s.q75 = sorted_quantile(sorted, 0.75);
  s.min = sorted.front();
  s.max = sorted.back();
  return s;
}

BoxplotStats boxplot_stats(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::Empty, "boxplot of empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  BoxplotStats b;
  b.median = sorted_quantile(sorted, 0.5);
  b.q25 = sorted_quantile(sorted, 0.25);
  b.q75 = sorted_quantile(sorted, 0.75);
  const double iqr = b.q75 - b.q25;
  const double fence_low = b.q25 - 1.5 * iqr;
  const double fence_high = b.q75 + 1.5 * iqr;

  b.whisker_low = b.q25;
  b.whisker_high = b.q75;
  bool found_inlier = false;
  for (double v : sorted) {
    if (v < fence_low || v > fence_high) {
      b.outliers.push_back(v);
      continue;
    }
    if (!found_inlier) {
      b.whisker_low = v;
      found_inlier = true;
    }
    b.whisker_high = v;
  }
  return b;
}

ComponentMeasures measure_component(const AverageSignal& avg, Interval window_s,
                                    Polarity polarity,
                                    std::optional<Interval> preceding_s) {
  if (avg.samples.empty()) throw Error(ErrorCode::Empty, "empty average signal");
  const std::vector<double> axis = time_axis(avg.samples.size(), avg.fs_hz, avg.prestim_ms);

  const bool positive = polarity == Polarity::Positive;
  const double lo = std::max(window_s.lo_s, 0.0);
  const double hi = window_s.hi_s;

  std::size_t peak_index = avg.samples.size();
  for (std::size_t i = 0; i < avg.samples.size(); ++i) {
    if (axis[i] < lo || axis[i] > hi) continue;
    if (peak_index == avg.samples.size()) {
      peak_index = i;
      continue;
    }
    const bool better = positive ? avg.samples[i] > avg.samples[peak_index]
                                 : avg.samples[i] < avg.samples[peak_index];
    if (better) peak_index = i;
  }
  if (peak_index == avg.samples.size()) {
    throw Error(ErrorCode::EmptyWindow, "component window contains no samples");
  }

  ComponentMeasures m;
  m.window_s = window_s;
  m.polarity = polarity;
  m.delay_s = axis[peak_index];
  m.peak_uv = avg.samples[peak_index];

  const Interval preceding = preceding_s.value_or(Interval{0.0, window_s.lo_s});
  const double plo = std::max(preceding.lo_s, 0.0);
  const double phi = preceding.hi_s;
  std::size_t ref_index = avg.samples.size();
  for (std::size_t i = 0; i < avg.samples.size(); ++i) {
    if (axis[i] < plo || axis[i] >= phi) continue;
    if (ref_index == avg.samples.size()) {
      ref_index = i;
      continue;
    }
    const bool better = positive ? avg.samples[i] < avg.samples[ref_index]
                                 : avg.samples[i] > avg.samples[ref_index];
    if (better) ref_index = i;
  }
  m.amplitude_uv = ref_index == avg.samples.size()
                       ? m.peak_uv
                       : m.peak_uv - avg.samples[ref_index];
  return m;
}

SchemeComparison scheme_comparison(const TrialSet& trials,
                                   std::span<const AverageSignal> averages) {
  validate_trialset(trials);
  SchemeComparison cmp;
  cmp.schemes.reserve(averages.size());
  for (const AverageSignal& avg : averages) {
    SchemeComparison::PerScheme per;
    per.scheme = avg.scheme;
    per.rms.reserve(trials.n_trials());
    per.mad.reserve(trials.n_trials());
    for (const Trial& trial : trials.trials) {
      per.rms.push_back(rms_to_average(trial.samples, avg));
      per.mad.push_back(mad_to_average(trial.samples, avg));
    }
    per.rms_stats = summary_stats(per.rms);
    per.mad_stats = summary_stats(per.mad);
    per.rms_box = boxplot_stats(per.rms);
    per.mad_box = boxplot_stats(per.mad);
    cmp.schemes.push_back(std::move(per));
  }
  return cmp;
}

}  // namespace erpavg
