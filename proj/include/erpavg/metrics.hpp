#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "erpavg/types.hpp"

namespace erpavg {

// Descriptive statistics of a metric sample. Quantiles interpolate linearly
// between closest ranks; std is the sample (n-1) standard deviation. v is the
// coefficient of variation std/mean, undefined when the mean is zero.
struct StatsSummary {
  double mean{0.0};
  double std_dev{0.0};
  double v{0.0};
  double median{0.0};
  double q25{0.0};
  double q75{0.0};
  double max{0.0};
  double min{0.0};
  bool v_defined{true};
};

// Five-number summary with 1.5*IQR whiskers; outliers sorted ascending.
struct BoxplotStats {
  double median{0.0};
  double q25{0.0};
  double q75{0.0};
  double whisker_low{0.0};
  double whisker_high{0.0};
  std::vector<double> outliers;
};

struct Interval {
  double lo_s{0.0};
  double hi_s{0.0};
};

enum class Polarity { Positive, Negative };

// Delay, peak value and peak-to-preceding-trough amplitude of one ERP
// component. Times are seconds after stimulus onset.
struct ComponentMeasures {
  double delay_s{0.0};
  double peak_uv{0.0};
  double amplitude_uv{0.0};
  Interval window_s;
  Polarity polarity{Polarity::Positive};
};

// sqrt((1/N) * sum (s[n] - r[n])^2)
double rms_to_average(std::span<const double> trial, std::span<const double> avg);
double rms_to_average(std::span<const double> trial, const AverageSignal& avg);

// max_n |s[n] - r[n]|
double mad_to_average(std::span<const double> trial, std::span<const double> avg);
double mad_to_average(std::span<const double> trial, const AverageSignal& avg);

StatsSummary summary_stats(std::span<const double> values);

BoxplotStats boxplot_stats(std::span<const double> values);

// Quantile by linear interpolation between closest ranks, q in [0, 1].
double quantile(std::span<const double> values, double q);

// Peak search within window_s (post-stimulus seconds); the amplitude
// reference is the opposite-polarity extremum inside preceding_s, which
// defaults to [0, window.lo). With no preceding samples the amplitude equals
// the peak value. Ties pick the earliest index.
ComponentMeasures measure_component(const AverageSignal& avg, Interval window_s,
                                    Polarity polarity,
                                    std::optional<Interval> preceding_s = std::nullopt);

// Per-trial RMS and MAD of every trial against each candidate average, with
// summary and boxplot statistics per scheme.
struct SchemeComparison {
  struct PerScheme {
    AverageScheme scheme{AverageScheme::Conventional};
    std::vector<double> rms;
    std::vector<double> mad;
    StatsSummary rms_stats;
    StatsSummary mad_stats;
    BoxplotStats rms_box;
    BoxplotStats mad_box;
  };
  std::vector<PerScheme> schemes;
};

SchemeComparison scheme_comparison(const TrialSet& trials,
                                   std::span<const AverageSignal> averages);

}  // namespace erpavg
