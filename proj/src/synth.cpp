#include "erpavg/synth.hpp"

#include <algorithm>
#include <cmath>

#include "erpavg/rng.hpp"

namespace erpavg {

namespace {

void validate_template_spec(const TemplateSpec& spec) {
  if (spec.n < 2 || !(spec.fs_hz > 0.0) || spec.prestim_ms < 0.0) {
    throw Error(ErrorCode::BadSpec, "template needs n >= 2 and a positive sampling rate");
  }
  const double t_lo = -spec.prestim_ms;
  const double t_hi = static_cast<double>(spec.n - 1) / spec.fs_hz * 1000.0 - spec.prestim_ms;
  for (const GaussianBump& bump : spec.bumps) {
    if (!(bump.width_ms > 0.0)) {
      throw Error(ErrorCode::BadSpec, "bump width must be positive");
    }
    if (bump.center_ms < t_lo || bump.center_ms > t_hi) {
      throw Error(ErrorCode::BadSpec, "bump center lies outside the epoch");
    }
  }
}

void validate_jitter_spec(const JitterSpec& jitter) {
  if (jitter.latency_shift_ms < 0.0 || jitter.noise_std_uv < 0.0 ||
      !(jitter.warp_strength >= 0.0 && jitter.warp_strength < 1.0) ||
      jitter.amplitude_lo > jitter.amplitude_hi || jitter.warp_knots < 2 ||
      !std::isfinite(jitter.latency_shift_ms) || !std::isfinite(jitter.noise_std_uv) ||
      !std::isfinite(jitter.amplitude_lo) || !std::isfinite(jitter.amplitude_hi)) {
    throw Error(ErrorCode::BadSpec, "invalid jitter specification");
  }
}

// Piecewise-linear interpolation in sample-index space with constant edge
// extension. Positions within 1e-9 of a grid point snap to it, so undistorted
// configurations reproduce the template bit-exactly.
double sample_at(const std::vector<double>& signal, double pos) {
  const double n_max = static_cast<double>(signal.size() - 1);
  if (pos <= 0.0) return signal.front();
  if (pos >= n_max) return signal.back();
  const double nearest = std::round(pos);
  if (std::abs(pos - nearest) < 1e-9) {
    return signal[static_cast<std::size_t>(nearest)];
  }
  const std::size_t lo = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(lo);
  return signal[lo] + frac * (signal[lo + 1] - signal[lo]);
}

}  // namespace

std::vector<double> make_template(const TemplateSpec& spec) {
  validate_template_spec(spec);
  const std::vector<double> axis = time_axis(spec.n, spec.fs_hz, spec.prestim_ms);
  std::vector<double> out(spec.n, 0.0);
  for (const GaussianBump& bump : spec.bumps) {
    const double sign = bump.polarity == Polarity::Positive ? 1.0 : -1.0;
    const double center_s = bump.center_ms / 1000.0;
    const double width_s = bump.width_ms / 1000.0;
    for (std::size_t i = 0; i < spec.n; ++i) {
      const double z = (axis[i] - center_s) / width_s;
      out[i] += sign * bump.amplitude_uv * std::exp(-0.5 * z * z);
    }
  }
  return out;
}

SynthResult generate_trials(const TemplateSpec& spec, std::size_t t_count,
                            const JitterSpec& jitter, const std::string& label,
                            int id_offset) {
  validate_template_spec(spec);
  validate_jitter_spec(jitter);
  if (t_count == 0) throw Error(ErrorCode::Empty, "trial count must be positive");

  const std::vector<double> tmpl = make_template(spec);
  const std::size_t knots = jitter.warp_knots;
  const double n_max = static_cast<double>(spec.n - 1);
  const double knot_step = n_max / static_cast<double>(knots - 1);
  const double shift_samples_max = jitter.latency_shift_ms * spec.fs_hz / 1000.0;

  SynthResult result;
  result.trials.fs_hz = spec.fs_hz;
  result.trials.prestim_ms = spec.prestim_ms;
  result.trials.channel = "synthetic";
  result.trials.trials.reserve(t_count);
  result.ground_truth.reserve(t_count);

  for (std::size_t t = 0; t < t_count; ++t) {
    const int id = id_offset + static_cast<int>(t) + 1;
    rng::SplitMix64 gen(rng::sub_seed(jitter.seed,
                                      rng::kStreamSynth + static_cast<std::uint64_t>(id)));

    const double shift_samples =
        shift_samples_max > 0.0 ? gen.uniform(-shift_samples_max, shift_samples_max) : 0.0;

    // Warp in index space: draw segment slopes, accumulate, then rescale so
    // the last knot lands exactly on the epoch end.
    std::vector<double> knot_pos(knots);
    std::vector<double> knot_val(knots);
    for (std::size_t i = 0; i < knots; ++i) {
      knot_pos[i] = static_cast<double>(i) * knot_step;
    }
    knot_val[0] = 0.0;
    for (std::size_t i = 1; i < knots; ++i) {
      const double slope = jitter.warp_strength > 0.0
                               ? gen.uniform(1.0 - jitter.warp_strength,
                                             1.0 + jitter.warp_strength)
                               : 1.0;
      knot_val[i] = knot_val[i - 1] + slope * knot_step;
    }
    const double rescale = n_max / knot_val[knots - 1];
    for (std::size_t i = 1; i < knots; ++i) knot_val[i] *= rescale;

    const double scale = jitter.amplitude_lo == jitter.amplitude_hi
                             ? jitter.amplitude_lo
                             : gen.uniform(jitter.amplitude_lo, jitter.amplitude_hi);

    Trial trial;
    trial.id = id;
    trial.label = label;
    trial.samples.resize(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
      const double idx = static_cast<double>(i);
      double warped = idx;
      if (jitter.warp_strength > 0.0) {
        std::size_t seg = std::min(static_cast<std::size_t>(idx / knot_step), knots - 2);
        const double frac = (idx - knot_pos[seg]) / knot_step;
        warped = knot_val[seg] + frac * (knot_val[seg + 1] - knot_val[seg]);
      }
      double value = scale * sample_at(tmpl, warped + shift_samples);
      if (jitter.noise_std_uv > 0.0) value += gen.gaussian(0.0, jitter.noise_std_uv);
      trial.samples[i] = value;
    }
    result.trials.trials.push_back(std::move(trial));

    TrialGroundTruth truth;
    truth.id = id;
    truth.shift_ms = shift_samples / spec.fs_hz * 1000.0;
    truth.scale = scale;
    truth.knot_times_s.resize(knots);
    truth.knot_values_s.resize(knots);
    const double prestim_s = spec.prestim_ms / 1000.0;
    for (std::size_t i = 0; i < knots; ++i) {
      truth.knot_times_s[i] = knot_pos[i] / spec.fs_hz - prestim_s;
      truth.knot_values_s[i] = knot_val[i] / spec.fs_hz - prestim_s;
    }
    result.ground_truth.push_back(std::move(truth));
  }
  return result;
}

}  // namespace erpavg
