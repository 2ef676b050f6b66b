#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "erpavg/metrics.hpp"
#include "erpavg/types.hpp"

namespace erpavg {

// Ground-truth trial generator: a clean template plus per-trial latency
// shift, smooth monotone time warp, amplitude scale, and white noise. Every
// distorted quantity is recorded, so the generator doubles as the oracle for
// pipeline-level expectations.

struct GaussianBump {
  double center_ms{0.0};
  double width_ms{0.0};
  double amplitude_uv{0.0};
  Polarity polarity{Polarity::Positive};
};

struct TemplateSpec {
  std::size_t n{0};
  double fs_hz{0.0};
  double prestim_ms{0.0};
  std::vector<GaussianBump> bumps;
};

struct JitterSpec {
  double latency_shift_ms{0.0};   // uniform on +-latency_shift_ms
  double warp_strength{0.0};      // max local time-scale deviation, in [0, 1)
  double amplitude_lo{1.0};       // uniform scale range
  double amplitude_hi{1.0};
  double noise_std_uv{0.0};
  std::uint64_t seed{0};
  std::size_t warp_knots{8};
};

struct TrialGroundTruth {
  int id{0};
  double shift_ms{0.0};
  double scale{1.0};
  std::vector<double> knot_times_s;   // warp knot positions
  std::vector<double> knot_values_s;  // warped time at each knot
};

struct SynthResult {
  TrialSet trials;
  std::vector<TrialGroundTruth> ground_truth;
};

// Sum of signed Gaussian bumps evaluated on the epoch time axis.
std::vector<double> make_template(const TemplateSpec& spec);

// Draw order per trial (sub-seeded by trial id): shift, warp slopes, scale,
// then one noise value per sample. Trial n samples the template at
// warp(t_n) + shift by linear interpolation with constant edge extension.
SynthResult generate_trials(const TemplateSpec& spec, std::size_t t_count,
                            const JitterSpec& jitter, const std::string& label = "",
                            int id_offset = 0);

}  // namespace erpavg
