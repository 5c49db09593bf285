// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#pragma once

#include <cstdint>
#include <vector>

#include "emgclean/signal.hpp"

namespace emgclean {

/// Artifact burst, in seconds from the start of the signal.
struct ArtifactWindow {
  double start = 0.0;
  double end = 0.0;

  friend bool operator==(const ArtifactWindow&, const ArtifactWindow&) = default;
};

struct FrequencyBand {
  double lo = 0.0;
  double hi = 0.0;

  friend bool operator==(const FrequencyBand&, const FrequencyBand&) = default;
};

struct SimulationSpec {
  double duration = 10.0;
  double fs = 250.0;
  int n_sinusoids = 20;
  FrequencyBand eeg_band{0.1, 30.0};
  FrequencyBand emg_band{5.0, 45.0};
  /// Empty means an uncontaminated trial.
  std::vector<ArtifactWindow> artifact_windows{{0.0, 10.0}};
  /// Clean power over artifact power inside the windows.
  double snr_db = -3.0;
  std::uint64_t seed = 1;

  std::size_t sample_count() const;

  friend bool operator==(const SimulationSpec&, const SimulationSpec&) = default;
};

/// Throws ParameterError on an inconsistent spec.
void validate(const SimulationSpec& spec);

/// The three-burst layout 0-1.3 s, 2-4.2 s and 7.6-8.5 s of a 10 s trace.
SimulationSpec burst_layout_spec(std::uint64_t seed, double snr_db = -3.0);

/// Sum of n_sinusoids unit sinusoids with uniform random frequencies in
/// eeg_band and phases in [0, 2 pi), scaled to unit RMS.
SignalBuffer simulate_clean_eeg(const SimulationSpec& spec);

/// Gaussian noise restricted to emg_band, gated to the artifact windows with
/// 10 ms raised-cosine edges and scaled so that in-window power equals the
/// (unit) clean power divided by 10^(snr_db / 10).
SignalBuffer simulate_emg(const SimulationSpec& spec);

/// Pointwise sum.
SignalBuffer compose_ceeg(const SignalBuffer& clean, const SignalBuffer& emg);

/// 1 inside artifact windows (0 outside), without ramps.
std::vector<bool> artifact_mask(const std::vector<ArtifactWindow>& windows, std::size_t n,
                                double fs);

struct SimulatedTrial {
  SimulationSpec spec;
  SignalBuffer clean;
  SignalBuffer emg;
  SignalBuffer corrupted;
};

SimulatedTrial simulate_trial(const SimulationSpec& spec);

struct LabeledSignal {
  SignalBuffer signal;
  SegmentLabel label = SegmentLabel::kUnknown;
  SimulationSpec spec;
};

/// n_per_class clean trials followed by n_per_class corrupted ones. Every
/// trial gets its own seed derived from `seed`; corrupted trials carry one
/// to three bursts at random positions.
std::vector<LabeledSignal> build_dataset(int n_per_class, std::uint64_t seed, double snr_db = -3.0,
                                         double duration = 10.0, double fs = 250.0);

/// Well-mixed 64-bit seed derivation (splitmix64 of seed + stream).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

}  // namespace emgclean
