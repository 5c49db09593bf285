// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#include "emgclean/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "emgclean/error.hpp"
#include "emgclean/spectral.hpp"

namespace emgclean {

namespace {

constexpr double kRampSeconds = 0.010;
constexpr std::uint64_t kEmgStream = 0x454d47;  // "EMG"

std::size_t to_sample(double seconds, double fs, std::size_t n) {
  return std::min(n, static_cast<std::size_t>(std::ceil(seconds * fs - 1e-9)));
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::size_t SimulationSpec::sample_count() const {
  return samples_per_window(duration, fs);
}

void validate(const SimulationSpec& spec) {
  if (!(spec.duration > 0.0)) throw ParameterError("duration must be positive");
  if (!(spec.fs > 0.0)) throw ParameterError("sampling rate must be positive");
  spec.sample_count();
  if (spec.n_sinusoids < 1) throw ParameterError("need at least one sinusoid");
  for (const auto& band : {spec.eeg_band, spec.emg_band}) {
    if (!(band.lo >= 0.0) || band.hi < band.lo) throw ParameterError("invalid frequency band");
    if (!(spec.fs > 2.0 * band.hi)) throw ParameterError("fs must exceed twice every band edge");
  }
  std::vector<ArtifactWindow> sorted = spec.artifact_windows;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.start < b.start; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& w = sorted[i];
    if (!(w.start >= 0.0) || !(w.end <= spec.duration) || !(w.start < w.end)) {
      throw ParameterError("artifact windows must satisfy 0 <= start < end <= duration");
    }
    if (i > 0 && w.start < sorted[i - 1].end) {
      throw ParameterError("artifact windows must not overlap");
    }
  }
}

SimulationSpec burst_layout_spec(std::uint64_t seed, double snr_db) {
  SimulationSpec spec;
  spec.artifact_windows = {{0.0, 1.3}, {2.0, 4.2}, {7.6, 8.5}};
  spec.snr_db = snr_db;
  spec.seed = seed;
  return spec;
}

SignalBuffer simulate_clean_eeg(const SimulationSpec& spec) {
  validate(spec);
  const std::size_t n = spec.sample_count();
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> freq(spec.eeg_band.lo, spec.eeg_band.hi);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::vector<double> x(n, 0.0);
  for (int k = 0; k < spec.n_sinusoids; ++k) {
    const double f = spec.eeg_band.lo == spec.eeg_band.hi ? spec.eeg_band.lo : freq(rng);
    const double phi = phase(rng);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += std::sin(2.0 * std::numbers::pi * f * static_cast<double>(i) / spec.fs + phi);
    }
  }
  double power = 0.0;
  for (double v : x) power += v * v;
  const double rms = std::sqrt(power / static_cast<double>(n));
  if (rms > 0.0) {
    for (double& v : x) v /= rms;
  }
  return SignalBuffer(std::move(x), spec.fs);
}

std::vector<bool> artifact_mask(const std::vector<ArtifactWindow>& windows, std::size_t n,
                                double fs) {
  std::vector<bool> mask(n, false);
  for (const auto& w : windows) {
    const std::size_t first = to_sample(w.start, fs, n);
    const std::size_t last = to_sample(w.end, fs, n);
    for (std::size_t i = first; i < last; ++i) mask[i] = true;
  }
  return mask;
}

SignalBuffer simulate_emg(const SimulationSpec& spec) {
  validate(spec);
  const std::size_t n = spec.sample_count();
  if (spec.artifact_windows.empty()) return SignalBuffer(std::vector<double>(n, 0.0), spec.fs);

  std::mt19937_64 rng(derive_seed(spec.seed, kEmgStream));
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> noise(n);
  for (double& v : noise) v = gauss(rng);

  // Ideal band-pass: zero every DFT bin outside emg_band.
  auto bins = forward_rfft(noise);
  for (std::size_t k = 0; k < bins.size(); ++k) {
    const double f = static_cast<double>(k) * spec.fs / static_cast<double>(n);
    if (f < spec.emg_band.lo || f > spec.emg_band.hi) bins[k] = 0.0;
  }
  noise = inverse_rfft(bins, n);

  std::vector<double> gate(n, 0.0);
  const std::size_t ramp = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(kRampSeconds * spec.fs)));
  for (const auto& w : spec.artifact_windows) {
    const std::size_t first = to_sample(w.start, spec.fs, n);
    const std::size_t last = to_sample(w.end, spec.fs, n);
    const std::size_t len = last - first;
    for (std::size_t i = first; i < last; ++i) {
      const std::size_t edge = std::min(i - first, last - 1 - i);
      double g = 1.0;
      if (edge < ramp && len > 2 * ramp) {
        g = 0.5 * (1.0 - std::cos(std::numbers::pi * static_cast<double>(edge + 1) /
                                  static_cast<double>(ramp + 1)));
      }
      gate[i] = g;
    }
  }

  double power = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    noise[i] *= gate[i];
    if (gate[i] > 0.0) {
      power += noise[i] * noise[i];
      ++count;
    }
  }
  // The clean trace is unit-RMS, so its power is 1.
  const double target = std::pow(10.0, -spec.snr_db / 10.0);
  const double scale = (count > 0 && power > 0.0)
                           ? std::sqrt(target / (power / static_cast<double>(count)))
                           : 0.0;
  for (double& v : noise) v *= scale;
  return SignalBuffer(std::move(noise), spec.fs);
}

SignalBuffer compose_ceeg(const SignalBuffer& clean, const SignalBuffer& emg) {
  if (clean.size() != emg.size() || clean.fs() != emg.fs()) {
    throw ParameterError("clean and artifact signals must share length and sampling rate");
  }
  std::vector<double> y(clean.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = clean[i] + emg[i];
  return SignalBuffer(std::move(y), clean.fs());
}

SimulatedTrial simulate_trial(const SimulationSpec& spec) {
  auto clean = simulate_clean_eeg(spec);
  auto emg = simulate_emg(spec);
  auto corrupted = compose_ceeg(clean, emg);
  return {spec, std::move(clean), std::move(emg), std::move(corrupted)};
}

std::vector<LabeledSignal> build_dataset(int n_per_class, std::uint64_t seed, double snr_db,
                                         double duration, double fs) {
  if (n_per_class < 1) throw ParameterError("need at least one trial per class");
  std::vector<LabeledSignal> out;
  out.reserve(2 * static_cast<std::size_t>(n_per_class));
  for (int cls = 0; cls < 2; ++cls) {
    for (int i = 0; i < n_per_class; ++i) {
      const auto index = static_cast<std::uint64_t>(cls * n_per_class + i);
      SimulationSpec spec;
      spec.duration = duration;
      spec.fs = fs;
      spec.snr_db = snr_db;
      spec.seed = derive_seed(seed, index);
      spec.artifact_windows.clear();
      const bool corrupted = cls == 1;
      if (corrupted) {
        // One to three bursts, one per equal slot of the trace.
        std::mt19937_64 rng(derive_seed(spec.seed, 0x57494e));
        const int bursts = std::uniform_int_distribution<int>(1, 3)(rng);
        const double slot = duration / bursts;
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int b = 0; b < bursts; ++b) {
          const double length = slot * (0.3 + 0.6 * unit(rng));
          const double start = b * slot + (slot - length) * unit(rng);
          spec.artifact_windows.push_back({start, std::min(start + length, duration)});
        }
      }
      const auto trial = simulate_trial(spec);
      out.push_back({corrupted ? trial.corrupted : trial.clean,
                     corrupted ? SegmentLabel::kCorrupted : SegmentLabel::kClean, spec});
    }
  }
  return out;
}

}  // namespace emgclean
