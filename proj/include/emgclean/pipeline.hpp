// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "emgclean/classifier.hpp"
#include "emgclean/fitness.hpp"
#include "emgclean/metrics.hpp"
#include "emgclean/optimizer.hpp"
#include "emgclean/signal.hpp"
#include "emgclean/simulator.hpp"

namespace emgclean {

inline constexpr int kAutoLevelCap = 5;

struct PipelineConfig {
  /// Wavelet name, or "auto" to pick by minimum reconstruction error.
  std::string wavelet = "fk6";
  /// Decomposition level; std::nullopt selects it by the entropy rule.
  std::optional<int> level = 3;
  int patch_half_width = 4;
  int search_half_width = 50;
  SwarmConfig swarm;
  FitnessMode fitness = FitnessMode::kLiteral;
  double segment_seconds = 10.0;
  int mi_bins = 64;
  std::uint64_t seed = 1;
  /// Zero-phase band applied to every channel before classification.
  std::optional<FrequencyBand> prefilter;
};

struct DenoiseTrace {
  std::size_t channel = 0;
  std::size_t start_sample = 0;
  SegmentLabel label = SegmentLabel::kUnknown;
  FitnessMode fitness = FitnessMode::kLiteral;
  SwarmAlgorithm algorithm = SwarmAlgorithm::kGwo;
  std::string wavelet;
  int level = 0;
  /// Empty for clean segments, which pass through untouched.
  std::vector<double> lambdas;
  std::vector<double> subband_sar;
  std::vector<double> history;
  double best_fitness = 0.0;
};

struct SegmentResult {
  Segment segment;
  DenoiseTrace trace;
};

/// Wavelet and level actually used once "auto" settings are resolved.
struct ResolvedBasis {
  std::string wavelet;
  int level = 0;
};

ResolvedBasis resolve_basis(const SignalBuffer& x, const PipelineConfig& cfg);

/// Classifies the segment; corrupted segments are decomposed, their
/// per-node bandwidths tuned by the swarm optimizer, filtered and
/// reconstructed. Clean segments are returned sample-for-sample unchanged.
SegmentResult denoise_segment(const Segment& seg, const PipelineConfig& cfg, const SvmModel& model,
                              const std::optional<SignalBuffer>& reference = std::nullopt);

struct RecordingResult {
  Recording recording;
  std::vector<DenoiseTrace> traces;
};

/// Applies denoise_segment to every full segment of every channel. Samples
/// past the last full segment are copied through. "auto" basis choices are
/// made on the first corrupted segment and reused.
RecordingResult denoise_recording(const Recording& rec, const PipelineConfig& cfg,
                                  const SvmModel& model,
                                  const std::optional<Recording>& reference = std::nullopt);

/// CC/SSIM/SAR against the reference when given, MI against the corrupted
/// input always.
EvaluationReport evaluate_run(const Recording& corrupted, const Recording& denoised,
                              const std::optional<Recording>& reference, int mi_bins = 64);

/// Correlation restricted to samples outside every artifact window.
double clean_window_cc(const SignalBuffer& corrupted, const SignalBuffer& denoised,
                       const std::vector<ArtifactWindow>& windows);

}  // namespace emgclean
