// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "emgclean/nlm.hpp"
#include "emgclean/signal.hpp"
#include "emgclean/wavelet.hpp"

namespace emgclean {

/// literal: mean per-node SAR between each subband and its filtered version.
/// oracle: SAR of the reconstructed signal against a known clean reference
/// (simulation only).
enum class FitnessMode { kLiteral, kOracle };

std::string_view to_string(FitnessMode mode) noexcept;
FitnessMode fitness_mode_from_string(std::string_view text);

/// Upper bound on any SAR used as fitness; a zero residual maps here.
inline constexpr double kSarCapDb = 120.0;

struct FitnessSpec {
  FitnessMode mode = FitnessMode::kLiteral;
  SubbandSet subbands;
  int patch_half_width = 4;
  int search_half_width = 50;
  std::optional<SignalBuffer> reference;
  std::string filter_name;
};

/// SAR clamped to kSarCapDb, with a degenerate residual counted as the cap.
double capped_sar(std::span<const double> d, std::span<const double> d_hat);

/// Scores bandwidth vectors for one subband set. Patch distances of every
/// node are computed at construction and reused across evaluations.
class BandwidthFitness {
 public:
  explicit BandwidthFitness(FitnessSpec spec);

  double operator()(std::span<const double> lambdas) const;

  /// Subbands filtered with `lambdas`.
  SubbandSet corrected(std::span<const double> lambdas) const;

  /// Capped SAR of every node for `lambdas` (the literal-mode terms).
  std::vector<double> node_sar(std::span<const double> lambdas) const;

  std::size_t dimension() const noexcept { return plans_.size(); }
  const FitnessSpec& spec() const noexcept { return spec_; }

 private:
  FitnessSpec spec_;
  const WaveletFilter* filter_;
  std::vector<NlmPlan> plans_;
};

double evaluate_fitness(std::span<const double> lambdas, const FitnessSpec& spec);

}  // namespace emgclean
