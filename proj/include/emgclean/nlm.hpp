// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "emgclean/wavelet.hpp"

namespace emgclean {

/// Patch half-width P, search half-width M and bandwidth lambda.
struct NlmParams {
  int patch_half_width = 4;
  int search_half_width = 50;
  double bandwidth = 0.05;
};

/// Throws ParameterError unless P >= 1, M >= P and lambda > 0.
void validate(const NlmParams& params);

/// Patch distances of one coefficient vector, computed once so the filter
/// can be re-evaluated cheaply for many bandwidths.
///
/// For each sample s the search window is [s - M, s + M] intersected with
/// the valid range, the self sample included. Patches always span 2P + 1
/// samples; indices past either end are mirrored about the end sample.
class NlmPlan {
 public:
  NlmPlan(std::span<const double> v, int patch_half_width, int search_half_width);

  /// Weighted non-local average of every sample at bandwidth lambda.
  std::vector<double> apply(double bandwidth) const;

  std::size_t size() const noexcept { return values_.size(); }
  int patch_half_width() const noexcept { return patch_; }
  int search_half_width() const noexcept { return search_; }

 private:
  std::vector<double> values_;
  int patch_;
  int search_;
  // Per sample: offset into distances_ and first window index.
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> window_begin_;
  std::vector<double> distances_;
};

std::vector<double> nlm_denoise(std::span<const double> v, const NlmParams& params);

/// Signal-to-artifact ratio 10 log10(std(d) / std(d - d_hat)) in dB.
/// Throws DegenerateError when the residual has zero spread.
double sar(std::span<const double> d, std::span<const double> d_hat);

/// Denoises node j of `s` with bandwidth lambdas[j].
SubbandSet correct_subbands(const SubbandSet& s, int patch_half_width, int search_half_width,
                            std::span<const double> lambdas);

/// Population standard deviation.
double population_std(std::span<const double> x);

}  // namespace emgclean
