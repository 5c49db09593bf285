// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "emgclean/signal.hpp"

namespace emgclean {

/// Pearson correlation. Throws DegenerateError for a constant input.
double correlation_coefficient(std::span<const double> a, std::span<const double> b);
double correlation_coefficient(const SignalBuffer& a, const SignalBuffer& b);

/// Global structural similarity: luminance x contrast x structure terms
/// from whole-signal means, standard deviations and covariance, without
/// stabilizing constants.
double ssim_1d(std::span<const double> a, std::span<const double> b);
double ssim_1d(const SignalBuffer& a, const SignalBuffer& b);

/// Histogram index of every sample: `bins` uniform bins over [min, max].
std::vector<int> histogram_bins(std::span<const double> x, int bins);

/// Plug-in entropy (nats) of the uniform-bin histogram.
double histogram_entropy(std::span<const double> x, int bins);

/// Plug-in mutual information (nats) from a bins x bins joint histogram.
double mutual_information(std::span<const double> a, std::span<const double> b, int bins = 64);
double mutual_information(const SignalBuffer& a, const SignalBuffer& b, int bins = 64);

struct PsdPoint {
  double frequency = 0.0;
  double power = 0.0;
};

/// Averaged periodogram: 256-sample Hann segments with 50% overlap, mean
/// removed per segment, one-sided density in units^2 / Hz.
std::vector<PsdPoint> psd(const SignalBuffer& a);

/// Signal-to-artifact ratio of an estimate against a reference (dB).
double reference_sar(std::span<const double> reference, std::span<const double> estimate);

struct ChannelReport {
  std::optional<double> cc;
  std::optional<double> ssim;
  double mi = 0.0;
  std::optional<double> sar_db;
};

/// Averages over channels plus the per-channel breakdown. Fields that need
/// a clean reference are empty when none was supplied.
struct EvaluationReport {
  std::optional<double> cc;
  std::optional<double> ssim;
  double mi = 0.0;
  std::optional<double> sar_db;
  int mi_bins = 64;
  std::vector<ChannelReport> channels;
};

}  // namespace emgclean
