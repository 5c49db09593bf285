// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emgclean/signal.hpp"

namespace emgclean {

/// An orthogonal two-channel filter pair. `lowpass` is the scaling filter
/// g(k) normalized to sum sqrt(2); `highpass` is h(k) = (-1)^k g(L-1-k).
struct WaveletFilter {
  std::string name;
  std::vector<double> lowpass;
  std::vector<double> highpass;

  std::size_t length() const noexcept { return lowpass.size(); }
};

/// Worst deviations from the orthogonal filter-bank identities.
struct QmfResiduals {
  double sum = 0.0;          // |sum g - sqrt(2)|
  double energy = 0.0;       // |sum g^2 - 1|
  double shift = 0.0;        // max over m != 0 of |sum g(k) g(k+2m)|
  double mirror = 0.0;       // max |h(k) - (-1)^k g(L-1-k)|
};

QmfResiduals qmf_residuals(const WaveletFilter& filter);

/// Every embedded filter, in catalogue order. Validated once on first use;
/// a table entry violating the identities aborts initialization.
std::span<const WaveletFilter> wavelet_database();
const WaveletFilter& wavelet_by_name(std::string_view name);
std::vector<std::string> wavelet_names();

/// Wavelet packet coefficients at one level.
///
/// Nodes follow the index convention of the packet recursion: the children
/// of node j are 2j (high-pass branch) and 2j + 1 (low-pass branch), so node
/// 0 is the all-high-pass path and node 2^level - 1 the all-low-pass path.
struct SubbandSet {
  int level = 0;
  std::vector<std::vector<double>> nodes;
  std::size_t original_length = 0;
  std::string filter_name;
  double fs = 1.0;

  std::size_t node_count() const noexcept { return nodes.size(); }
  std::size_t padded_length() const noexcept;
};

/// Index of the all-low-pass node at `level`.
constexpr std::size_t approximation_node(int level) noexcept {
  return (std::size_t{1} << level) - 1;
}

/// One analysis step under periodic extension: returns {high, low}.
/// `x` must have even length.
struct SplitResult {
  std::vector<double> high;
  std::vector<double> low;
};
SplitResult split_node(std::span<const double> x, const WaveletFilter& filter);

/// Inverse of split_node.
std::vector<double> merge_nodes(std::span<const double> high, std::span<const double> low,
                                const WaveletFilter& filter);

/// Full packet decomposition. Inputs whose length is not a multiple of
/// 2^level are extended by periodic wrap; the original length is kept so
/// wpd_reconstruct can trim the pad.
SubbandSet wpd_decompose(const SignalBuffer& x, const WaveletFilter& filter, int level);

/// Splits every node of `s` once more.
SubbandSet wpd_refine(const SubbandSet& s, const WaveletFilter& filter);

SignalBuffer wpd_reconstruct(const SubbandSet& s, const WaveletFilter& filter);

/// Root-mean-square difference between x and its decompose/reconstruct round trip.
double reconstruction_error(const SignalBuffer& x, const WaveletFilter& filter, int level);

struct WaveletErrorRow {
  std::string name;
  double mean_error = 0.0;
  double std_error = 0.0;
};

/// Mean and population standard deviation of reconstruction_error over
/// `signals`, one row per candidate in candidate order.
std::vector<WaveletErrorRow> reconstruction_error_table(std::span<const SignalBuffer> signals,
                                                        std::span<const WaveletFilter> candidates,
                                                        int level);

/// Name of the row with the smallest mean error; the first row wins ties.
std::string argmin_wavelet(std::span<const WaveletErrorRow> rows);

std::string select_wavelet(std::span<const SignalBuffer> signals,
                           std::span<const WaveletFilter> candidates, int level);

/// Non-normalized Shannon entropy sum E log E with E = c^2 (natural log,
/// 0 log 0 = 0).
double subband_entropy(std::span<const double> coeffs);

struct LevelEntropy {
  int level = 0;
  double approximation = 0.0;
  double detail = 0.0;
};

/// Entropies of the approximation and detail branches along the iterated
/// low-pass path, levels 1..max_level.
std::vector<LevelEntropy> level_entropy_table(const SignalBuffer& x, const WaveletFilter& filter,
                                              int max_level);

/// Smallest level whose approximation entropy falls below its detail
/// entropy; max_level when none does.
int select_level(const SignalBuffer& x, const WaveletFilter& filter, int max_level);

}  // namespace emgclean
