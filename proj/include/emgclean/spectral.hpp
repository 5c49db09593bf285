// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#pragma once

#include <complex>
#include <span>
#include <vector>

namespace emgclean {

/// One-sided DFT of a real sequence: n/2 + 1 bins, unnormalized.
std::vector<std::complex<double>> forward_rfft(std::span<const double> x);

/// Inverse of forward_rfft for a sequence of length n, including the 1/n factor.
std::vector<double> inverse_rfft(std::span<const std::complex<double>> bins, std::size_t n);

}  // namespace emgclean
