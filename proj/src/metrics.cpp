// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#include "emgclean/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "emgclean/error.hpp"
#include "emgclean/spectral.hpp"

namespace emgclean {

namespace {

constexpr std::size_t kPsdSegment = 256;

struct Moments {
  double mean_a, mean_b, var_a, var_b, cov;
};

Moments moments(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) {
    throw ParameterError("signals must be non-empty and of equal length");
  }
  const double n = static_cast<double>(a.size());
  Moments m{};
  m.mean_a = std::accumulate(a.begin(), a.end(), 0.0) / n;
  m.mean_b = std::accumulate(b.begin(), b.end(), 0.0) / n;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - m.mean_a;
    const double db = b[i] - m.mean_b;
    m.var_a += da * da;
    m.var_b += db * db;
    m.cov += da * db;
  }
  m.var_a /= n;
  m.var_b /= n;
  m.cov /= n;
  return m;
}

}  // namespace

double correlation_coefficient(std::span<const double> a, std::span<const double> b) {
  const auto m = moments(a, b);
  if (!(m.var_a > 0.0) || !(m.var_b > 0.0)) {
    throw DegenerateError("correlation is undefined for a constant signal");
  }
  return std::clamp(m.cov / std::sqrt(m.var_a * m.var_b), -1.0, 1.0);
}

double correlation_coefficient(const SignalBuffer& a, const SignalBuffer& b) {
  return correlation_coefficient(a.samples(), b.samples());
}

double ssim_1d(std::span<const double> a, std::span<const double> b) {
  const auto m = moments(a, b);
  if (!(m.var_a > 0.0) || !(m.var_b > 0.0)) {
    throw DegenerateError("structural similarity is undefined for a constant signal");
  }
  const double sa = std::sqrt(m.var_a);
  const double sb = std::sqrt(m.var_b);
  const double mean_sq = m.mean_a * m.mean_a + m.mean_b * m.mean_b;
  // Both means zero: the luminance term is 0/0 and taken as 1 (identical).
  const double luminance = mean_sq > 0.0 ? 2.0 * m.mean_a * m.mean_b / mean_sq : 1.0;
  const double contrast = 2.0 * sa * sb / (m.var_a + m.var_b);
  const double structure = m.cov / (sa * sb);
  return luminance * contrast * structure;
}

double ssim_1d(const SignalBuffer& a, const SignalBuffer& b) {
  return ssim_1d(a.samples(), b.samples());
}

std::vector<int> histogram_bins(std::span<const double> x, int bins) {
  if (bins < 2) throw ParameterError("need at least two histogram bins");
  if (x.empty()) throw ParameterError("cannot bin an empty signal");
  const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
  const double lo = *lo_it;
  const double width = *hi_it - lo;
  std::vector<int> idx(x.size(), 0);
  if (width > 0.0) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const int k = static_cast<int>(std::floor((x[i] - lo) / width * bins));
      idx[i] = std::clamp(k, 0, bins - 1);
    }
  }
  return idx;
}

double histogram_entropy(std::span<const double> x, int bins) {
  const auto idx = histogram_bins(x, bins);
  std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
  for (int k : idx) counts[static_cast<std::size_t>(k)] += 1.0;
  const double n = static_cast<double>(x.size());
  double h = 0.0;
  for (double c : counts) {
    if (c > 0.0) {
      const double p = c / n;
      h -= p * std::log(p);
    }
  }
  return h;
}

double mutual_information(std::span<const double> a, std::span<const double> b, int bins) {
  if (a.size() != b.size()) throw ParameterError("signals must have equal length");
  const auto ia = histogram_bins(a, bins);
  const auto ib = histogram_bins(b, bins);
  const auto nb = static_cast<std::size_t>(bins);
  std::vector<double> joint(nb * nb, 0.0);
  std::vector<double> pa(nb, 0.0);
  std::vector<double> pb(nb, 0.0);
  for (std::size_t i = 0; i < ia.size(); ++i) {
    const auto x = static_cast<std::size_t>(ia[i]);
    const auto y = static_cast<std::size_t>(ib[i]);
    joint[x * nb + y] += 1.0;
    pa[x] += 1.0;
    pb[y] += 1.0;
  }
  const double n = static_cast<double>(a.size());
  double mi = 0.0;
  for (std::size_t x = 0; x < nb; ++x) {
    for (std::size_t y = 0; y < nb; ++y) {
      const double c = joint[x * nb + y];
      if (c == 0.0) continue;
      const double p = c / n;
      mi += p * (std::log(p) - std::log(pa[x] / n) - std::log(pb[y] / n));
    }
  }
  return std::max(mi, 0.0);
}

double mutual_information(const SignalBuffer& a, const SignalBuffer& b, int bins) {
  return mutual_information(a.samples(), b.samples(), bins);
}

std::vector<PsdPoint> psd(const SignalBuffer& a) {
  const auto x = a.samples();
  if (x.size() < kPsdSegment) throw ParameterError("psd needs at least 256 samples");
  std::vector<double> window(kPsdSegment);
  for (std::size_t i = 0; i < kPsdSegment; ++i) {
    window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                     static_cast<double>(kPsdSegment));
  }
  const double window_power = std::inner_product(window.begin(), window.end(), window.begin(), 0.0);
  const std::size_t hop = kPsdSegment / 2;
  const std::size_t bins = kPsdSegment / 2 + 1;
  std::vector<double> acc(bins, 0.0);
  std::size_t segments = 0;
  std::vector<double> buf(kPsdSegment);
  for (std::size_t start = 0; start + kPsdSegment <= x.size(); start += hop) {
    const double mean =
        std::accumulate(x.begin() + static_cast<std::ptrdiff_t>(start),
                        x.begin() + static_cast<std::ptrdiff_t>(start + kPsdSegment), 0.0) /
        static_cast<double>(kPsdSegment);
    for (std::size_t i = 0; i < kPsdSegment; ++i) buf[i] = (x[start + i] - mean) * window[i];
    const auto spec = forward_rfft(buf);
    for (std::size_t k = 0; k < bins; ++k) acc[k] += std::norm(spec[k]);
    ++segments;
  }
  std::vector<PsdPoint> out(bins);
  const double fs = a.fs();
  for (std::size_t k = 0; k < bins; ++k) {
    const bool edge = k == 0 || k == bins - 1;
    const double scale = (edge ? 1.0 : 2.0) / (fs * window_power * static_cast<double>(segments));
    out[k] = {static_cast<double>(k) * fs / static_cast<double>(kPsdSegment), acc[k] * scale};
  }
  return out;
}

double reference_sar(std::span<const double> reference, std::span<const double> estimate) {
  if (reference.size() != estimate.size() || reference.empty()) {
    throw ParameterError("signals must be non-empty and of equal length");
  }
  std::vector<double> residual(reference.size());
  for (std::size_t i = 0; i < residual.size(); ++i) residual[i] = reference[i] - estimate[i];
  const auto ref = moments(reference, reference);
  const auto res = moments(residual, residual);
  if (!(res.var_a > 0.0)) throw DegenerateError("estimate equals the reference; SAR is unbounded");
  return 10.0 * std::log10(std::sqrt(ref.var_a) / std::sqrt(res.var_a));
}

}  // namespace emgclean
