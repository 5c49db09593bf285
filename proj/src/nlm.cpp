// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#include "emgclean/nlm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "emgclean/error.hpp"

namespace emgclean {

void validate(const NlmParams& params) {
  if (params.patch_half_width < 1) throw ParameterError("patch half-width must be >= 1");
  if (params.search_half_width < params.patch_half_width) {
    throw ParameterError("search half-width must be >= patch half-width");
  }
  if (!(params.bandwidth > 0.0) || !std::isfinite(params.bandwidth)) {
    throw ParameterError("bandwidth must be positive");
  }
}

NlmPlan::NlmPlan(std::span<const double> v, int patch_half_width, int search_half_width)
    : values_(v.begin(), v.end()), patch_(patch_half_width), search_(search_half_width) {
  validate(NlmParams{patch_, search_, 1.0});
  const auto n = static_cast<std::ptrdiff_t>(values_.size());
  if (n <= 2 * patch_ + 1) throw ParameterError("vector must be longer than one patch (2P + 1)");

  auto at = [&](std::ptrdiff_t i) {
    if (i < 0) i = -i;
    if (i >= n) i = 2 * (n - 1) - i;
    return values_[static_cast<std::size_t>(i)];
  };

  offsets_.resize(values_.size() + 1);
  window_begin_.resize(values_.size());
  for (std::ptrdiff_t s = 0; s < n; ++s) {
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, s - search_);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, s + search_);
    window_begin_[static_cast<std::size_t>(s)] = static_cast<std::size_t>(lo);
    offsets_[static_cast<std::size_t>(s)] = distances_.size();
    for (std::ptrdiff_t eta = lo; eta <= hi; ++eta) {
      double d2 = 0.0;
      for (std::ptrdiff_t delta = -patch_; delta <= patch_; ++delta) {
        const double diff = at(s + delta) - at(eta + delta);
        d2 += diff * diff;
      }
      distances_.push_back(d2);
    }
  }
  offsets_.back() = distances_.size();
}

std::vector<double> NlmPlan::apply(double bandwidth) const {
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw ParameterError("bandwidth must be positive");
  }
  const double patch_length = 2.0 * patch_ + 1.0;
  const double scale = 1.0 / (2.0 * patch_length * bandwidth * bandwidth);
  std::vector<double> out(values_.size());
  for (std::size_t s = 0; s < values_.size(); ++s) {
    const std::size_t first = offsets_[s];
    const std::size_t last = offsets_[s + 1];
    // log-weights are -d2 * scale; shift by the largest one before exp.
    double min_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t k = first; k < last; ++k) min_d2 = std::min(min_d2, distances_[k]);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = first; k < last; ++k) {
      const double w = std::exp(-(distances_[k] - min_d2) * scale);
      num += w * values_[window_begin_[s] + (k - first)];
      den += w;
    }
    out[s] = num / den;
  }
  return out;
}

std::vector<double> nlm_denoise(std::span<const double> v, const NlmParams& params) {
  validate(params);
  return NlmPlan(v, params.patch_half_width, params.search_half_width).apply(params.bandwidth);
}

double population_std(std::span<const double> x) {
  if (x.empty()) throw ParameterError("standard deviation of an empty vector");
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double acc = 0.0;
  for (double v : x) acc += (v - mean) * (v - mean);
  return std::sqrt(acc / n);
}

double sar(std::span<const double> d, std::span<const double> d_hat) {
  if (d.size() != d_hat.size() || d.empty()) {
    throw ParameterError("sar needs two non-empty vectors of equal length");
  }
  std::vector<double> residual(d.size());
  std::transform(d.begin(), d.end(), d_hat.begin(), residual.begin(), std::minus<>());
  const double res_std = population_std(residual);
  if (!(res_std > 0.0)) throw DegenerateError("residual has zero spread; SAR is unbounded");
  return 10.0 * std::log10(population_std(d) / res_std);
}

SubbandSet correct_subbands(const SubbandSet& s, int patch_half_width, int search_half_width,
                            std::span<const double> lambdas) {
  if (lambdas.size() != s.node_count()) {
    throw ParameterError("need one bandwidth per subband node");
  }
  SubbandSet out = s;
  for (std::size_t j = 0; j < s.node_count(); ++j) {
    out.nodes[j] = nlm_denoise(s.nodes[j], {patch_half_width, search_half_width, lambdas[j]});
  }
  return out;
}

}  // namespace emgclean
