// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#include "emgclean/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "emgclean/error.hpp"
#include "wavelet_tables.hpp"

namespace emgclean {

namespace {

constexpr double kQmfTolerance = 1e-8;

std::vector<double> mirror_filter(const std::vector<double>& g) {
  const std::size_t n = g.size();
  std::vector<double> h(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    h[k] = sign * g[n - 1 - k];
  }
  return h;
}

std::vector<WaveletFilter> build_database() {
  std::vector<WaveletFilter> db;
  for (const auto& table : detail::filter_tables()) {
    WaveletFilter f{table.name, table.lowpass, mirror_filter(table.lowpass)};
    const auto r = qmf_residuals(f);
    if (r.sum > kQmfTolerance || r.energy > kQmfTolerance || r.shift > kQmfTolerance ||
        r.mirror > 1e-12) {
      throw std::logic_error("wavelet table '" + f.name + "' violates the QMF identities");
    }
    db.push_back(std::move(f));
  }
  return db;
}

std::size_t wrap(std::ptrdiff_t i, std::size_t n) {
  const auto m = static_cast<std::ptrdiff_t>(n);
  return static_cast<std::size_t>(((i % m) + m) % m);
}

void check_depth(std::size_t length, std::size_t filter_length, int level) {
  for (int l = 1; l <= level; ++l) {
    const std::size_t parent = length >> (l - 1);
    if (parent < filter_length) {
      throw DecompositionDepthError("level " + std::to_string(level) +
                                    " would split a node of " + std::to_string(parent) +
                                    " coefficients with a filter of length " +
                                    std::to_string(filter_length));
    }
  }
}

std::vector<double> periodic_pad(std::span<const double> x, std::size_t multiple) {
  const std::size_t n = x.size();
  const std::size_t padded = (n + multiple - 1) / multiple * multiple;
  std::vector<double> out(padded);
  for (std::size_t i = 0; i < padded; ++i) out[i] = x[i % n];
  return out;
}

}  // namespace

QmfResiduals qmf_residuals(const WaveletFilter& filter) {
  const auto& g = filter.lowpass;
  const auto& h = filter.highpass;
  QmfResiduals r;
  r.sum = std::abs(std::accumulate(g.begin(), g.end(), 0.0) - std::sqrt(2.0));
  r.energy = std::abs(std::inner_product(g.begin(), g.end(), g.begin(), 0.0) - 1.0);
  const std::size_t n = g.size();
  for (std::size_t m = 1; 2 * m < n; ++m) {
    double acc = 0.0;
    for (std::size_t k = 0; k + 2 * m < n; ++k) acc += g[k] * g[k + 2 * m];
    r.shift = std::max(r.shift, std::abs(acc));
  }
  if (h.size() != n) {
    r.mirror = std::numeric_limits<double>::infinity();
  } else {
    const auto expected = mirror_filter(g);
    for (std::size_t k = 0; k < n; ++k) r.mirror = std::max(r.mirror, std::abs(h[k] - expected[k]));
  }
  return r;
}

std::span<const WaveletFilter> wavelet_database() {
  static const std::vector<WaveletFilter> db = build_database();
  return db;
}

const WaveletFilter& wavelet_by_name(std::string_view name) {
  for (const auto& f : wavelet_database()) {
    if (f.name == name) return f;
  }
  throw ParameterError("unknown wavelet '" + std::string(name) + "'");
}

std::vector<std::string> wavelet_names() {
  std::vector<std::string> names;
  for (const auto& f : wavelet_database()) names.push_back(f.name);
  return names;
}

std::size_t SubbandSet::padded_length() const noexcept {
  return nodes.empty() ? 0 : nodes.front().size() << level;
}

SplitResult split_node(std::span<const double> x, const WaveletFilter& filter) {
  const std::size_t n = x.size();
  if (n == 0 || n % 2 != 0) throw ParameterError("split_node needs a non-empty even-length input");
  const auto& g = filter.lowpass;
  const auto& h = filter.highpass;
  const std::size_t half = n / 2;
  SplitResult out{std::vector<double>(half), std::vector<double>(half)};
  for (std::size_t t = 0; t < half; ++t) {
    double lo = 0.0;
    double hi = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double v = x[wrap(static_cast<std::ptrdiff_t>(2 * t) - static_cast<std::ptrdiff_t>(k), n)];
      lo += g[k] * v;
      hi += h[k] * v;
    }
    out.low[t] = lo;
    out.high[t] = hi;
  }
  return out;
}

std::vector<double> merge_nodes(std::span<const double> high, std::span<const double> low,
                                const WaveletFilter& filter) {
  if (high.size() != low.size() || high.empty()) {
    throw StructureError("sibling nodes must be non-empty and of equal length");
  }
  const auto& g = filter.lowpass;
  const auto& h = filter.highpass;
  const std::size_t n = 2 * low.size();
  std::vector<double> x(n, 0.0);
  for (std::size_t t = 0; t < low.size(); ++t) {
    for (std::size_t k = 0; k < g.size(); ++k) {
      const std::size_t m =
          wrap(static_cast<std::ptrdiff_t>(2 * t) - static_cast<std::ptrdiff_t>(k), n);
      x[m] += g[k] * low[t] + h[k] * high[t];
    }
  }
  return x;
}

SubbandSet wpd_refine(const SubbandSet& s, const WaveletFilter& filter) {
  SubbandSet out;
  out.level = s.level + 1;
  out.original_length = s.original_length;
  out.filter_name = filter.name;
  out.fs = s.fs;
  out.nodes.reserve(2 * s.nodes.size());
  for (const auto& node : s.nodes) {
    if (node.size() < filter.length()) {
      throw DecompositionDepthError("node of " + std::to_string(node.size()) +
                                    " coefficients is shorter than the filter");
    }
    auto [high, low] = split_node(node, filter);
    out.nodes.push_back(std::move(high));
    out.nodes.push_back(std::move(low));
  }
  return out;
}

SubbandSet wpd_decompose(const SignalBuffer& x, const WaveletFilter& filter, int level) {
  if (level < 0) throw ParameterError("decomposition level must be non-negative");
  if (level > 30) throw DecompositionDepthError("decomposition level too large");
  const std::size_t multiple = std::size_t{1} << level;
  auto padded = periodic_pad(x.samples(), multiple);
  check_depth(padded.size(), filter.length(), level);

  SubbandSet s;
  s.level = 0;
  s.original_length = x.size();
  s.filter_name = filter.name;
  s.fs = x.fs();
  s.nodes.push_back(std::move(padded));
  for (int l = 0; l < level; ++l) s = wpd_refine(s, filter);
  return s;
}

SignalBuffer wpd_reconstruct(const SubbandSet& s, const WaveletFilter& filter) {
  const std::size_t count = s.nodes.size();
  if (count == 0 || (count & (count - 1)) != 0) {
    throw StructureError("node count must be a power of two");
  }
  if (count != (std::size_t{1} << s.level)) {
    throw StructureError("node count does not match the decomposition level");
  }
  for (const auto& node : s.nodes) {
    if (node.size() != s.nodes.front().size() || node.empty()) {
      throw StructureError("all nodes must share one non-zero length");
    }
  }
  std::vector<std::vector<double>> nodes = s.nodes;
  while (nodes.size() > 1) {
    std::vector<std::vector<double>> parents;
    parents.reserve(nodes.size() / 2);
    for (std::size_t j = 0; j < nodes.size(); j += 2) {
      parents.push_back(merge_nodes(nodes[j], nodes[j + 1], filter));
    }
    nodes = std::move(parents);
  }
  auto& x = nodes.front();
  if (s.original_length > 0 && s.original_length < x.size()) x.resize(s.original_length);
  return SignalBuffer(std::move(x), s.fs);
}

double reconstruction_error(const SignalBuffer& x, const WaveletFilter& filter, int level) {
  const auto recon = wpd_reconstruct(wpd_decompose(x, filter, level), filter);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - recon[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(x.size()));
}

std::vector<WaveletErrorRow> reconstruction_error_table(std::span<const SignalBuffer> signals,
                                                        std::span<const WaveletFilter> candidates,
                                                        int level) {
  if (signals.empty() || candidates.empty()) {
    throw ParameterError("wavelet selection needs at least one signal and one candidate");
  }
  std::vector<WaveletErrorRow> rows;
  rows.reserve(candidates.size());
  for (const auto& filter : candidates) {
    std::vector<double> errors;
    errors.reserve(signals.size());
    for (const auto& x : signals) errors.push_back(reconstruction_error(x, filter, level));
    const double n = static_cast<double>(errors.size());
    const double mean = std::accumulate(errors.begin(), errors.end(), 0.0) / n;
    double var = 0.0;
    for (double e : errors) var += (e - mean) * (e - mean);
    rows.push_back({filter.name, mean, std::sqrt(var / n)});
  }
  return rows;
}

std::string argmin_wavelet(std::span<const WaveletErrorRow> rows) {
  if (rows.empty()) throw ParameterError("no candidate rows");
  const auto best = std::min_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.mean_error < b.mean_error;
  });
  return best->name;
}

std::string select_wavelet(std::span<const SignalBuffer> signals,
                           std::span<const WaveletFilter> candidates, int level) {
  const auto rows = reconstruction_error_table(signals, candidates, level);
  return argmin_wavelet(rows);
}

double subband_entropy(std::span<const double> coeffs) {
  double acc = 0.0;
  for (double c : coeffs) {
    const double e = c * c;
    if (e > 0.0) acc += e * std::log(e);
  }
  return acc;
}

std::vector<LevelEntropy> level_entropy_table(const SignalBuffer& x, const WaveletFilter& filter,
                                              int max_level) {
  if (max_level < 1) throw ParameterError("max_level must be at least 1");
  std::vector<double> approx = periodic_pad(x.samples(), std::size_t{1} << max_level);
  std::vector<LevelEntropy> table;
  for (int level = 1; level <= max_level; ++level) {
    if (approx.size() < filter.length()) break;
    auto [high, low] = split_node(approx, filter);
    table.push_back({level, subband_entropy(low), subband_entropy(high)});
    approx = std::move(low);
  }
  return table;
}

int select_level(const SignalBuffer& x, const WaveletFilter& filter, int max_level) {
  const auto table = level_entropy_table(x, filter, max_level);
  for (const auto& row : table) {
    if (row.approximation < row.detail) return row.level;
  }
  return table.empty() ? max_level : table.back().level;
}

}  // namespace emgclean
