// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

// Slow reference implementations used only by the tests.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "emgclean/signal.hpp"
#include "emgclean/wavelet.hpp"

namespace oracle {

inline std::vector<double> random_vector(std::size_t n, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, scale);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

inline std::vector<std::complex<double>> naive_dft(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n / 2 + 1);
  for (std::size_t k = 0; k < out.size(); ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double phase = -2.0 * std::numbers::pi * static_cast<double>(k * t % n) / static_cast<double>(n);
      acc += x[t] * std::polar(1.0, phase);
    }
    out[k] = acc;
  }
  return out;
}

// Zeroes DFT bins outside [lo, hi] Hz and transforms back.
inline std::vector<double> fft_mask(const std::vector<double>& x, double fs, double lo, double hi) {
  const std::size_t n = x.size();
  const auto bins = naive_dft(x);
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < bins.size(); ++k) {
    const double f = static_cast<double>(k) * fs / static_cast<double>(n);
    if (f < lo || f > hi) continue;
    const double mult = (k == 0 || 2 * k == n) ? 1.0 : 2.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double phase = 2.0 * std::numbers::pi * static_cast<double>(k * t % n) / static_cast<double>(n);
      out[t] += mult * (bins[k] * std::polar(1.0, phase)).real() / static_cast<double>(n);
    }
  }
  return out;
}

// Analysis as an explicit matrix product: row t of the low-pass operator
// holds g(k) at column (2t - k) mod n.
inline std::vector<double> circulant_filter(const std::vector<double>& x, const std::vector<double>& f) {
  const std::size_t n = x.size();
  std::vector<std::vector<double>> m(n / 2, std::vector<double>(n, 0.0));
  for (std::size_t t = 0; t < n / 2; ++t) {
    for (std::size_t k = 0; k < f.size(); ++k) {
      const auto col = ((2 * static_cast<long>(t) - static_cast<long>(k)) % static_cast<long>(n) + static_cast<long>(n)) %
                       static_cast<long>(n);
      m[t][static_cast<std::size_t>(col)] += f[k];
    }
  }
  std::vector<double> out(n / 2, 0.0);
  for (std::size_t t = 0; t < n / 2; ++t) {
    for (std::size_t c = 0; c < n; ++c) out[t] += m[t][c] * x[c];
  }
  return out;
}

// Packet tree with children 2j (high) and 2j + 1 (low).
inline std::vector<std::vector<double>> brute_wpd(const std::vector<double>& x,
                                                  const emgclean::WaveletFilter& filter, int level) {
  std::vector<std::vector<double>> nodes{x};
  for (int l = 0; l < level; ++l) {
    std::vector<std::vector<double>> next(nodes.size() * 2);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      next[2 * j] = circulant_filter(nodes[j], filter.highpass);
      next[2 * j + 1] = circulant_filter(nodes[j], filter.lowpass);
    }
    nodes = std::move(next);
  }
  return nodes;
}

inline double mirror_at(const std::vector<double>& v, long i) {
  const long n = static_cast<long>(v.size());
  if (i < 0) i = -i;
  if (i >= n) i = 2 * (n - 1) - i;
  return v[static_cast<std::size_t>(i)];
}

// Every (s, eta) pair and weight spelled out.
inline std::vector<double> nlm_double_loop(const std::vector<double>& v, int p, int m, double lambda) {
  const long n = static_cast<long>(v.size());
  const double patch_len = 2.0 * p + 1.0;
  std::vector<double> out(v.size());
  for (long s = 0; s < n; ++s) {
    double num = 0.0;
    double z = 0.0;
    for (long eta = s - m; eta <= s + m; ++eta) {
      if (eta < 0 || eta >= n) continue;
      double d2 = 0.0;
      for (long k = -p; k <= p; ++k) {
        const double diff = mirror_at(v, s + k) - mirror_at(v, eta + k);
        d2 += diff * diff;
      }
      const double w = std::exp(-d2 / (2.0 * patch_len * lambda * lambda));
      num += w * v[static_cast<std::size_t>(eta)];
      z += w;
    }
    out[static_cast<std::size_t>(s)] = num / z;
  }
  return out;
}

inline double scalar_std(const std::vector<double>& x) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double acc = 0.0;
  for (double v : x) acc += (v - mean) * (v - mean);
  return std::sqrt(acc / static_cast<double>(x.size()));
}

inline double scalar_sar(const std::vector<double>& d, const std::vector<double>& d_hat) {
  std::vector<double> r(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) r[i] = d[i] - d_hat[i];
  return 10.0 * std::log10(scalar_std(d) / scalar_std(r));
}

inline double entropy_loop(const std::vector<double>& c) {
  double acc = 0.0;
  for (double v : c) {
    const double e = v * v;
    if (e > 0.0) acc += e * std::log(e);
  }
  return acc;
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

inline std::vector<double> sine(std::size_t n, double freq, double fs, double amp = 1.0, double phase = 0.0) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = amp * std::sin(2.0 * std::numbers::pi * freq * static_cast<double>(i) / fs + phase);
  }
  return v;
}

inline double rms(const std::vector<double>& x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return std::sqrt(acc / static_cast<double>(x.size()));
}

}  // namespace oracle
