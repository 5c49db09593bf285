// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "emgclean/error.hpp"
#include "emgclean/simulator.hpp"
#include "emgclean/spectral.hpp"
#include "emgclean/wavelet.hpp"
#include "oracles.hpp"

using namespace emgclean;

namespace {

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double energy(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return acc;
}

bool feasible(std::size_t length, std::size_t filter_length, int level) {
  std::size_t padded = length;
  const std::size_t block = std::size_t{1} << level;
  if (padded % block != 0) padded += block - padded % block;
  return level == 0 || (padded >> (level - 1)) >= filter_length;
}

}  // namespace

TEST_CASE("catalogue holds every named family member") {
  const auto names = wavelet_names();
  std::vector<std::string> expected{"haar"};
  for (int i = 2; i <= 12; ++i) expected.push_back("db" + std::to_string(i));
  for (int i = 2; i <= 8; ++i) expected.push_back("sym" + std::to_string(i));
  for (int i = 1; i <= 5; ++i) expected.push_back("coif" + std::to_string(i));
  for (int i : {4, 6, 8, 14, 18, 22}) expected.push_back("fk" + std::to_string(i));
  for (const auto& name : expected) {
    CHECK_MESSAGE(std::find(names.begin(), names.end(), name) != names.end(), name);
  }
  CHECK(wavelet_by_name("fk6").length() == 6);
  CHECK(wavelet_by_name("coif5").length() == 30);
  CHECK(wavelet_by_name("db12").length() == 24);
  CHECK_THROWS_AS(wavelet_by_name("db99"), ParameterError);
}

TEST_CASE("every filter satisfies the orthogonality identities") {
  for (const auto& f : wavelet_database()) {
    const auto r = qmf_residuals(f);
    CHECK_MESSAGE(r.sum < 1e-8, f.name);
    CHECK_MESSAGE(r.energy < 1e-8, f.name);
    CHECK_MESSAGE(r.shift < 1e-8, f.name);
    CHECK_MESSAGE(r.mirror < 1e-12, f.name);
  }
}

TEST_CASE("qmf_residuals detects a broken filter") {
  WaveletFilter bad = wavelet_by_name("db2");
  bad.lowpass[0] += 1e-4;
  const auto r = qmf_residuals(bad);
  CHECK(r.sum > 1e-8);
  CHECK(r.mirror > 1e-8);
}

TEST_CASE("closed-form filters") {
  const double s3 = std::sqrt(3.0);
  const double d = 4.0 * std::numbers::sqrt2;
  const std::vector<double> db2{(1 + s3) / d, (3 + s3) / d, (3 - s3) / d, (1 - s3) / d};
  const auto& f = wavelet_by_name("db2");
  for (std::size_t k = 0; k < 4; ++k) CHECK(f.lowpass[k] == doctest::Approx(db2[k]).epsilon(1e-14));
  CHECK(wavelet_by_name("haar").lowpass[0] == doctest::Approx(1.0 / std::numbers::sqrt2));
  // Published fk4 analysis taps.
  const auto& fk4 = wavelet_by_name("fk4");
  CHECK(fk4.lowpass[0] == doctest::Approx(0.6539275555697651).epsilon(1e-8));
  CHECK(fk4.lowpass[1] == doctest::Approx(0.7532724928394942).epsilon(1e-8));
}

TEST_CASE("level 0 is the identity") {
  const SignalBuffer x(oracle::random_vector(37, 1), 250.0);
  const auto s = wpd_decompose(x, wavelet_by_name("db4"), 0);
  REQUIRE(s.node_count() == 1);
  CHECK(s.nodes[0] == x.vector());
  CHECK(reconstruction_error(x, wavelet_by_name("db4"), 0) == 0.0);
}

TEST_CASE("constant signal under haar") {
  const double c = 3.25;
  const SignalBuffer x(std::vector<double>(8, c), 250.0);
  const auto s = wpd_decompose(x, wavelet_by_name("haar"), 1);
  REQUIRE(s.node_count() == 2);
  for (double v : s.nodes[0]) CHECK(v == doctest::Approx(0.0).epsilon(1e-15));
  for (double v : s.nodes[approximation_node(1)]) CHECK(v == doctest::Approx(c * std::numbers::sqrt2));
}

TEST_CASE("decomposition matches the explicit matrix oracle") {
  const auto x = oracle::random_vector(16, 7);
  for (const char* name : {"db2", "haar", "fk4"}) {
    const auto& f = wavelet_by_name(name);
    const auto s = wpd_decompose(SignalBuffer(x, 250.0), f, 2);
    const auto ref = oracle::brute_wpd(x, f, 2);
    REQUIRE(s.node_count() == ref.size());
    for (std::size_t j = 0; j < ref.size(); ++j) CHECK(max_abs_diff(s.nodes[j], ref[j]) < 1e-13);
  }
}

TEST_CASE("round trip on length 1024 for every filter") {
  const SignalBuffer x(oracle::random_vector(1024, 8), 250.0);
  for (const auto& f : wavelet_database()) {
    const auto y = wpd_reconstruct(wpd_decompose(x, f, 3), f);
    CHECK_MESSAGE(max_abs_diff(x.samples(), y.samples()) < 1e-10, f.name);
  }
}

TEST_CASE("perfect reconstruction and energy at levels 1 to 5") {
  for (std::size_t n : {256u, 1000u, 2500u}) {
    const SignalBuffer x(oracle::random_vector(n, n), 250.0);
    const double ex = energy(x.samples());
    for (const auto& f : wavelet_database()) {
      for (int level = 1; level <= 5; ++level) {
        if (!feasible(n, f.length(), level)) {
          CHECK_THROWS_AS(wpd_decompose(x, f, level), DecompositionDepthError);
          continue;
        }
        const auto s = wpd_decompose(x, f, level);
        CHECK(s.node_count() == (std::size_t{1} << level));
        CHECK(s.nodes[0].size() == (n + (std::size_t{1} << level) - 1) >> level);
        const auto y = wpd_reconstruct(s, f);
        REQUIRE(y.size() == n);
        CHECK(max_abs_diff(x.samples(), y.samples()) < 1e-10);
        if (n % (std::size_t{1} << level) == 0) {
          double e = 0.0;
          for (const auto& node : s.nodes) e += energy(node);
          CHECK(std::abs(e - ex) / ex < 1e-9);
        }
      }
    }
  }
}

TEST_CASE("refining one level equals decomposing one level deeper") {
  const SignalBuffer x(oracle::random_vector(512, 9), 250.0);
  const auto& f = wavelet_by_name("sym4");
  const auto deeper = wpd_decompose(x, f, 3);
  const auto refined = wpd_refine(wpd_decompose(x, f, 2), f);
  REQUIRE(refined.node_count() == deeper.node_count());
  for (std::size_t j = 0; j < deeper.node_count(); ++j) CHECK(refined.nodes[j] == deeper.nodes[j]);
}

TEST_CASE("reconstruct edge cases") {
  const auto& f = wavelet_by_name("db3");
  auto s = wpd_decompose(SignalBuffer(oracle::random_vector(64, 1), 250.0), f, 2);
  for (auto& node : s.nodes) std::fill(node.begin(), node.end(), 0.0);
  const auto zero = wpd_reconstruct(s, f);
  for (double v : zero.samples()) CHECK(v == 0.0);
  s.nodes.pop_back();
  CHECK_THROWS_AS(wpd_reconstruct(s, f), StructureError);
}

TEST_CASE("too deep a decomposition is rejected") {
  const SignalBuffer x(oracle::random_vector(64, 2), 250.0);
  CHECK_THROWS_AS(wpd_decompose(x, wavelet_by_name("fk22"), 3), DecompositionDepthError);
  CHECK_NOTHROW(wpd_decompose(x, wavelet_by_name("fk22"), 2));
  CHECK_THROWS_AS(wpd_decompose(x, wavelet_by_name("db2"), -1), ParameterError);
}

TEST_CASE("odd lengths are padded and trimmed") {
  const SignalBuffer x(oracle::random_vector(1001, 3), 250.0);
  const auto& f = wavelet_by_name("fk6");
  const auto s = wpd_decompose(x, f, 3);
  CHECK(s.original_length == 1001);
  CHECK(s.nodes[0].size() == 126);
  CHECK(max_abs_diff(wpd_reconstruct(s, f).samples(), x.samples()) < 1e-10);
}

TEST_CASE("lowest band keeps a slow sinusoid") {
  const auto x = oracle::sine(2500, 2.0, 250.0);
  const auto& f = wavelet_by_name("fk6");
  auto s = wpd_decompose(SignalBuffer(x, 250.0), f, 3);
  for (std::size_t j = 0; j < s.node_count(); ++j) {
    if (j != approximation_node(3)) std::fill(s.nodes[j].begin(), s.nodes[j].end(), 0.0);
  }
  const auto y = wpd_reconstruct(s, f).vector();
  // Energy measured in the frequency domain.
  double ex = 0.0, ey = 0.0;
  for (const auto& b : forward_rfft(x)) ex += std::norm(b);
  for (const auto& b : forward_rfft(y)) ey += std::norm(b);
  CHECK(ey / ex >= 0.95);
}

TEST_CASE("reconstruction error") {
  const SignalBuffer x(oracle::random_vector(2500, 4), 250.0);
  CHECK(reconstruction_error(x, wavelet_by_name("fk6"), 3) < 1e-8);
  const auto& f = wavelet_by_name("coif3");
  const auto y = wpd_reconstruct(wpd_decompose(x, f, 2), f).vector();
  std::vector<double> r(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) r[i] = x[i] - y[i];
  CHECK(reconstruction_error(x, f, 2) == doctest::Approx(oracle::rms(r)).epsilon(1e-12));
}

TEST_CASE("wavelet selection") {
  std::vector<SignalBuffer> batch;
  for (std::uint64_t s = 1; s <= 10; ++s) {
    SimulationSpec spec;
    spec.seed = s;
    batch.push_back(simulate_clean_eeg(spec));
  }
  const std::vector<WaveletFilter> only_fk6{wavelet_by_name("fk6")};
  CHECK(select_wavelet(batch, only_fk6, 3) == "fk6");

  std::vector<WaveletFilter> candidates;
  for (const char* n : {"haar", "db4", "sym5", "coif2", "fk6", "fk14"}) candidates.push_back(wavelet_by_name(n));
  const auto rows = reconstruction_error_table(batch, candidates, 3);
  REQUIRE(rows.size() == candidates.size());
  std::string best;
  double best_mean = 1e300;
  for (const auto& f : candidates) {
    std::vector<double> errs;
    for (const auto& x : batch) {
      const auto y = wpd_reconstruct(wpd_decompose(x, f, 3), f).vector();
      std::vector<double> r(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) r[i] = x[i] - y[i];
      errs.push_back(oracle::rms(r));
    }
    double mean = 0.0;
    for (double e : errs) mean += e;
    mean /= static_cast<double>(errs.size());
    if (mean < best_mean) {
      best_mean = mean;
      best = f.name;
    }
  }
  CHECK(select_wavelet(batch, candidates, 3) == best);
  for (const auto& r : rows) CHECK(r.mean_error < 1e-6);

  std::vector<WaveletErrorRow> handicapped{{"a", 2e-15, 0.0}, {"b", 1e-15, 0.0}};
  handicapped[1].mean_error += 1e-3;
  CHECK(argmin_wavelet(handicapped) == "a");
  std::vector<WaveletErrorRow> tie{{"first", 1.0, 0.0}, {"second", 1.0, 0.0}};
  CHECK(argmin_wavelet(tie) == "first");
}

TEST_CASE("subband entropy") {
  CHECK(subband_entropy(std::vector<double>(5, 0.0)) == 0.0);
  CHECK(subband_entropy(std::vector<double>{std::exp(0.5)}) == doctest::Approx(std::numbers::e).epsilon(1e-14));
  const auto v = oracle::random_vector(64, 5);
  CHECK(std::abs(subband_entropy(v) - oracle::entropy_loop(v)) < 1e-12);
}

TEST_CASE("level selection") {
  const auto& f = wavelet_by_name("fk6");
  // Large Nyquist-rate swing: detail coefficients dominate from level 1.
  std::vector<double> alt(256);
  for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = (i % 2 == 0 ? 3.0 : -3.0) + 0.01;
  CHECK(select_level(SignalBuffer(alt, 250.0), f, 4) == 1);
  CHECK_THROWS_AS(select_level(SignalBuffer(alt, 250.0), f, 0), ParameterError);

  // Tabulation oracle on seeded contaminated trials.
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto trial = simulate_trial(burst_layout_spec(seed));
    auto padded = trial.corrupted.vector();
    for (std::size_t i = 0; padded.size() % 32 != 0; ++i) padded.push_back(padded[i]);
    const SignalBuffer xp(padded, 250.0);
    const auto rows = level_entropy_table(trial.corrupted, f, 5);
    REQUIRE(rows.size() == 5);
    int expected = 5;
    for (const auto& r : rows) {
      const auto s = wpd_decompose(xp, f, r.level);
      const auto a = approximation_node(r.level);
      CHECK(r.approximation == doctest::Approx(oracle::entropy_loop(s.nodes[a])).epsilon(1e-10));
      CHECK(r.detail == doctest::Approx(oracle::entropy_loop(s.nodes[a - 1])).epsilon(1e-10));
      if (r.approximation < r.detail && expected == 5) expected = r.level;
    }
    CHECK(select_level(trial.corrupted, f, 5) == expected);
  }
}
