// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#include <doctest.h>

#include <cmath>
#include <limits>

#include "emgclean/error.hpp"
#include "emgclean/signal.hpp"
#include "emgclean/spectral.hpp"
#include "oracles.hpp"

using namespace emgclean;

TEST_CASE("SignalBuffer rejects invalid construction") {
  CHECK_THROWS_AS(SignalBuffer({}, 250.0), ParameterError);
  CHECK_THROWS_AS(SignalBuffer({1.0}, 0.0), ParameterError);
  CHECK_THROWS_AS(SignalBuffer({1.0}, -5.0), ParameterError);
  CHECK_THROWS_AS(SignalBuffer({1.0, std::nan("")}, 250.0), ParameterError);
  CHECK_THROWS_AS(SignalBuffer({std::numeric_limits<double>::infinity()}, 250.0), ParameterError);
  const SignalBuffer ok({1.0, 2.0}, 250.0);
  CHECK(ok.size() == 2);
  CHECK(ok.fs() == 250.0);
}

TEST_CASE("Recording requires matching channels") {
  CHECK_THROWS_AS(Recording({}), ParameterError);
  CHECK_THROWS_AS(Recording({SignalBuffer({1.0, 2.0}, 250.0), SignalBuffer({1.0}, 250.0)}), ParameterError);
  CHECK_THROWS_AS(Recording({SignalBuffer({1.0}, 250.0), SignalBuffer({1.0}, 500.0)}), ParameterError);
}

TEST_CASE("label strings round trip") {
  for (auto l : {SegmentLabel::kCorrupted, SegmentLabel::kClean, SegmentLabel::kUnknown}) {
    CHECK(label_from_string(to_string(l)) == l);
  }
  CHECK_THROWS_AS(label_from_string("noisy"), ParameterError);
}

TEST_CASE("rfft matches the naive DFT and inverts") {
  for (std::size_t n : {8u, 15u, 250u}) {
    const auto x = oracle::random_vector(n, n);
    const auto bins = forward_rfft(x);
    const auto ref = oracle::naive_dft(x);
    REQUIRE(bins.size() == ref.size());
    for (std::size_t k = 0; k < bins.size(); ++k) CHECK(std::abs(bins[k] - ref[k]) < 1e-9);
    const auto back = inverse_rfft(bins, n);
    for (std::size_t i = 0; i < n; ++i) CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-12));
  }
}

TEST_CASE("bandpass stopband and passband tones") {
  const std::size_t n = 2500;
  const auto hum = oracle::sine(n, 50.0, 250.0);
  const auto alpha = oracle::sine(n, 10.0, 250.0);
  const auto out_hum = bandpass(SignalBuffer(hum, 250.0), 0.1, 40.0);
  const auto out_alpha = bandpass(SignalBuffer(alpha, 250.0), 0.1, 40.0);
  CHECK(out_hum.size() == n);
  CHECK(oracle::rms(out_hum.vector()) < 0.1 * oracle::rms(hum));
  CHECK(std::abs(oracle::rms(out_alpha.vector()) / oracle::rms(alpha) - 1.0) < 0.05);
}

TEST_CASE("bandpass white noise against an FFT mask oracle") {
  const std::size_t n = 4096;
  const double fs = 250.0;
  const auto noise = oracle::random_vector(n, 11);
  const auto out = bandpass(SignalBuffer(noise, fs), 5.0, 45.0).vector();
  const auto masked = oracle::fft_mask(noise, fs, 5.0, 45.0);
  // Power density of the filtered output per band, compared with the oracle.
  const auto spec = oracle::naive_dft(out);
  const auto ref = oracle::naive_dft(masked);
  double pass = 0.0, stop = 0.0, ref_pass = 0.0;
  std::size_t n_pass = 0, n_stop = 0;
  for (std::size_t k = 1; k < spec.size(); ++k) {
    const double f = static_cast<double>(k) * fs / static_cast<double>(n);
    const double p = std::norm(spec[k]);
    if (f >= 8.0 && f <= 40.0) {
      pass += p;
      ref_pass += std::norm(ref[k]);
      ++n_pass;
    } else if (f < 1.5 || f > 80.0) {
      stop += p;
      ++n_stop;
    }
  }
  const double pass_density = pass / static_cast<double>(n_pass);
  const double stop_density = stop / static_cast<double>(n_stop);
  CHECK(10.0 * std::log10(pass_density / stop_density) >= 20.0);
  CHECK(pass / ref_pass == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("bandpass is linear") {
  const auto x = oracle::random_vector(1000, 1);
  const auto y = oracle::random_vector(1000, 2);
  std::vector<double> mix(1000);
  for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = 2.5 * x[i] - 0.75 * y[i];
  const auto fx = bandpass(SignalBuffer(x, 250.0), 0.1, 40.0).vector();
  const auto fy = bandpass(SignalBuffer(y, 250.0), 0.1, 40.0).vector();
  const auto fm = bandpass(SignalBuffer(mix, 250.0), 0.1, 40.0).vector();
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < mix.size(); ++i) {
    worst = std::max(worst, std::abs(fm[i] - (2.5 * fx[i] - 0.75 * fy[i])));
    scale = std::max(scale, std::abs(fm[i]));
  }
  CHECK(worst / scale < 1e-9);
}

TEST_CASE("bandpass has no phase shift in the passband") {
  const auto x = oracle::sine(2500, 10.0, 250.0);
  const auto y = bandpass(SignalBuffer(x, 250.0), 0.1, 40.0).vector();
  // Interior samples only: the ends carry the start-up transient.
  std::vector<double> xi(x.begin() + 500, x.end() - 500), yi(y.begin() + 500, y.end() - 500);
  CHECK(oracle::pearson(xi, yi) > 0.999);
}

TEST_CASE("bandpass rejects invalid band edges") {
  const SignalBuffer x(oracle::random_vector(100, 3), 250.0);
  CHECK_THROWS_AS(bandpass(x, -1.0, 40.0), ParameterError);
  CHECK_THROWS_AS(bandpass(x, 40.0, 10.0), ParameterError);
  CHECK_THROWS_AS(bandpass(x, 0.1, 125.0), ParameterError);
  CHECK_NOTHROW(bandpass(x, 0.0, 40.0));
}

TEST_CASE("segmentize examples") {
  const Recording one({SignalBuffer(std::vector<double>(2500, 1.0), 250.0)});
  const auto a = segmentize(one, 10.0);
  REQUIRE(a.size() == 1);
  CHECK(a[0].buffer.size() == 2500);
  CHECK(a[0].label == SegmentLabel::kUnknown);

  const Recording longer({SignalBuffer(oracle::random_vector(5100, 4), 250.0)});
  const auto b = segmentize(longer, 10.0);
  REQUIRE(b.size() == 2);
  CHECK(b[1].start_sample == 2500);

  CHECK_THROWS_AS(segmentize(one, 0.0), ParameterError);
  CHECK_THROWS_AS(segmentize(one, 0.0041), ParameterError);
}

TEST_CASE("segmentize then concatenate reproduces the covered prefix") {
  const auto c0 = oracle::random_vector(5100, 5);
  const auto c1 = oracle::random_vector(5100, 6);
  const Recording rec({SignalBuffer(c0, 250.0), SignalBuffer(c1, 250.0)});
  const auto segs = segmentize(rec, 2.0);
  REQUIRE(segs.size() == 20);
  std::vector<std::vector<double>> joined(2);
  for (const auto& s : segs) {
    CHECK(s.start_sample == joined[s.channel_index].size());
    joined[s.channel_index].insert(joined[s.channel_index].end(), s.buffer.vector().begin(),
                                   s.buffer.vector().end());
  }
  CHECK(joined[0] == std::vector<double>(c0.begin(), c0.begin() + 5000));
  CHECK(joined[1] == std::vector<double>(c1.begin(), c1.begin() + 5000));
}
