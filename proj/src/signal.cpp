// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#include "emgclean/signal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "emgclean/error.hpp"

namespace emgclean {

SignalBuffer::SignalBuffer(std::vector<double> samples, double fs)
    : samples_(std::move(samples)), fs_(fs) {
  if (!(fs_ > 0.0) || !std::isfinite(fs_)) {
    throw ParameterError("sampling rate must be positive and finite");
  }
  if (samples_.empty()) throw ParameterError("signal must contain at least one sample");
  for (double v : samples_) {
    if (!std::isfinite(v)) throw ParameterError("signal contains a non-finite sample");
  }
}

std::string_view to_string(SegmentLabel label) noexcept {
  switch (label) {
    case SegmentLabel::kCorrupted:
      return "corrupted";
    case SegmentLabel::kClean:
      return "clean";
    case SegmentLabel::kUnknown:
      break;
  }
  return "unknown";
}

SegmentLabel label_from_string(std::string_view text) {
  if (text == "corrupted") return SegmentLabel::kCorrupted;
  if (text == "clean") return SegmentLabel::kClean;
  if (text == "unknown") return SegmentLabel::kUnknown;
  throw ParameterError("unknown segment label '" + std::string(text) + "'");
}

Recording::Recording(std::vector<SignalBuffer> channels) : channels_(std::move(channels)) {
  if (channels_.empty()) throw ParameterError("recording needs at least one channel");
  for (const auto& ch : channels_) {
    if (ch.size() != channels_.front().size() || ch.fs() != channels_.front().fs()) {
      throw ParameterError("recording channels must share length and sampling rate");
    }
  }
}

namespace {

// Transposed direct form II biquad, a0 normalized to 1.
struct Biquad {
  double b0, b1, b2, a1, a2;

  double dc_gain() const { return (b0 + b1 + b2) / (1.0 + a1 + a2); }
};

enum class Kind { kLowpass, kHighpass };

Biquad design_section(Kind kind, double f0, double fs, double q) {
  const double w0 = 2.0 * std::numbers::pi * f0 / fs;
  const double cw = std::cos(w0);
  const double alpha = std::sin(w0) / (2.0 * q);
  const double a0 = 1.0 + alpha;
  Biquad s{};
  if (kind == Kind::kLowpass) {
    s.b0 = (1.0 - cw) / 2.0 / a0;
    s.b1 = (1.0 - cw) / a0;
    s.b2 = s.b0;
  } else {
    s.b0 = (1.0 + cw) / 2.0 / a0;
    s.b1 = -(1.0 + cw) / a0;
    s.b2 = s.b0;
  }
  s.a1 = -2.0 * cw / a0;
  s.a2 = (1.0 - alpha) / a0;
  return s;
}

constexpr int kLowpassOrder = 8;
constexpr int kHighpassOrder = 4;

// Butterworth of even order as biquads, pole pair k having quality factor
// 1 / (2 cos((2k + 1) pi / (2 order))).
void append_butterworth(std::vector<Biquad>& out, Kind kind, int order, double f0, double fs) {
  for (int k = 0; k < order / 2; ++k) {
    const double theta = (2.0 * k + 1.0) * std::numbers::pi / (2.0 * order);
    out.push_back(design_section(kind, f0, fs, 1.0 / (2.0 * std::cos(theta))));
  }
}

// Runs the cascade in place, starting every section in the steady state it
// would reach for a constant input equal to x[0].
void run_cascade(const std::vector<Biquad>& sections, std::vector<double>& x) {
  double level = x.front();
  for (const auto& s : sections) {
    const double g = s.dc_gain();
    double z2 = s.b2 * level - s.a2 * g * level;
    double z1 = s.b1 * level - s.a1 * g * level + z2;
    for (double& v : x) {
      const double in = v;
      const double out = s.b0 * in + z1;
      z1 = s.b1 * in - s.a1 * out + z2;
      z2 = s.b2 * in - s.a2 * out;
      v = out;
    }
    level *= g;
  }
}

}  // namespace

SignalBuffer bandpass(const SignalBuffer& buffer, double lo, double hi) {
  const double fs = buffer.fs();
  if (!(lo >= 0.0) || !(hi > lo) || !(hi < fs / 2.0)) {
    throw ParameterError("band edges must satisfy 0 <= lo < hi < fs/2");
  }
  std::vector<Biquad> sections;
  if (lo > 0.0) append_butterworth(sections, Kind::kHighpass, kHighpassOrder, lo, fs);
  append_butterworth(sections, Kind::kLowpass, kLowpassOrder, hi, fs);

  const auto x = buffer.samples();
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
  if (n < 2) return buffer;

  // Extend by mirroring about the end samples, folding again as needed. A
  // mirror keeps the local mean, so a sub-hertz high-pass sees no step at
  // the edges. The pad spans six time constants of the slowest pole.
  double slowest = 1.0 / (std::numbers::pi * hi);
  if (lo > 0.0) {
    const double damping = std::sin(std::numbers::pi / (2.0 * kHighpassOrder));
    slowest = std::max(slowest, 1.0 / (2.0 * std::numbers::pi * lo * damping));
  }
  const auto pad = static_cast<std::ptrdiff_t>(std::ceil(6.0 * slowest * fs)) + 1;
  const std::ptrdiff_t period = 2 * (n - 1);
  auto at = [&](std::ptrdiff_t i) {
    i = ((i % period) + period) % period;
    if (i >= n) i = period - i;
    return x[static_cast<std::size_t>(i)];
  };
  std::vector<double> ext;
  ext.reserve(static_cast<std::size_t>(n + 2 * pad));
  for (std::ptrdiff_t i = -pad; i < n + pad; ++i) ext.push_back(at(i));

  run_cascade(sections, ext);
  std::reverse(ext.begin(), ext.end());
  run_cascade(sections, ext);
  std::reverse(ext.begin(), ext.end());

  return SignalBuffer(std::vector<double>(ext.begin() + static_cast<std::ptrdiff_t>(pad),
                                          ext.begin() + static_cast<std::ptrdiff_t>(pad + n)),
                      fs);
}

std::size_t samples_per_window(double seconds, double fs) {
  const double count = seconds * fs;
  const double rounded = std::round(count);
  if (!(count > 0.0) || std::abs(count - rounded) > 1e-9 * std::max(1.0, count)) {
    throw ParameterError("segment duration times fs must be a positive integer");
  }
  return static_cast<std::size_t>(rounded);
}

std::vector<Segment> segmentize(const Recording& rec, double seconds) {
  const std::size_t width = samples_per_window(seconds, rec.fs());
  std::vector<Segment> out;
  for (std::size_t ch = 0; ch < rec.channel_count(); ++ch) {
    const auto& samples = rec.channels()[ch].vector();
    for (std::size_t start = 0; start + width <= samples.size(); start += width) {
      std::vector<double> window(samples.begin() + static_cast<std::ptrdiff_t>(start),
                                 samples.begin() + static_cast<std::ptrdiff_t>(start + width));
      out.push_back(Segment{ch, start, SignalBuffer(std::move(window), rec.fs()),
                            SegmentLabel::kUnknown});
    }
  }
  return out;
}

}  // namespace emgclean
