// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace emgclean {

/// A uniformly sampled real-valued channel. Samples are in microvolts.
///
/// Construction validates that fs is positive, the buffer is non-empty and
/// every sample is finite; a SignalBuffer that exists is always valid.
class SignalBuffer {
 public:
  SignalBuffer(std::vector<double> samples, double fs);

  std::span<const double> samples() const noexcept { return samples_; }
  const std::vector<double>& vector() const noexcept { return samples_; }
  double fs() const noexcept { return fs_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double operator[](std::size_t i) const noexcept { return samples_[i]; }

  friend bool operator==(const SignalBuffer&, const SignalBuffer&) = default;

 private:
  std::vector<double> samples_;
  double fs_;
};

enum class SegmentLabel { kCorrupted, kClean, kUnknown };

std::string_view to_string(SegmentLabel label) noexcept;
SegmentLabel label_from_string(std::string_view text);

struct Segment {
  std::size_t channel_index = 0;
  std::size_t start_sample = 0;
  SignalBuffer buffer;
  SegmentLabel label = SegmentLabel::kUnknown;
};

/// Equal-length, equal-rate channels.
class Recording {
 public:
  explicit Recording(std::vector<SignalBuffer> channels);

  const std::vector<SignalBuffer>& channels() const noexcept { return channels_; }
  std::size_t channel_count() const noexcept { return channels_.size(); }
  std::size_t length() const noexcept { return channels_.front().size(); }
  double fs() const noexcept { return channels_.front().fs(); }

  friend bool operator==(const Recording&, const Recording&) = default;

 private:
  std::vector<SignalBuffer> channels_;
};

/// Zero-phase Butterworth band-pass: a 4th-order high-pass and an 8th-order
/// low-pass, each run forward then backward. lo == 0 skips the high-pass.
SignalBuffer bandpass(const SignalBuffer& buffer, double lo, double hi);

/// Splits every channel into contiguous, non-overlapping windows of
/// `seconds`. Segments are ordered by channel, then by time; a trailing
/// remainder shorter than one window is dropped.
std::vector<Segment> segmentize(const Recording& rec, double seconds);

/// Number of samples in a window of `seconds` at `fs`; throws unless the
/// product is a positive integer.
std::size_t samples_per_window(double seconds, double fs);

}  // namespace emgclean
