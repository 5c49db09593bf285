// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#include "emgclean/pipeline.hpp"

#include <algorithm>
#include <numeric>

#include "emgclean/error.hpp"
#include "emgclean/wavelet.hpp"

namespace emgclean {

namespace {

constexpr int kDefaultLevel = 3;

std::vector<WaveletFilter> all_candidates() {
  const auto db = wavelet_database();
  return {db.begin(), db.end()};
}

SignalBuffer slice(const SignalBuffer& x, std::size_t start, std::size_t length) {
  const auto s = x.samples().subspan(start, length);
  return SignalBuffer(std::vector<double>(s.begin(), s.end()), x.fs());
}

}  // namespace

ResolvedBasis resolve_basis(const SignalBuffer& x, const PipelineConfig& cfg) {
  ResolvedBasis basis;
  const int selection_level = cfg.level.value_or(kDefaultLevel);
  if (cfg.wavelet == "auto") {
    const auto candidates = all_candidates();
    std::vector<WaveletFilter> feasible;
    for (const auto& f : candidates) {
      if (x.size() >> std::max(0, selection_level - 1) >= f.length()) feasible.push_back(f);
    }
    const std::vector<SignalBuffer> signals{x};
    basis.wavelet = select_wavelet(signals, feasible, selection_level);
  } else {
    basis.wavelet = wavelet_by_name(cfg.wavelet).name;
  }
  basis.level = cfg.level ? *cfg.level
                          : select_level(x, wavelet_by_name(basis.wavelet), kAutoLevelCap);
  return basis;
}

namespace {

SegmentResult denoise_with_basis(const Segment& seg, const PipelineConfig& cfg,
                                 const SvmModel& model, const std::optional<SignalBuffer>& reference,
                                 const std::optional<ResolvedBasis>& fixed_basis) {
  DenoiseTrace trace;
  trace.channel = seg.channel_index;
  trace.start_sample = seg.start_sample;
  trace.fitness = cfg.fitness;
  trace.algorithm = cfg.swarm.algorithm;
  trace.label = classify(model, seg);

  Segment out = seg;
  out.label = trace.label;
  if (trace.label == SegmentLabel::kClean) return {std::move(out), std::move(trace)};

  if (cfg.fitness == FitnessMode::kOracle && !reference) {
    throw ParameterError("oracle fitness requires a clean reference");
  }
  const auto basis = fixed_basis ? *fixed_basis : resolve_basis(seg.buffer, cfg);
  const auto& filter = wavelet_by_name(basis.wavelet);
  trace.wavelet = basis.wavelet;
  trace.level = basis.level;

  FitnessSpec spec;
  spec.mode = cfg.fitness;
  spec.subbands = wpd_decompose(seg.buffer, filter, basis.level);
  spec.patch_half_width = cfg.patch_half_width;
  spec.search_half_width = cfg.search_half_width;
  if (cfg.fitness == FitnessMode::kOracle) spec.reference = reference;
  spec.filter_name = filter.name;
  const BandwidthFitness fitness(std::move(spec));

  SwarmConfig swarm = cfg.swarm;
  swarm.seed = derive_seed(cfg.seed, (static_cast<std::uint64_t>(seg.channel_index) << 40) ^
                                         static_cast<std::uint64_t>(seg.start_sample));
  const auto result = optimize([&](std::span<const double> l) { return fitness(l); },
                               static_cast<int>(fitness.dimension()), swarm);

  trace.lambdas = result.best_position;
  trace.history = result.history;
  trace.best_fitness = result.best_fitness;
  trace.subband_sar = fitness.node_sar(result.best_position);

  auto recon = wpd_reconstruct(fitness.corrected(result.best_position), filter);
  out.buffer = std::move(recon);
  return {std::move(out), std::move(trace)};
}

}  // namespace

SegmentResult denoise_segment(const Segment& seg, const PipelineConfig& cfg, const SvmModel& model,
                              const std::optional<SignalBuffer>& reference) {
  return denoise_with_basis(seg, cfg, model, reference, std::nullopt);
}

RecordingResult denoise_recording(const Recording& rec, const PipelineConfig& cfg,
                                  const SvmModel& model, const std::optional<Recording>& reference) {
  if (reference && (reference->channel_count() != rec.channel_count() ||
                    reference->length() != rec.length())) {
    throw ParameterError("reference recording shape does not match the input");
  }
  std::vector<SignalBuffer> input = rec.channels();
  if (cfg.prefilter) {
    for (auto& ch : input) ch = bandpass(ch, cfg.prefilter->lo, cfg.prefilter->hi);
  }
  const Recording prepared(input);
  std::vector<std::vector<double>> output;
  for (const auto& ch : prepared.channels()) output.push_back(ch.vector());

  const std::size_t width = samples_per_window(cfg.segment_seconds, rec.fs());
  std::optional<ResolvedBasis> basis;
  std::vector<DenoiseTrace> traces;
  for (auto& seg : segmentize(prepared, cfg.segment_seconds)) {
    std::optional<SignalBuffer> ref;
    if (reference) ref = slice(reference->channels()[seg.channel_index], seg.start_sample, width);
    if (!basis && classify(model, seg) == SegmentLabel::kCorrupted) {
      basis = resolve_basis(seg.buffer, cfg);
    }
    auto result = denoise_with_basis(seg, cfg, model, ref, basis);
    const auto& samples = result.segment.buffer.vector();
    std::copy(samples.begin(), samples.end(),
              output[seg.channel_index].begin() + static_cast<std::ptrdiff_t>(seg.start_sample));
    traces.push_back(std::move(result.trace));
  }

  std::vector<SignalBuffer> channels;
  for (auto& ch : output) channels.emplace_back(std::move(ch), rec.fs());
  return {Recording(std::move(channels)), std::move(traces)};
}

EvaluationReport evaluate_run(const Recording& corrupted, const Recording& denoised,
                              const std::optional<Recording>& reference, int mi_bins) {
  if (corrupted.channel_count() != denoised.channel_count() ||
      corrupted.length() != denoised.length()) {
    throw ParameterError("denoised recording shape does not match the input");
  }
  if (reference && (reference->channel_count() != denoised.channel_count() ||
                    reference->length() != denoised.length())) {
    throw ParameterError("reference recording shape does not match the input");
  }
  EvaluationReport report;
  report.mi_bins = mi_bins;
  double cc = 0.0;
  double ssim = 0.0;
  double mi = 0.0;
  double sar_db = 0.0;
  for (std::size_t ch = 0; ch < denoised.channel_count(); ++ch) {
    ChannelReport c;
    const auto& out = denoised.channels()[ch];
    c.mi = mutual_information(corrupted.channels()[ch], out, mi_bins);
    mi += c.mi;
    if (reference) {
      const auto& ref = reference->channels()[ch];
      c.cc = correlation_coefficient(out, ref);
      c.ssim = ssim_1d(out, ref);
      try {
        c.sar_db = reference_sar(ref.samples(), out.samples());
      } catch (const DegenerateError&) {
        c.sar_db = kSarCapDb;
      }
      cc += *c.cc;
      ssim += *c.ssim;
      sar_db += *c.sar_db;
    }
    report.channels.push_back(c);
  }
  const double n = static_cast<double>(denoised.channel_count());
  report.mi = mi / n;
  if (reference) {
    report.cc = cc / n;
    report.ssim = ssim / n;
    report.sar_db = sar_db / n;
  }
  return report;
}

double clean_window_cc(const SignalBuffer& corrupted, const SignalBuffer& denoised,
                       const std::vector<ArtifactWindow>& windows) {
  if (corrupted.size() != denoised.size()) throw ParameterError("signals differ in length");
  const auto mask = artifact_mask(windows, corrupted.size(), corrupted.fs());
  std::vector<double> a;
  std::vector<double> b;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) continue;
    a.push_back(corrupted[i]);
    b.push_back(denoised[i]);
  }
  if (a.empty()) throw ParameterError("no samples fall outside the artifact windows");
  return correlation_coefficient(a, b);
}

}  // namespace emgclean
