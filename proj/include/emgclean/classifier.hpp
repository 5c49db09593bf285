// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "emgclean/signal.hpp"

namespace emgclean {

struct FeatureVector {
  double variance = 0.0;         // population variance
  double shannon_entropy = 0.0;  // sum x^2 log x^2
  double peak_to_peak = 0.0;

  std::array<double, 3> as_array() const noexcept {
    return {variance, shannon_entropy, peak_to_peak};
  }
};

FeatureVector extract_features(std::span<const double> samples);
FeatureVector extract_features(const Segment& seg);

/// Linear SVM on z-scored features. Corrupted is the positive class.
struct SvmModel {
  std::array<double, 3> weights{};
  double bias = 0.0;
  std::array<double, 3> feature_means{};
  std::array<double, 3> feature_stds{1.0, 1.0, 1.0};
  double box_constraint = 1.0;

  std::array<double, 3> standardize(const FeatureVector& f) const noexcept;
  double decision_value(const FeatureVector& f) const noexcept;
};

struct SvmTrainingOptions {
  double box_constraint = 1.0;
  double tolerance = 1e-3;
  std::uint64_t seed = 1;
};

/// Sequential minimal optimization on the standardized features. Throws
/// TrainingError unless both classes are present.
SvmModel train_svm(std::span<const FeatureVector> features, std::span<const SegmentLabel> labels,
                   const SvmTrainingOptions& options = {});

/// Dual variables of the last solve, exposed for KKT checks.
struct SvmSolution {
  SvmModel model;
  std::vector<double> alphas;
};

SvmSolution train_svm_with_duals(std::span<const FeatureVector> features,
                                 std::span<const SegmentLabel> labels,
                                 const SvmTrainingOptions& options = {});

SegmentLabel classify(const SvmModel& model, const FeatureVector& features) noexcept;
SegmentLabel classify(const SvmModel& model, const Segment& seg);

struct ConfusionCounts {
  int tp = 0;
  int fp = 0;
  int tn = 0;
  int fn = 0;
};

struct ClassifierReport {
  ConfusionCounts counts;
  double sensitivity = 0.0;  // percent
  double specificity = 0.0;  // percent
  double accuracy = 0.0;     // percent
};

ClassifierReport make_report(const ConfusionCounts& counts);

/// Scores predictions against truth (corrupted = positive).
ConfusionCounts confusion(std::span<const SegmentLabel> truth,
                          std::span<const SegmentLabel> predicted);

ClassifierReport evaluate(const SvmModel& model, std::span<const FeatureVector> features,
                          std::span<const SegmentLabel> labels);

/// Stratified k-fold cross-validation with confusion counts pooled over folds.
ClassifierReport cross_validate(std::span<const FeatureVector> features,
                                std::span<const SegmentLabel> labels, int folds,
                                const SvmTrainingOptions& options = {});

/// Stratified split: returns {train indices, test indices} with
/// `test_fraction` of each class held out.
struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};
SplitIndices stratified_split(std::span<const SegmentLabel> labels, double test_fraction,
                              std::uint64_t seed);

}  // namespace emgclean
