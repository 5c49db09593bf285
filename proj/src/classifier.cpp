// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#include "emgclean/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "emgclean/error.hpp"

namespace emgclean {

namespace {

using Point = std::array<double, 3>;

double dot(const Point& a, const Point& b) noexcept {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// Platt's SMO specialized to a linear kernel, keeping w explicitly.
class SmoSolver {
 public:
  SmoSolver(std::vector<Point> points, std::vector<double> targets, double c, double tol,
            std::uint64_t seed)
      : x_(std::move(points)),
        y_(std::move(targets)),
        alpha_(x_.size(), 0.0),
        c_(c),
        tol_(tol),
        rng_(seed) {}

  void solve() {
    const std::size_t n = x_.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    const std::size_t max_sweeps = 10 * n;
    bool examine_all = true;
    std::size_t changed = 0;
    for (std::size_t sweep = 0; sweep < max_sweeps && (changed > 0 || examine_all); ++sweep) {
      changed = 0;
      std::shuffle(order.begin(), order.end(), rng_);
      for (std::size_t i : order) {
        if (examine_all || non_bound(i)) changed += examine(i) ? 1 : 0;
      }
      if (examine_all) {
        examine_all = false;
      } else if (changed == 0) {
        examine_all = true;
      }
    }
  }

  const Point& weights() const noexcept { return w_; }
  double bias() const noexcept { return b_; }
  const std::vector<double>& alphas() const noexcept { return alpha_; }

 private:
  static constexpr double kBoundEps = 1e-12;

  bool non_bound(std::size_t i) const noexcept {
    return alpha_[i] > kBoundEps && alpha_[i] < c_ - kBoundEps;
  }

  double error(std::size_t i) const noexcept { return dot(w_, x_[i]) + b_ - y_[i]; }

  bool examine(std::size_t i2) {
    const double e2 = error(i2);
    const double r2 = e2 * y_[i2];
    if (!((r2 < -tol_ && alpha_[i2] < c_) || (r2 > tol_ && alpha_[i2] > 0.0))) return false;

    const std::size_t n = x_.size();
    std::size_t best = n;
    double best_gap = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!non_bound(i)) continue;
      const double gap = std::abs(error(i) - e2);
      if (gap > best_gap) {
        best_gap = gap;
        best = i;
      }
    }
    if (best != n && take_step(best, i2)) return true;

    const std::size_t start = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i1 = (start + k) % n;
      if (non_bound(i1) && take_step(i1, i2)) return true;
    }
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i1 = (start + k) % n;
      if (take_step(i1, i2)) return true;
    }
    return false;
  }

  bool take_step(std::size_t i1, std::size_t i2) {
    if (i1 == i2) return false;
    const double a1 = alpha_[i1];
    const double a2 = alpha_[i2];
    const double y1 = y_[i1];
    const double y2 = y_[i2];
    const double e1 = error(i1);
    const double e2 = error(i2);
    const double s = y1 * y2;

    double lo;
    double hi;
    if (y1 != y2) {
      lo = std::max(0.0, a2 - a1);
      hi = std::min(c_, c_ + a2 - a1);
    } else {
      lo = std::max(0.0, a1 + a2 - c_);
      hi = std::min(c_, a1 + a2);
    }
    if (hi - lo < kBoundEps) return false;

    const double k11 = dot(x_[i1], x_[i1]);
    const double k12 = dot(x_[i1], x_[i2]);
    const double k22 = dot(x_[i2], x_[i2]);
    const double eta = k11 + k22 - 2.0 * k12;
    if (eta <= 1e-12) return false;

    double a2_new = std::clamp(a2 + y2 * (e1 - e2) / eta, lo, hi);
    if (a2_new < kBoundEps) a2_new = 0.0;
    if (a2_new > c_ - kBoundEps) a2_new = c_;
    if (std::abs(a2_new - a2) < 1e-10 * (a2_new + a2 + 1e-10)) return false;
    double a1_new = a1 + s * (a2 - a2_new);
    if (a1_new < kBoundEps) a1_new = 0.0;
    if (a1_new > c_ - kBoundEps) a1_new = c_;

    const double d1 = y1 * (a1_new - a1);
    const double d2 = y2 * (a2_new - a2);
    const double b1 = b_ - e1 - d1 * k11 - d2 * k12;
    const double b2 = b_ - e2 - d1 * k12 - d2 * k22;
    if (a1_new > 0.0 && a1_new < c_) {
      b_ = b1;
    } else if (a2_new > 0.0 && a2_new < c_) {
      b_ = b2;
    } else {
      b_ = 0.5 * (b1 + b2);
    }
    for (std::size_t d = 0; d < 3; ++d) w_[d] += d1 * x_[i1][d] + d2 * x_[i2][d];
    alpha_[i1] = a1_new;
    alpha_[i2] = a2_new;
    return true;
  }

  std::vector<Point> x_;
  std::vector<double> y_;
  std::vector<double> alpha_;
  Point w_{};
  double b_ = 0.0;
  double c_;
  double tol_;
  std::mt19937_64 rng_;
};

double target(SegmentLabel label) {
  switch (label) {
    case SegmentLabel::kCorrupted:
      return 1.0;
    case SegmentLabel::kClean:
      return -1.0;
    case SegmentLabel::kUnknown:
      break;
  }
  throw TrainingError("training labels must be corrupted or clean");
}

}  // namespace

FeatureVector extract_features(std::span<const double> samples) {
  if (samples.empty()) throw ParameterError("cannot extract features from an empty segment");
  const double n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  FeatureVector f;
  for (double v : samples) {
    f.variance += (v - mean) * (v - mean);
    const double e = v * v;
    if (e > 0.0) f.shannon_entropy += e * std::log(e);
  }
  f.variance /= n;
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  f.peak_to_peak = *hi - *lo;
  return f;
}

FeatureVector extract_features(const Segment& seg) { return extract_features(seg.buffer.samples()); }

std::array<double, 3> SvmModel::standardize(const FeatureVector& f) const noexcept {
  const auto raw = f.as_array();
  std::array<double, 3> z{};
  for (std::size_t d = 0; d < 3; ++d) z[d] = (raw[d] - feature_means[d]) / feature_stds[d];
  return z;
}

double SvmModel::decision_value(const FeatureVector& f) const noexcept {
  return dot(weights, standardize(f)) + bias;
}

SvmSolution train_svm_with_duals(std::span<const FeatureVector> features,
                                 std::span<const SegmentLabel> labels,
                                 const SvmTrainingOptions& options) {
  if (features.size() != labels.size() || features.empty()) {
    throw TrainingError("features and labels must be non-empty and of equal length");
  }
  if (!(options.box_constraint > 0.0)) throw ParameterError("box constraint must be positive");
  std::vector<double> y;
  y.reserve(labels.size());
  for (auto label : labels) y.push_back(target(label));
  const bool has_pos = std::find(y.begin(), y.end(), 1.0) != y.end();
  const bool has_neg = std::find(y.begin(), y.end(), -1.0) != y.end();
  if (!has_pos || !has_neg) throw TrainingError("training data must contain both classes");

  SvmModel model;
  model.box_constraint = options.box_constraint;
  const double n = static_cast<double>(features.size());
  for (std::size_t d = 0; d < 3; ++d) {
    double mean = 0.0;
    for (const auto& f : features) mean += f.as_array()[d];
    mean /= n;
    double var = 0.0;
    for (const auto& f : features) var += (f.as_array()[d] - mean) * (f.as_array()[d] - mean);
    const double sd = std::sqrt(var / n);
    model.feature_means[d] = mean;
    model.feature_stds[d] = sd > 0.0 ? sd : 1.0;
  }

  std::vector<Point> z;
  z.reserve(features.size());
  for (const auto& f : features) z.push_back(model.standardize(f));
  SmoSolver solver(std::move(z), std::move(y), options.box_constraint, options.tolerance,
                   options.seed);
  solver.solve();
  model.weights = solver.weights();
  model.bias = solver.bias();
  return {model, solver.alphas()};
}

SvmModel train_svm(std::span<const FeatureVector> features, std::span<const SegmentLabel> labels,
                   const SvmTrainingOptions& options) {
  return train_svm_with_duals(features, labels, options).model;
}

SegmentLabel classify(const SvmModel& model, const FeatureVector& features) noexcept {
  return model.decision_value(features) > 0.0 ? SegmentLabel::kCorrupted : SegmentLabel::kClean;
}

SegmentLabel classify(const SvmModel& model, const Segment& seg) {
  return classify(model, extract_features(seg));
}

ClassifierReport make_report(const ConfusionCounts& c) {
  auto pct = [](int num, int den) { return den > 0 ? 100.0 * num / den : 0.0; };
  ClassifierReport r;
  r.counts = c;
  r.sensitivity = pct(c.tp, c.tp + c.fn);
  r.specificity = pct(c.tn, c.tn + c.fp);
  r.accuracy = pct(c.tp + c.tn, c.tp + c.tn + c.fp + c.fn);
  return r;
}

ConfusionCounts confusion(std::span<const SegmentLabel> truth,
                          std::span<const SegmentLabel> predicted) {
  if (truth.size() != predicted.size()) throw ParameterError("label sequences differ in length");
  ConfusionCounts c;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool actual = truth[i] == SegmentLabel::kCorrupted;
    const bool guess = predicted[i] == SegmentLabel::kCorrupted;
    if (actual && guess) ++c.tp;
    if (!actual && guess) ++c.fp;
    if (!actual && !guess) ++c.tn;
    if (actual && !guess) ++c.fn;
  }
  return c;
}

ClassifierReport evaluate(const SvmModel& model, std::span<const FeatureVector> features,
                          std::span<const SegmentLabel> labels) {
  std::vector<SegmentLabel> predicted;
  predicted.reserve(features.size());
  for (const auto& f : features) predicted.push_back(classify(model, f));
  return make_report(confusion(labels, predicted));
}

SplitIndices stratified_split(std::span<const SegmentLabel> labels, double test_fraction,
                              std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ParameterError("test fraction must lie in (0, 1)");
  }
  std::mt19937_64 rng(seed);
  SplitIndices out;
  for (auto cls : {SegmentLabel::kClean, SegmentLabel::kCorrupted}) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == cls) idx.push_back(i);
    }
    std::shuffle(idx.begin(), idx.end(), rng);
    const auto n_test = static_cast<std::size_t>(std::lround(test_fraction * static_cast<double>(idx.size())));
    out.test.insert(out.test.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_test));
    out.train.insert(out.train.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_test), idx.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

ClassifierReport cross_validate(std::span<const FeatureVector> features,
                                std::span<const SegmentLabel> labels, int folds,
                                const SvmTrainingOptions& options) {
  if (folds < 2) throw ParameterError("cross-validation needs at least two folds");
  if (features.size() != labels.size()) throw ParameterError("features and labels differ in length");
  std::mt19937_64 rng(options.seed);
  std::vector<int> fold_of(labels.size(), -1);
  for (auto cls : {SegmentLabel::kClean, SegmentLabel::kCorrupted}) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == cls) idx.push_back(i);
    }
    if (idx.size() < static_cast<std::size_t>(folds)) {
      throw ParameterError("every fold needs both classes; too few samples of one class");
    }
    std::shuffle(idx.begin(), idx.end(), rng);
    for (std::size_t k = 0; k < idx.size(); ++k) fold_of[idx[k]] = static_cast<int>(k % folds);
  }

  ConfusionCounts total;
  for (int fold = 0; fold < folds; ++fold) {
    std::vector<FeatureVector> train_x;
    std::vector<SegmentLabel> train_y;
    std::vector<FeatureVector> test_x;
    std::vector<SegmentLabel> test_y;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (fold_of[i] < 0) continue;
      if (fold_of[i] == fold) {
        test_x.push_back(features[i]);
        test_y.push_back(labels[i]);
      } else {
        train_x.push_back(features[i]);
        train_y.push_back(labels[i]);
      }
    }
    const auto model = train_svm(train_x, train_y, options);
    const auto c = evaluate(model, test_x, test_y).counts;
    total.tp += c.tp;
    total.fp += c.fp;
    total.tn += c.tn;
    total.fn += c.fn;
  }
  return make_report(total);
}

}  // namespace emgclean
