// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace emgclean {

enum class SwarmAlgorithm { kGwo, kPso };

std::string_view to_string(SwarmAlgorithm algorithm) noexcept;
SwarmAlgorithm swarm_algorithm_from_string(std::string_view text);

struct SwarmConfig {
  int population = 20;
  int iterations = 50;
  double lower_bound = 0.01;
  double upper_bound = 0.9;
  std::uint64_t seed = 1;
  SwarmAlgorithm algorithm = SwarmAlgorithm::kGwo;
};

/// Throws ParameterError unless population >= 4, iterations >= 1 and the
/// box is non-empty.
void validate(const SwarmConfig& config);

/// Objective to maximize.
using Objective = std::function<double(std::span<const double>)>;

struct OptimizationResult {
  std::vector<double> best_position;
  double best_fitness = 0.0;
  /// Best fitness seen so far after each iteration; non-decreasing.
  std::vector<double> history;
};

/// Grey wolf optimizer. The first iteration evaluates the random initial
/// pack; each later one moves every wolf toward the alpha, beta and delta
/// leaders with the encircling coefficient a decaying linearly from 2 to 0.
OptimizationResult gwo_optimize(const Objective& objective, int dim, const SwarmConfig& config);

/// Global-best particle swarm with inertia 0.729, acceleration 1.49445 and
/// per-dimension velocity limit of 20% of the box.
OptimizationResult pso_optimize(const Objective& objective, int dim, const SwarmConfig& config);

/// Dispatches on config.algorithm.
OptimizationResult optimize(const Objective& objective, int dim, const SwarmConfig& config);

}  // namespace emgclean
