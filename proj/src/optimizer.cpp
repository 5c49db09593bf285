// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#include "emgclean/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "emgclean/error.hpp"

namespace emgclean {

namespace {

constexpr double kPsoInertia = 0.729;
constexpr double kPsoAcceleration = 1.49445;
constexpr double kPsoVelocityFraction = 0.2;

using Position = std::vector<double>;

void clamp_to_box(Position& x, const SwarmConfig& config) {
  for (double& v : x) v = std::clamp(v, config.lower_bound, config.upper_bound);
}

// Random draws happen only here and in the serial update loops, so results
// depend on the seed alone.
std::vector<Position> random_population(std::mt19937_64& rng, int dim, const SwarmConfig& config) {
  std::uniform_real_distribution<double> uniform(config.lower_bound, config.upper_bound);
  std::vector<Position> pop(static_cast<std::size_t>(config.population),
                            Position(static_cast<std::size_t>(dim)));
  for (auto& x : pop) {
    for (double& v : x) v = uniform(rng);
  }
  return pop;
}

std::vector<double> evaluate_all(const Objective& objective, const std::vector<Position>& pop) {
  std::vector<double> fitness(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) {
    fitness[i] = objective(pop[i]);
    if (std::isnan(fitness[i])) fitness[i] = -std::numeric_limits<double>::infinity();
  }
  return fitness;
}

struct Leader {
  Position position;
  double fitness = -std::numeric_limits<double>::infinity();
};

void check_dim(int dim) {
  if (dim < 1) throw ParameterError("search dimension must be >= 1");
}

}  // namespace

std::string_view to_string(SwarmAlgorithm algorithm) noexcept {
  return algorithm == SwarmAlgorithm::kGwo ? "gwo" : "pso";
}

SwarmAlgorithm swarm_algorithm_from_string(std::string_view text) {
  if (text == "gwo") return SwarmAlgorithm::kGwo;
  if (text == "pso") return SwarmAlgorithm::kPso;
  throw ParameterError("unknown optimizer '" + std::string(text) + "' (expected gwo or pso)");
}

void validate(const SwarmConfig& config) {
  if (config.population < 4) throw ParameterError("population must be >= 4");
  if (config.iterations < 1) throw ParameterError("iterations must be >= 1");
  if (!(config.lower_bound < config.upper_bound)) {
    throw ParameterError("lower bound must be below upper bound");
  }
}

OptimizationResult gwo_optimize(const Objective& objective, int dim, const SwarmConfig& config) {
  validate(config);
  check_dim(dim);
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto wolves = random_population(rng, dim, config);
  std::array<Leader, 3> leaders;  // alpha, beta, delta
  OptimizationResult result;

  for (int iter = 0; iter < config.iterations; ++iter) {
    if (iter > 0) {
      const double a = 2.0 - 2.0 * static_cast<double>(iter - 1) / config.iterations;
      for (auto& x : wolves) {
        for (std::size_t d = 0; d < x.size(); ++d) {
          double sum = 0.0;
          for (const auto& leader : leaders) {
            const double r1 = unit(rng);
            const double r2 = unit(rng);
            const double big_a = 2.0 * a * r1 - a;
            const double big_c = 2.0 * r2;
            const double dist = std::abs(big_c * leader.position[d] - x[d]);
            sum += leader.position[d] - big_a * dist;
          }
          x[d] = sum / 3.0;
        }
        clamp_to_box(x, config);
      }
    }

    const auto fitness = evaluate_all(objective, wolves);
    for (std::size_t i = 0; i < wolves.size(); ++i) {
      const double f = fitness[i];
      if (f > leaders[0].fitness) {
        leaders[2] = leaders[1];
        leaders[1] = leaders[0];
        leaders[0] = {wolves[i], f};
      } else if (f > leaders[1].fitness) {
        leaders[2] = leaders[1];
        leaders[1] = {wolves[i], f};
      } else if (f > leaders[2].fitness) {
        leaders[2] = {wolves[i], f};
      }
    }
    result.history.push_back(leaders[0].fitness);
  }

  result.best_position = leaders[0].position;
  result.best_fitness = leaders[0].fitness;
  return result;
}

OptimizationResult pso_optimize(const Objective& objective, int dim, const SwarmConfig& config) {
  validate(config);
  check_dim(dim);
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double vmax = kPsoVelocityFraction * (config.upper_bound - config.lower_bound);
  std::uniform_real_distribution<double> initial_velocity(-vmax, vmax);

  auto particles = random_population(rng, dim, config);
  std::vector<Position> velocities(particles.size(), Position(static_cast<std::size_t>(dim)));
  for (auto& v : velocities) {
    for (double& c : v) c = initial_velocity(rng);
  }
  std::vector<Leader> personal(particles.size());
  Leader global;
  OptimizationResult result;

  for (int iter = 0; iter < config.iterations; ++iter) {
    if (iter > 0) {
      for (std::size_t i = 0; i < particles.size(); ++i) {
        auto& x = particles[i];
        auto& v = velocities[i];
        for (std::size_t d = 0; d < x.size(); ++d) {
          const double r1 = unit(rng);
          const double r2 = unit(rng);
          v[d] = kPsoInertia * v[d] +
                 kPsoAcceleration * r1 * (personal[i].position[d] - x[d]) +
                 kPsoAcceleration * r2 * (global.position[d] - x[d]);
          v[d] = std::clamp(v[d], -vmax, vmax);
          x[d] += v[d];
        }
        clamp_to_box(x, config);
      }
    }

    const auto fitness = evaluate_all(objective, particles);
    for (std::size_t i = 0; i < particles.size(); ++i) {
      if (fitness[i] > personal[i].fitness) personal[i] = {particles[i], fitness[i]};
      if (fitness[i] > global.fitness) global = {particles[i], fitness[i]};
    }
    result.history.push_back(global.fitness);
  }

  result.best_position = global.position;
  result.best_fitness = global.fitness;
  return result;
}

OptimizationResult optimize(const Objective& objective, int dim, const SwarmConfig& config) {
  return config.algorithm == SwarmAlgorithm::kGwo ? gwo_optimize(objective, dim, config)
                                                  : pso_optimize(objective, dim, config);
}

}  // namespace emgclean
